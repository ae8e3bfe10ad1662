#include <doctest.h>

#include <cmath>
#include <complex>

#include "tycat/forms.hpp"

using namespace tycat;

namespace {

// the order-two metric residue on Z2+Z2: gens 1/2, 1/2, off-diagonal 1/2
QuadraticForm residue_form() {
  QuadraticForm q;
  q.group = FinAbGroup{{2, 2}};
  q.gen_values = {QZ(1, 2), QZ(1, 2)};
  q.offdiag = {QZ(1, 2)};
  return q;
}

// hyperbolic plane on Z2+Z2: q(x,y) = xy/2
QuadraticForm hyperbolic_form() {
  QuadraticForm q;
  q.group = FinAbGroup{{2, 2}};
  q.gen_values = {QZ(0, 1), QZ(0, 1)};
  q.offdiag = {QZ(1, 2)};
  return q;
}

IntVec el(const FinAbGroup& g, std::initializer_list<Int> xs) {
  IntVec v(g.rank());
  int i = 0;
  for (Int x : xs) v(i++) = x;
  return reduce_element(g, v);
}

}  // namespace

TEST_SUITE("forms") {
  TEST_CASE("bicharacter evaluation is bilinear") {
    FinAbGroup g{{2, 4}};
    Bicharacter b = zero_bicharacter(g, g);
    b.values[0][1] = QZ(1, 2);
    b.values[1][1] = QZ(1, 4);
    CHECK(b.well_formed());
    IntVec x = el(g, {1, 1}), y = el(g, {0, 1}), z = el(g, {1, 2});
    CHECK(b.eval(x, y) == b.eval(el(g, {1, 0}), y) + b.eval(el(g, {0, 1}), y));
    CHECK(b.eval(x, reduce_element(g, y + z)) == b.eval(x, y) + b.eval(x, z));
  }

  TEST_CASE("well-formedness constraints") {
    FinAbGroup z2{{2}};
    QuadraticForm q;
    q.group = z2;
    q.gen_values = {QZ(1, 4)};
    CHECK(q.well_formed());  // order 4 divides 2*gcd(2,2)=4
    q.gen_values = {QZ(1, 3)};
    CHECK_FALSE(q.well_formed());
    Bicharacter b = zero_bicharacter(z2, z2);
    b.values[0][0] = QZ(1, 4);  // order must divide gcd(2,2)=2
    CHECK_FALSE(b.well_formed());
  }

  TEST_CASE("quadratic form evaluation") {
    QuadraticForm q = residue_form();
    const FinAbGroup& g = q.group;
    CHECK(q.eval(el(g, {0, 0})) == QZ(0, 1));
    CHECK(q.eval(el(g, {1, 0})) == QZ(1, 2));
    CHECK(q.eval(el(g, {0, 1})) == QZ(1, 2));
    CHECK(q.eval(el(g, {1, 1})) == QZ(1, 2));  // 1/2+1/2+1/2
  }

  TEST_CASE("polarization matches bil_of_quad") {
    QuadraticForm q = residue_form();
    Bicharacter b = bil_of_quad(q);
    const FinAbGroup& g = q.group;
    for (Int i = 0; i < g.order(); ++i)
      for (Int j = 0; j < g.order(); ++j) {
        IntVec x = element_at(g, i), y = element_at(g, j);
        QZ pol = q.eval(reduce_element(g, x + y)) - q.eval(x) - q.eval(y);
        CHECK(b.eval(x, y) == pol);
      }
  }

  TEST_CASE("offdiag indexing") {
    CHECK(offdiag_count(3) == 3);
    CHECK(offdiag_count(1) == 0);
    CHECK(offdiag_index(3, 0, 1) == 0);
    CHECK(offdiag_index(3, 0, 2) == 1);
    CHECK(offdiag_index(3, 1, 2) == 2);
  }

  TEST_CASE("radical and nondegeneracy") {
    QuadraticForm q = residue_form();
    CHECK(radical(bil_of_quad(q)).order() == 1);
    CHECK(is_nondegenerate(bil_of_quad(q)));
    QuadraticForm z = zero_form(FinAbGroup{{2, 2}});
    CHECK(radical(bil_of_quad(z)).order() == 4);
    CHECK_FALSE(is_nondegenerate(bil_of_quad(z)));
  }

  TEST_CASE("orthogonal complement") {
    QuadraticForm q = residue_form();
    Bicharacter b = bil_of_quad(q);
    Subgroup h = subgroup_from_elements(q.group, {0, 3});  // {(0,0),(1,1)}
    Subgroup perp = orthogonal_complement(b, h);
    CHECK(perp.order() == 2);
    CHECK(perp.contains(el(q.group, {1, 1})));
  }

  TEST_CASE("restriction") {
    QuadraticForm q = residue_form();
    Subgroup h = subgroup_from_elements(q.group, {0, 3});
    QuadraticForm rq = restrict_form(q, subgroup_basis(h));
    CHECK(rq.group.order() == 2);
    IntVec one(1);
    one << 1;
    CHECK(rq.eval(one) == QZ(1, 2));
  }

  TEST_CASE("gauss sums") {
    // residue: (1 -1 -1 -1)/2 = -1
    std::complex<double> s = gauss_sum(residue_form());
    CHECK(std::abs(s - std::complex<double>(-1.0, 0.0)) < 1e-12);
    // hyperbolic: (1+1+1-1)/2 = 1
    CHECK(std::abs(gauss_sum(hyperbolic_form()) - std::complex<double>(1.0, 0.0)) < 1e-12);
    // q = 1/4 on Z2: (1+i)/sqrt(2) = e^{i pi/4}
    QuadraticForm a;
    a.group = FinAbGroup{{2}};
    a.gen_values = {QZ(1, 4)};
    std::complex<double> sa = gauss_sum(a);
    CHECK(std::abs(sa.real() - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(sa.imag() - 1.0 / std::sqrt(2.0)) < 1e-12);
    // degenerate zero form on Z2 has |sigma| = sqrt(2), not a root of unity
    CHECK(std::abs(std::abs(gauss_sum(zero_form(FinAbGroup{{2}}))) - std::sqrt(2.0)) < 1e-12);
  }

  TEST_CASE("form enumeration counts") {
    CHECK(enumerate_quadratic_forms(FinAbGroup{{2}}).size() == 4);
    CHECK(enumerate_quadratic_forms(FinAbGroup{{2, 2}}).size() == 32);
    CHECK(quad_form_count(FinAbGroup{{2}}) == 4);
    CHECK(quad_form_count(FinAbGroup{{2, 2}}) == 32);
    CHECK(quad_form_count(FinAbGroup{{4}}) == 8);
    CHECK(quad_form_count(FinAbGroup{{3}}) == 3);
    for (const auto& q : enumerate_quadratic_forms(FinAbGroup{{2, 2}})) CHECK(q.well_formed());
    CHECK_THROWS_AS(enumerate_quadratic_forms(FinAbGroup{{2, 2}}, 2), CapExceeded);
  }

  TEST_CASE("alternating forms") {
    auto alts = enumerate_alternating_forms(FinAbGroup{{2, 2}});
    CHECK(alts.size() == 2);
    CHECK(two_torsion_characters(FinAbGroup{{2, 4}}).factors == std::vector<Int>{2, 2});
  }

  TEST_CASE("five and six dimensional invariants of the base") {
    CHECK(em_h5_b3(FinAbGroup{{2}}).factors == std::vector<Int>{2});
    CHECK(em_h5_b3(FinAbGroup{{2, 2}}).order() == 4);
    CHECK(em_h5_b3(FinAbGroup{{3}}).order() == 1);
    CHECK(h6_b3_order(FinAbGroup{{2}}) == 2);
    CHECK(h6_b3_order(FinAbGroup{{2, 2}}) == 8);
  }

  TEST_CASE("canonical syllepsis") {
    // argument is the base group; the pairing lives on base + dual
    Bicharacter s = canonical_sigma(FinAbGroup{{2}});
    CHECK(s.left == FinAbGroup{{2, 2}});
    CHECK(s.values[1][0] == QZ(1, 2));
    CHECK(s.values[0][1] == QZ(0, 1));
    Bicharacter alt = alt_of_bicharacter(s);
    CHECK(alt.values[0][1] == QZ(1, 2));
    CHECK(alt.values[1][0] == QZ(1, 2));  // -1/2 = 1/2 in Q/Z
    CHECK(alt.values[0][0] == QZ(0, 1));
  }
}
