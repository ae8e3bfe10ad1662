#include <doctest.h>

#include <cmath>

#include "tycat/cohomology.hpp"
#include "tycat/io.hpp"

using namespace tycat;

namespace {

GModule swap_module() {
  FinAbGroup G{{2}}, M{{2, 2}};
  IntMat sw(2, 2);
  sw << 0, 1, 1, 0;
  return make_module(G, M, {sw});
}

GModule smatrix_module() {
  FinAbGroup G{{4}}, M{{4, 4}};
  IntMat rot(2, 2);
  rot << 0, 1, -1, 0;
  return make_module(G, M, {rot});
}

std::vector<Int> factors(const CohomologyGroup& h) { return h.group.factors; }

}  // namespace

TEST_SUITE("cohomology") {
  TEST_CASE("make_module validates the action") {
    FinAbGroup Z4{{4}}, Z2{{2}}, Z3{{3}};
    IntMat two(1, 1);
    two << 2;
    CHECK_THROWS_AS(make_module(Z4, Z4, {two}), ActionInvalid);
    IntMat neg(1, 1);
    neg << -1;
    // -1 has order two, which does not divide |Z3|
    CHECK_THROWS_AS(make_module(Z3, Z4, {neg}), ActionInvalid);
    auto ok = make_module(Z2, Z4, {neg});
    IntVec g(1);
    g << 1;
    CHECK(action_of(ok, g)(0, 0) == 3);
    g << 0;
    CHECK(action_of(ok, g)(0, 0) == 1);
  }

  TEST_CASE("trivial coefficients over a cyclic group") {
    FinAbGroup Z2{{2}}, Z4{{4}};
    GModule mod = trivial_module(Z2, Z4);
    std::vector<std::vector<Int>> want = {{4}, {2}, {2}, {2}, {2}};
    for (int d = 0; d <= 4; ++d) {
      auto per = cohomology(mod, d, Resolution::Periodic);
      auto bar = cohomology(mod, d, Resolution::Bar);
      CHECK(factors(per) == want[d]);
      CHECK(factors(bar) == want[d]);
    }
  }

  TEST_CASE("swap action kills everything above degree zero") {
    GModule mod = swap_module();
    CHECK(factors(cohomology(mod, 0)) == std::vector<Int>{2});
    for (int d = 1; d <= 4; ++d) {
      CHECK(factors(cohomology(mod, d, Resolution::Periodic)).empty());
      CHECK(factors(cohomology(mod, d, Resolution::Bar)).empty());
    }
  }

  TEST_CASE("rotation action leaves two-torsion in degrees three and four") {
    GModule mod = smatrix_module();
    CHECK(factors(cohomology(mod, 3, Resolution::Periodic)) == std::vector<Int>{2});
    CHECK(factors(cohomology(mod, 4, Resolution::Periodic)) == std::vector<Int>{2});
    CHECK(factors(cohomology(mod, 3, Resolution::Bar)) == std::vector<Int>{2});
  }

  TEST_CASE("circle coefficients follow the odd-even pattern") {
    for (Int n : {Int(2), Int(3), Int(4)}) {
      FinAbGroup G{{n}};
      CHECK(cohomology_torus(G, 0).group.factors == std::vector<Int>{n * n});
      for (int d = 1; d <= 6; ++d) {
        auto h = cohomology_torus(G, d);
        if (d % 2 == 1)
          CHECK(h.group.factors == std::vector<Int>{n});
        else
          CHECK(h.group.factors.empty());
      }
    }
    CHECK_NOTHROW(cohomology_torus(FinAbGroup{{2}}, 5, true));
    auto bar5 = cohomology_torus(FinAbGroup{{2}}, 5, false, Resolution::Bar);
    CHECK(bar5.group.factors == std::vector<Int>{2});
    for (Int n : {Int(2), Int(3), Int(4)})
      CHECK(cohomology_torus(FinAbGroup{{n}}, 6, false, Resolution::Bar).group.factors.empty());
  }

  TEST_CASE("periodic resolution rejects non-cyclic groups") {
    FinAbGroup K{{2, 2}};
    GModule mod = trivial_module(K, FinAbGroup{{2}});
    CHECK_THROWS_AS(cohomology(mod, 2, Resolution::Periodic), ActionInvalid);
    CHECK_THROWS_AS(cohomology_torus(K, 1, false, Resolution::Periodic), ActionInvalid);
  }

  TEST_CASE("klein four group with mod two coefficients") {
    FinAbGroup K{{2, 2}};
    GModule mod = trivial_module(K, FinAbGroup{{2}});
    CHECK(factors(cohomology(mod, 1)) == std::vector<Int>{2, 2});
    CHECK(factors(cohomology(mod, 2)) == std::vector<Int>{2, 2, 2});
    CHECK(factors(cohomology(mod, 3)) == std::vector<Int>{2, 2, 2, 2});
  }

  TEST_CASE("bar representatives are honest cocycles") {
    FinAbGroup K{{2, 2}};
    GModule mod = trivial_module(K, FinAbGroup{{2}});
    auto h2 = cohomology(mod, 2);
    REQUIRE(h2.representatives.size() == 3);
    for (const auto& rep : h2.representatives) {
      ModCochain c;
      c.degree = 2;
      c.values = rep;
      CHECK(is_cocycle(mod, c));
    }
  }

  TEST_CASE("differentials square to zero") {
    GModule mod = smatrix_module();
    ModCochain c = zero_mod_cochain(mod, 2);
    for (size_t i = 0; i < c.values.size(); ++i) {
      c.values[i](0) = Int(i % 4);
      c.values[i](1) = Int((3 * i) % 4);
    }
    ModCochain dc = mod_differential(mod, c);
    ModCochain ddc = mod_differential(mod, dc);
    for (const auto& v : ddc.values) CHECK(v.isZero());
    CHECK(is_cocycle(mod, dc));

    QZCochain w;
    w.degree = 1;
    for (Int t = 0; t < bar_tuple_count(4, 1); ++t) w.values.push_back(QZ(t, 8));
    QZCochain dw = qz_differential(mod.G, w);
    QZCochain ddw = qz_differential(mod.G, dw);
    for (const QZ& v : ddw.values) CHECK(v.is_zero());
  }

  TEST_CASE("tuple indexing round trips") {
    Int n = 4;
    for (int d = 1; d <= 3; ++d) {
      Int count = bar_tuple_count(n, d);
      CHECK(count == Int(std::pow(3, d)));
      for (Int i = 0; i < count; ++i)
        CHECK(bar_tuple_index(n, bar_tuple_at(n, d, i)) == i);
    }
    CHECK(bar_tuple_index(4, {1, 0, 2}) == -1);
  }

  TEST_CASE("sampled three-cocycles are reproducible") {
    GModule mod = smatrix_module();
    auto c1 = sample_three_cocycle(mod, 7);
    auto c2 = sample_three_cocycle(mod, 7);
    CHECK(is_cocycle(mod, c1));
    REQUIRE(c1.values.size() == c2.values.size());
    for (size_t i = 0; i < c1.values.size(); ++i) CHECK(c1.values[i] == c2.values[i]);
  }

  TEST_CASE("cup square of a sampled cocycle has a coboundary witness") {
    GModule mod = swap_module();
    Bicharacter pair;
    pair.left = mod.M;
    pair.right = mod.M;
    pair.values = {{QZ(0, 1), QZ(1, 2)}, {QZ(1, 2), QZ(0, 1)}};
    ModCochain alpha = sample_three_cocycle(mod, 3);
    auto res = cup_square(mod, alpha, pair);
    CHECK(res.square.degree == 6);
    CHECK(res.h6.factors.empty());
    CHECK(res.vanishes);
    REQUIRE(res.witness.has_value());
    CHECK(res.solve_level > 0);
    QZCochain check = qz_differential(mod.G, *res.witness);
    REQUIRE(check.values.size() == res.square.values.size());
    for (size_t i = 0; i < check.values.size(); ++i)
      CHECK(check.values[i] == res.square.values[i]);
  }

  TEST_CASE("cup square rejects bad input") {
    GModule mod = swap_module();
    Bicharacter pair;
    pair.left = mod.M;
    pair.right = mod.M;
    pair.values = {{QZ(0, 1), QZ(1, 2)}, {QZ(1, 2), QZ(0, 1)}};
    ModCochain junk = zero_mod_cochain(mod, 3);
    junk.values[0](0) = 1;
    if (is_cocycle(mod, junk)) {
      // make it fail the cocycle test for sure
      for (auto& v : junk.values) v(0) = 1;
    }
    if (!is_cocycle(mod, junk)) CHECK_THROWS_AS(cup_square(mod, junk, pair), NotACocycle);
    ModCochain wrong_degree = zero_mod_cochain(mod, 2);
    CHECK_THROWS_AS(cup_square(mod, wrong_degree, pair), NotACocycle);

    Bicharacter skew = pair;
    skew.values[0][0] = QZ(1, 2);  // the swap does not preserve this one
    ModCochain alpha = sample_three_cocycle(mod, 3);
    CHECK_THROWS_AS(cup_square(mod, alpha, skew), PairingNotInvariant);
  }
}
