#include <doctest.h>

#include "tycat/abelian.hpp"
#include "tycat/errors.hpp"

using namespace tycat;

TEST_SUITE("abelian") {
  TEST_CASE("canonical invariant factors") {
    CHECK(canonicalize(FinAbGroup{{4, 2}}).factors == std::vector<Int>{2, 4});
    CHECK(canonicalize(FinAbGroup{{2, 3}}).factors == std::vector<Int>{6});
    CHECK(canonicalize(FinAbGroup{{6, 4}}).factors == std::vector<Int>{2, 12});
    // factors below 2 are never legal; the trivial group is the empty list
    CHECK_THROWS_AS(canonicalize(FinAbGroup{{1, 5}}), ParseError);
    CHECK(canonicalize(FinAbGroup{}).order() == 1);
  }

  TEST_CASE("orders and exponent") {
    FinAbGroup g{{2, 4}};
    CHECK(g.order() == 8);
    CHECK(g.exponent() == 4);
    CHECK(g.rank() == 2);
  }

  TEST_CASE("element indexing round trip") {
    FinAbGroup g{{2, 4}};
    for (Int i = 0; i < g.order(); ++i) CHECK(element_index(g, element_at(g, i)) == i);
    IntVec x(2);
    x << 5, -1;
    IntVec r = reduce_element(g, x);
    CHECK(r(0) == 1);
    CHECK(r(1) == 3);
  }

  TEST_CASE("element order") {
    FinAbGroup g{{2, 4}};
    IntVec a(2), b(2), c(2);
    a << 1, 0;
    b << 0, 1;
    c << 1, 2;
    CHECK(element_order(g, a) == 2);
    CHECK(element_order(g, b) == 4);
    CHECK(element_order(g, c) == 2);
    CHECK(element_order(g, zero_element(g)) == 1);
  }

  TEST_CASE("group literals") {
    CHECK(parse_group("Z2+Z4").factors == std::vector<Int>{2, 4});
    CHECK(parse_group("Z/4").factors == std::vector<Int>{4});
    CHECK(parse_group("Z1").order() == 1);
    CHECK(group_str(FinAbGroup{{2, 4}}) == "Z2+Z4");
    CHECK_THROWS_AS(parse_group("Q8"), ParseError);
    CHECK_THROWS_AS(parse_element(FinAbGroup{{2}}, "1"), ParseError);
    IntVec e = parse_element(FinAbGroup{{2, 4}}, "(1, 2)");
    CHECK(e(0) == 1);
    CHECK(e(1) == 2);
    CHECK(element_str(e) == "(1,2)");
  }

  TEST_CASE("homomorphisms") {
    FinAbGroup z4{{4}}, z2{{2}};
    GroupHom h{z4, z2, IntMat(1, 1)};
    h.matrix << 1;
    CHECK(h.well_defined());
    CHECK(kernel(h).order() == 2);
    CHECK(image(h).order() == 2);
    GroupHom bad{z2, z4, IntMat(1, 1)};
    bad.matrix << 1;  // 2*1 != 0 mod 4
    CHECK_FALSE(bad.well_defined());
    CHECK(hom_equal(compose(identity_hom(z2), h), h));
    CHECK(hom_equal(compose(h, identity_hom(z4)), h));
  }

  TEST_CASE("subgroups") {
    FinAbGroup g{{2, 4}};
    IntMat gen(2, 1);
    gen << 0, 1;
    Subgroup s = subgroup_from_generators(g, gen);
    CHECK(s.order() == 4);
    IntVec in(2), out(2);
    in << 0, 3;
    out << 1, 0;
    CHECK(s.contains(in));
    CHECK_FALSE(s.contains(out));
    CHECK(trivial_subgroup(g).order() == 1);
    CHECK(full_subgroup(g).order() == 8);
    CHECK_THROWS_AS(subgroup_from_elements(g, {0, 1}), ParseError);  // not closed
    Subgroup s2 = subgroup_from_elements(g, {0, 2});                 // {(0,0),(0,2)}
    CHECK(s2.order() == 2);
  }

  TEST_CASE("quotients") {
    FinAbGroup z4{{4}};
    IntMat gen(1, 1);
    gen << 2;
    Subgroup s = subgroup_from_generators(z4, gen);
    QuotientData q = quotient(z4, s);
    CHECK(q.group.factors == std::vector<Int>{2});
    IntVec three(1);
    three << 3;
    IntVec r1 = coset_representative(z4, s, three);
    IntVec one(1);
    one << 1;
    IntVec r2 = coset_representative(z4, s, one);
    CHECK(r1 == r2);  // 3 = 1 + 2
  }

  TEST_CASE("subgroup enumeration") {
    CHECK(enumerate_subgroups(FinAbGroup{{2, 2}}).size() == 5);
    CHECK(enumerate_subgroups(FinAbGroup{{4}}).size() == 3);
    CHECK(enumerate_subgroups(FinAbGroup{{2, 4}}).size() == 8);
  }

  TEST_CASE("automorphism counts") {
    CHECK(automorphisms(FinAbGroup{{2, 2}}).size() == 6);   // GL(2,2)
    CHECK(automorphisms(FinAbGroup{{4}}).size() == 2);      // units of Z/4
    CHECK(automorphisms(FinAbGroup{{2, 4}}).size() == 8);
    for (const auto& a : automorphisms(FinAbGroup{{2, 2}})) CHECK(a.well_defined());
  }

  TEST_CASE("duality pairing") {
    FinAbGroup g{{2, 4}};
    CHECK(dual_group(g).factors == std::vector<Int>{2, 4});
    IntVec a(2), chi(2);
    a << 1, 0;
    chi << 1, 0;
    CHECK(ev_pairing(g, a, chi) == QZ(1, 2));
    a << 0, 1;
    chi << 0, 1;
    CHECK(ev_pairing(g, a, chi) == QZ(1, 4));
    a << 0, 2;
    CHECK(ev_pairing(g, a, chi) == QZ(1, 2));
  }
}
