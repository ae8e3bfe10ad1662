#include <doctest.h>

#include <complex>

#include "tycat/io.hpp"
#include "tycat/witt.hpp"

using namespace tycat;

namespace {

IntVec el(const FinAbGroup& g, std::initializer_list<Int> xs) {
  IntVec v(g.rank());
  int i = 0;
  for (Int x : xs) v(i++) = x;
  return reduce_element(g, v);
}

GradedPremetricGroup hyperbolic_object() {
  SyllepticContext ctx = standard_context();
  QuadraticForm q;
  q.group = FinAbGroup{{2, 2}};
  q.gen_values = {QZ(0, 1), QZ(0, 1)};
  q.offdiag = {QZ(1, 2)};
  return trivially_graded(ctx, q);
}

GradedPremetricGroup reduced_power(const GradedPremetricGroup& x, Int k) {
  GradedPremetricGroup p = unit_object(x.context);
  for (Int i = 0; i < k; ++i) p = condense_reduce(twisted_product(p, x)).object;
  return p;
}

}  // namespace

TEST_SUITE("witt") {
  TEST_CASE("presets are well formed") {
    for (const auto& name : preset_names()) {
      auto x = preset_object(name);
      CHECK(x.well_formed());
    }
    auto a = preset_object("a");
    CHECK(a.G.factors == std::vector<Int>{2});
    CHECK(a.q.gen_values[0] == QZ(1, 4));
    CHECK(a.f.matrix(0, 0) == 1);
    CHECK(a.f.matrix(1, 0) == 0);
  }

  TEST_CASE("twisted product mixes the syllepsis into the cross terms") {
    auto a = preset_object("a"), b = preset_object("b");
    auto ab = twisted_product(a, b);
    CHECK(ab.G.factors == std::vector<Int>{2, 2});
    // s(a-grading, b-grading) + 2 s(b-grading, a-grading) = 1/2
    CHECK(ab.q.off(0, 1) == QZ(1, 2));
    CHECK(ab.q.eval(el(ab.G, {1, 1})) == QZ(0, 1));
    auto ba = twisted_product(b, a);
    // the opposite order picks up tau(b,a) = 0 + 2*(1/2) = 0
    CHECK(ba.q.off(0, 1) == QZ(0, 1));
    auto aa = twisted_product(a, a);
    CHECK(aa.q.off(0, 1) == QZ(0, 1));
    CHECK(aa.q.eval(el(aa.G, {1, 1})) == QZ(1, 2));
  }

  TEST_CASE("product is strictly associative and unital") {
    auto a = preset_object("a"), b = preset_object("b"), c = preset_object("c");
    auto left = twisted_product(twisted_product(a, b), c);
    auto right = twisted_product(a, twisted_product(b, c));
    CHECK(Json(left) == Json(right));
    auto u = unit_object(a.context);
    CHECK(Json(twisted_product(u, a)) == Json(a));
    CHECK(Json(twisted_product(a, u)) == Json(a));
  }

  TEST_CASE("opposite is involutive and flips the form") {
    auto a = preset_object("a");
    auto aop = s_opposite(a);
    CHECK(aop.q.gen_values[0] == QZ(3, 4));  // -1/4 + s(a,a) = 3/4
    CHECK(Json(s_opposite(aop)) == Json(a));
    auto ab = twisted_product(a, preset_object("b"));
    CHECK(Json(s_opposite(s_opposite(ab))) == Json(ab));
  }

  TEST_CASE("degree zero part") {
    auto ab = twisted_product(preset_object("a"), preset_object("b"));
    CHECK(degree_zero_part(ab).order() == 1);  // (1,1) grades to a+b, not 0
    auto sq = twisted_product(ab, ab);
    Subgroup g0 = degree_zero_part(sq);
    CHECK(g0.order() == 4);
    CHECK(g0.contains(el(sq.G, {1, 0, 1, 0})));
    CHECK(g0.contains(el(sq.G, {1, 1, 1, 1})));
  }

  TEST_CASE("triviality certificates") {
    auto h = hyperbolic_object();
    auto cert = is_a_trivial(h);
    REQUIRE(cert.has_value());
    CHECK(cert->nondegenerate);
    CHECK(cert->lagrangian.order() == 2);
    CHECK(verify_certificate(h, *cert));
    // the residue form has no isotropic vector at all
    CHECK_FALSE(is_a_trivial(preset_object("C")).has_value());
    // degenerate forms never get a certificate
    CHECK_FALSE(is_a_trivial(preset_object("L")).has_value());
  }

  TEST_CASE("condense validates its subgroup") {
    auto h = hyperbolic_object();
    IntMat gen(2, 1);
    gen << 1, 0;
    auto small = condense(h, subgroup_from_generators(h.G, gen));
    CHECK(small.G.order() == 1);
    auto C = preset_object("C");
    IntMat diag(2, 1);
    diag << 1, 1;
    CHECK_THROWS_AS(condense(C, subgroup_from_generators(C.G, diag)), NotIsotropic);
    auto ab = twisted_product(preset_object("a"), preset_object("b"));
    IntMat graded(2, 1);
    graded << 1, 0;
    CHECK_THROWS_AS(condense(ab, subgroup_from_generators(ab.G, graded)), NotInKernel);
  }

  TEST_CASE("split_metric rejects degenerate restrictions") {
    auto L = preset_object("L");
    IntMat gen(2, 1);
    gen << 1, 1;
    CHECK_THROWS_AS(split_metric(L, subgroup_from_generators(L.G, gen)),
                    DegenerateRestriction);
  }

  TEST_CASE("the fourth power of a condenses onto the residue") {
    auto a = preset_object("a");
    auto a4 = twisted_product(twisted_product(a, a), twisted_product(a, a));
    auto red = condense_reduce(a4);
    CHECK(red.object.G.order() == 4);
    CHECK(graded_isometry_exists(red.object, preset_object("C")));
    REQUIRE(red.steps.size() >= 1);
    CHECK(red.steps[0].kind == ReductionStep::Kind::Condense);
  }

  TEST_CASE("raw and mod-Witt triviality differ on the residue") {
    auto C = preset_object("C");
    CHECK_FALSE(raw_trivial(C).has_value());
    auto tr = is_trivial_mod_witt(C);
    REQUIRE(tr.has_value());
    CHECK(tr->steps.size() == 1);  // a single full split
    CHECK(Json(replay_trace(*tr)) == Json(tr->final_object));
    CHECK(tr->final_object.G.order() == 1);
  }

  TEST_CASE("mod-Witt trace of the fourth power replays") {
    auto a = preset_object("a");
    auto a4 = twisted_product(twisted_product(a, a), twisted_product(a, a));
    auto tr = is_trivial_mod_witt(a4);
    REQUIRE(tr.has_value());
    CHECK_FALSE(tr->used_stabilization);
    CHECK(Json(replay_trace(*tr)) == Json(tr->final_object));
    bool has_split = false;
    for (const auto& st : tr->steps)
      if (st.kind == ReductionStep::Kind::Split && st.metric) {
        has_split = true;
        for (Int i = 1; i < st.metric->group.order(); ++i)
          CHECK(st.metric->q.eval(element_at(st.metric->group, i)) == QZ(1, 2));
      }
    CHECK(has_split);
  }

  TEST_CASE("invertibility") {
    auto a = preset_object("a");
    auto inv = s_invertibility(a);
    CHECK(inv.invertible);
    REQUIRE(inv.product_certificate.has_value());
    CHECK(verify_certificate(twisted_product(a, s_opposite(a)), *inv.product_certificate));
    CHECK_FALSE(is_s_invertible(preset_object("L")));
  }

  TEST_CASE("orders of the presets") {
    CHECK(order_mod_witt(preset_object("a")) == 4);
    CHECK(order_mod_witt(preset_object("b")) == 4);
    CHECK(order_mod_witt(preset_object("c")) == 4);
    CHECK(order_mod_witt(preset_object("ab")) == 3);
    CHECK(order_mod_witt(preset_object("a2b")) == 2);
    CHECK(order_raw(preset_object("a")) == 8);
    CHECK(order_raw(preset_object("b")) == 8);
    CHECK(order_raw(preset_object("c")) == 8);
    CHECK(order_raw(preset_object("ab")) == 6);
    CHECK(order_raw(preset_object("a2b")) == 4);
    // the residue is already trivially graded, so it dies in the quotient
    CHECK(order_mod_witt(preset_object("C")) == 1);
    CHECK(order_raw(preset_object("C")) == 2);
  }

  TEST_CASE("order caps and invertibility guards") {
    CHECK_THROWS_AS(order_raw(preset_object("a"), 3), OrderCapExceeded);
    CHECK_THROWS_AS(order_mod_witt(preset_object("L")), NotInvertible);
    CHECK_THROWS_AS(classes_equal(preset_object("L"), preset_object("a")), NotInvertible);
  }

  TEST_CASE("class comparisons") {
    auto a = preset_object("a"), b = preset_object("b");
    auto ab = twisted_product(a, b), ba = twisted_product(b, a);
    CHECK(classes_equal_mod_witt(ab, ab));
    CHECK_FALSE(classes_equal_mod_witt(ab, ba));  // the closure group is non-abelian
    CHECK(classes_equal_mod_witt(preset_object("C"), unit_object(a.context)));
    CHECK_FALSE(classes_equal(preset_object("C"), unit_object(a.context)));
    auto a4red = reduced_power(a, 4);
    CHECK(classes_equal(a4red, preset_object("C")));
  }

  TEST_CASE("raw powers of ab close at six") {
    auto ab = preset_object("ab");
    CHECK_FALSE(raw_trivial(reduced_power(ab, 3)).has_value());
    CHECK(raw_trivial(reduced_power(ab, 6)).has_value());
    CHECK(is_trivial_mod_witt(reduced_power(ab, 3)).has_value());
  }

  TEST_CASE("graded isometries") {
    auto a = preset_object("a"), b = preset_object("b");
    CHECK(graded_isometry_exists(a, a));
    CHECK_FALSE(graded_isometry_exists(a, b));  // different gradings
    auto ab = twisted_product(a, b), ba = twisted_product(b, a);
    CHECK_FALSE(graded_isometry_exists(ab, ba));
    // relabeling generators is an isometry
    auto ab2 = ab;
    std::swap(ab2.q.gen_values[0], ab2.q.gen_values[1]);
    IntMat m = ab2.f.matrix;
    ab2.f.matrix.col(0) = m.col(1);
    ab2.f.matrix.col(1) = m.col(0);
    CHECK(graded_isometry_exists(ab, ab2));
  }

  TEST_CASE("stabilizer pool is deterministic and metric") {
    auto pool = stabilizer_pool(4);
    CHECK_FALSE(pool.empty());
    auto pool2 = stabilizer_pool(4);
    REQUIRE(pool.size() == pool2.size());
    for (size_t i = 0; i < pool.size(); ++i) CHECK(pool[i] == pool2[i]);
    for (const auto& q : pool) {
      CHECK(q.group.order() <= 4);
      CHECK(is_nondegenerate(bil_of_quad(q)));
    }
  }

  TEST_CASE("abstract table fingerprinting") {
    // permutations of three letters, composed left to right
    std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto compose = [&](int i, int j) {
      std::array<int, 3> r{};
      for (int x = 0; x < 3; ++x) r[x] = perms[i][perms[j][x]];
      for (int k = 0; k < 6; ++k)
        if (perms[k] == r) return k;
      return -1;
    };
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) table[i][j] = compose(i, j);
    auto info = analyze_table(table);
    CHECK(info.order == 6);
    CHECK_FALSE(info.abelian);
    CHECK(info.center_order == 1);
    CHECK(info.derived_order == 3);
    std::map<Int, Int> hist{{1, 1}, {2, 3}, {3, 2}};
    CHECK(info.order_histogram == hist);
    CHECK(identify_group(info) == "D3");
  }

  TEST_CASE("closure of a single generator is cyclic of order four") {
    auto rep = group_structure({preset_object("a")});
    CHECK(rep.order == 4);
    CHECK(rep.abelian);
    CHECK(rep.label == "Z4");
    CHECK(rep.center_order == 4);
    CHECK(rep.representatives.size() == 4);
    CHECK(rep.table.size() == 4);
  }

  TEST_CASE("symplectic automorphisms of the standard context") {
    auto ctx = standard_context();
    auto auts = symplectic_automorphisms(ctx);
    CHECK(auts.size() == 6);
    Bicharacter alt = alt_of_bicharacter(ctx.s);
    for (const auto& h : auts) {
      CHECK(h.well_defined());
      for (Int i = 0; i < ctx.A.order(); ++i)
        for (Int j = 0; j < ctx.A.order(); ++j) {
          IntVec x = element_at(ctx.A, i), y = element_at(ctx.A, j);
          CHECK(alt.eval(h.apply(x), h.apply(y)) == alt.eval(x, y));
        }
    }
  }

  TEST_CASE("exact sequence report") {
    auto ctx = standard_context();
    auto rep = exact_sequence_report(ctx, 24);
    CHECK(rep.aut_syp_order == 6);
    CHECK(rep.h5_order == 4);
    CHECK(rep.product == 24);
    CHECK(rep.consistent);
    auto rep2 = exact_sequence_report(ctx);
    CHECK_FALSE(rep2.consistent);
    CHECK_FALSE(rep2.witt_group_order.has_value());
  }

  TEST_CASE("condensation preserves the gauss sum on the residue chain") {
    auto a = preset_object("a");
    auto a4 = twisted_product(twisted_product(a, a), twisted_product(a, a));
    auto red = condense_reduce(a4);
    CHECK(std::abs(gauss_sum(a4.q) - gauss_sum(red.object.q)) < 1e-9);
  }
}
