#include "tycat/witt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

namespace tycat {

namespace {

bool mat_eq(const IntMat& a, const IntMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return a.size() == 0 || (a - b).cwiseAbs().sum() == 0;
}

bool objects_identical(const GradedPremetricGroup& x, const GradedPremetricGroup& y) {
  return x.context == y.context && x.G == y.G && mat_eq(x.f.matrix, y.f.matrix) &&
         x.q.gen_values == y.q.gen_values && x.q.offdiag == y.q.offdiag;
}

// per-element q values and grading indices, precomputed once per object
struct Tables {
  FinAbGroup g;
  FinAbGroup a;
  std::vector<QZ> q;
  std::vector<Int> grading;  // element index in A
};

Tables build_tables(const GradedPremetricGroup& X) {
  Tables t;
  t.g = X.G;
  t.a = X.context.A;
  const Int n = X.G.order();
  t.q.reserve(n);
  t.grading.reserve(n);
  for (Int i = 0; i < n; ++i) {
    IntVec x = element_at(X.G, i);
    t.q.push_back(X.q.eval(x));
    t.grading.push_back(element_index(t.a, X.f.apply(x)));
  }
  return t;
}

Int add_idx(const FinAbGroup& g, Int i, Int j) {
  return element_index(g, reduce_element(g, element_at(g, i) + element_at(g, j)));
}

QZ bil_idx(const Tables& t, Int i, Int j) {
  return t.q[add_idx(t.g, i, j)] - t.q[i] - t.q[j];
}

std::vector<Int> radical_indices(const Tables& t) {
  std::vector<Int> rad;
  const int r = t.g.rank();
  std::vector<Int> gens(r);
  for (int j = 0; j < r; ++j)
    gens[j] = element_index(t.g, IntVec::Unit(r, j));
  for (Int i = 0; i < t.g.order(); ++i) {
    bool central = true;
    for (int j = 0; j < r && central; ++j) central = bil_idx(t, i, gens[j]).is_zero();
    if (central) rad.push_back(i);
  }
  return rad;
}

std::vector<Int> cyclic_span(const FinAbGroup& g, Int x) {
  std::vector<Int> out{0};
  Int cur = x;
  while (cur != 0) {
    out.push_back(cur);
    cur = add_idx(g, cur, x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Int> extend_span(const FinAbGroup& g, const std::vector<Int>& sub, Int x) {
  std::set<Int> out(sub.begin(), sub.end());
  std::vector<Int> xs = cyclic_span(g, x);
  for (Int s : sub)
    for (Int k : xs) out.insert(add_idx(g, s, k));
  return {out.begin(), out.end()};
}

Int isqrt_exact(Int n) {
  Int r = static_cast<Int>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : -1;
}

// depth-first search for an isotropic subgroup of the given size inside the
// zero-graded sector; candidates scanned in ascending element order
std::optional<std::vector<Int>> find_isotropic(const Tables& t, Int target) {
  if (target == 1) return std::vector<Int>{0};
  std::vector<Int> candidates;
  for (Int i = 1; i < t.g.order(); ++i)
    if (t.grading[i] == 0 && t.q[i].is_zero()) candidates.push_back(i);
  std::set<std::vector<Int>> visited;
  std::vector<Int> found;
  auto dfs = [&](auto&& self, const std::vector<Int>& sub) -> bool {
    if (static_cast<Int>(sub.size()) == target) {
      found = sub;
      return true;
    }
    for (Int x : candidates) {
      if (std::binary_search(sub.begin(), sub.end(), x)) continue;
      bool orth = true;
      for (Int s : sub) {
        if (!bil_idx(t, s, x).is_zero()) {
          orth = false;
          break;
        }
      }
      if (!orth) continue;
      std::vector<Int> bigger = extend_span(t.g, sub, x);
      if (static_cast<Int>(bigger.size()) > target) continue;
      if (!visited.insert(bigger).second) continue;
      if (self(self, bigger)) return true;
    }
    return false;
  };
  if (dfs(dfs, {0})) return found;
  return std::nullopt;
}

bool trivially_graded_p(const GradedPremetricGroup& X) {
  for (int j = 0; j < X.G.rank(); ++j)
    if (!X.f.apply(IntVec::Unit(X.G.rank(), j)).isZero()) return false;
  return true;
}

bool nondegenerate_p(const GradedPremetricGroup& X) {
  Tables t = build_tables(X);
  return radical_indices(t).size() == 1;
}

// reduced object is in the trivial mod-Witt class iff it is an honest metric
// group sitting entirely in degree zero (possibly trivial)
bool reduced_is_metric(const GradedPremetricGroup& R) {
  if (R.G.order() == 1) return true;
  return trivially_graded_p(R) && nondegenerate_p(R);
}

std::vector<std::vector<Int>> partitions(Int n) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur;
  auto rec = [&](auto&& self, Int rem, Int maxpart) -> void {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (Int p = std::min(rem, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, rem - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

std::vector<FinAbGroup> abelian_groups_of_order(Int n) {
  if (n == 1) return {FinAbGroup{}};
  std::map<Int, Int> primes;
  Int rem = n;
  for (Int p = 2; p * p <= rem; ++p)
    while (rem % p == 0) {
      ++primes[p];
      rem /= p;
    }
  if (rem > 1) ++primes[rem];
  std::vector<FinAbGroup> acc{FinAbGroup{}};
  for (auto [p, e] : primes) {
    std::vector<FinAbGroup> next;
    for (const auto& part : partitions(e)) {
      for (const FinAbGroup& base : acc) {
        FinAbGroup g = base;
        for (Int lam : part) {
          Int pk = 1;
          for (Int i = 0; i < lam; ++i) pk *= p;
          g.factors.push_back(pk);
        }
        next.push_back(canonicalize(g));
      }
    }
    acc = std::move(next);
  }
  std::sort(acc.begin(), acc.end(),
            [](const FinAbGroup& a, const FinAbGroup& b) { return a.factors < b.factors; });
  return acc;
}

std::map<Int, Int> abelian_histogram(const FinAbGroup& g) {
  std::map<Int, Int> h;
  for (Int i = 0; i < g.order(); ++i) ++h[element_order(g, element_at(g, i))];
  return h;
}

std::vector<std::vector<int>> dihedral_table(Int n) {
  // index a*n + i for r^i s^a; s r s = r^{-1}
  const Int N = 2 * n;
  std::vector<std::vector<int>> t(N, std::vector<int>(N));
  for (Int a = 0; a < 2; ++a)
    for (Int i = 0; i < n; ++i)
      for (Int b = 0; b < 2; ++b)
        for (Int j = 0; j < n; ++j) {
          Int k = mod_pos(i + (a ? -j : j), n);
          t[a * n + i][b * n + j] = static_cast<int>(((a + b) % 2) * n + k);
        }
  return t;
}

std::vector<std::vector<int>> dicyclic_table(Int n) {
  // index e*2n + i for a^i x^e; x^2 = a^n, x a x^{-1} = a^{-1}
  const Int m = 2 * n;
  const Int N = 4 * n;
  std::vector<std::vector<int>> t(N, std::vector<int>(N));
  for (Int e = 0; e < 2; ++e)
    for (Int i = 0; i < m; ++i)
      for (Int f = 0; f < 2; ++f)
        for (Int j = 0; j < m; ++j) {
          Int i2 = mod_pos(e ? i - j : i + j, m);
          Int e2 = e + f;
          if (e2 == 2) {
            i2 = mod_pos(i2 + n, m);
            e2 = 0;
          }
          t[e * m + i][f * m + j] = static_cast<int>(e2 * m + i2);
        }
  return t;
}

std::vector<std::vector<int>> perm_group_table(std::vector<std::vector<int>> gens, int pts) {
  std::vector<int> id(pts);
  for (int i = 0; i < pts; ++i) id[i] = i;
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> elems;
  auto push = [&](const std::vector<int>& p) {
    if (index.emplace(p, static_cast<int>(elems.size())).second) elems.push_back(p);
  };
  push(id);
  for (size_t head = 0; head < elems.size(); ++head)
    for (const auto& g : gens) {
      std::vector<int> prod(pts);
      for (int k = 0; k < pts; ++k) prod[k] = g[elems[head][k]];
      push(prod);
    }
  const int N = static_cast<int>(elems.size());
  std::vector<std::vector<int>> t(N, std::vector<int>(N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      std::vector<int> prod(pts);
      for (int k = 0; k < pts; ++k) prod[k] = elems[i][elems[j][k]];
      t[i][j] = index.at(prod);
    }
  return t;
}

bool info_equal(const AbstractGroupInfo& a, const AbstractGroupInfo& b) {
  return a.order == b.order && a.order_histogram == b.order_histogram &&
         a.abelian == b.abelian && a.center_order == b.center_order &&
         a.derived_order == b.derived_order;
}

}  // namespace

QZ twist_term(const SyllepticContext& ctx, const IntVec& x, const IntVec& y) {
  return ctx.s.eval(x, y) + Int(2) * ctx.s.eval(y, x);
}

bool GradedPremetricGroup::well_formed() const {
  return context.s.well_formed() && context.s.left == context.A &&
         context.s.right == context.A && f.source == G && f.target == context.A &&
         f.well_defined() && q.group == G && q.well_formed();
}

GradedPremetricGroup unit_object(const SyllepticContext& ctx) {
  FinAbGroup triv;
  return {ctx, triv, zero_hom(triv, ctx.A), zero_form(triv)};
}

GradedPremetricGroup trivially_graded(const SyllepticContext& ctx, const QuadraticForm& q) {
  return {ctx, q.group, zero_hom(q.group, ctx.A), q};
}

Subgroup degree_zero_part(const GradedPremetricGroup& X) {
  return kernel(X.f);
}

GradedPremetricGroup twisted_product(const GradedPremetricGroup& X,
                                     const GradedPremetricGroup& Y) {
  if (!(X.context == Y.context)) throw ContextMismatch("twisted_product");
  const int rx = X.G.rank(), ry = Y.G.rank();
  FinAbGroup G = direct_sum(X.G, Y.G);
  IntMat fm(X.context.A.rank(), rx + ry);
  fm << X.f.matrix, Y.f.matrix;
  GroupHom f{G, X.context.A, fm};

  QuadraticForm q = zero_form(G);
  for (int i = 0; i < rx; ++i) q.gen_values[i] = X.q.gen_values[i];
  for (int j = 0; j < ry; ++j) q.gen_values[rx + j] = Y.q.gen_values[j];
  for (int i = 0; i < rx; ++i)
    for (int j = i + 1; j < rx; ++j) q.off(i, j) = X.q.off(i, j);
  for (int i = 0; i < ry; ++i)
    for (int j = i + 1; j < ry; ++j) q.off(rx + i, rx + j) = Y.q.off(i, j);
  for (int i = 0; i < rx; ++i)
    for (int j = 0; j < ry; ++j)
      q.off(i, rx + j) = twist_term(X.context, X.f.matrix.col(i), Y.f.matrix.col(j));
  GradedPremetricGroup P{X.context, G, f, q};
  if (!P.well_formed()) throw std::logic_error("twisted_product: result malformed");
  return P;
}

GradedPremetricGroup s_opposite(const GradedPremetricGroup& X) {
  const int r = X.G.rank();
  QuadraticForm q = zero_form(X.G);
  const Bicharacter& s = X.context.s;
  for (int i = 0; i < r; ++i) {
    IntVec gi = X.f.matrix.col(i);
    q.gen_values[i] = -X.q.gen_values[i] + s.eval(gi, gi);
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      IntVec gi = X.f.matrix.col(i), gj = X.f.matrix.col(j);
      q.off(i, j) = -X.q.off(i, j) + s.eval(gi, gj) + s.eval(gj, gi);
    }
  GradedPremetricGroup R{X.context, X.G, X.f, q};
  if (!R.well_formed()) throw std::logic_error("s_opposite: result malformed");
  return R;
}

bool verify_certificate(const GradedPremetricGroup& X, const TrivialityCertificate& c) {
  if (!(c.lagrangian.parent == X.G)) return false;
  if (!c.nondegenerate) return false;
  Tables t = build_tables(X);
  if (radical_indices(t).size() != 1) return false;
  for (Int i : c.lagrangian.elements)
    if (!t.q[i].is_zero() || t.grading[i] != 0) return false;
  Int target = isqrt_exact(X.G.order());
  if (target < 0 || c.lagrangian.order() != target) return false;
  Subgroup perp = orthogonal_complement(bil_of_quad(X.q), c.lagrangian);
  return perp.elements == c.lagrangian.elements;
}

std::optional<TrivialityCertificate> is_a_trivial(const GradedPremetricGroup& X, Int cap) {
  if (X.G.order() > cap)
    throw CapExceeded("is_a_trivial: order " + std::to_string(X.G.order()));
  Tables t = build_tables(X);
  if (radical_indices(t).size() != 1) return std::nullopt;
  Int target = isqrt_exact(X.G.order());
  if (target < 0) return std::nullopt;
  if (X.G.order() > 1) {
    std::complex<double> sigma = gauss_sum(X.q);
    if (std::abs(sigma - std::complex<double>(1.0, 0.0)) > 1e-6) return std::nullopt;
  }
  auto iso = find_isotropic(t, target);
  if (!iso) return std::nullopt;
  TrivialityCertificate cert{subgroup_from_elements(X.G, *iso), true};
  if (!verify_certificate(X, cert))
    throw std::logic_error("is_a_trivial: certificate failed re-verification");
  return cert;
}

InvertibilityCertificate s_invertibility(const GradedPremetricGroup& X, Int cap) {
  GradedPremetricGroup P = twisted_product(X, s_opposite(X));
  if (P.G.order() > cap)
    throw CapExceeded("s_invertibility: order " + std::to_string(P.G.order()));
  InvertibilityCertificate out;
  out.product_certificate = is_a_trivial(P, cap);
  out.invertible = out.product_certificate.has_value();
  return out;
}

bool is_s_invertible(const GradedPremetricGroup& X, Int cap) {
  return s_invertibility(X, cap).invertible;
}

SplitResult split_metric(const GradedPremetricGroup& X, const Subgroup& H) {
  if (!(H.parent == X.G)) throw ContextMismatch("split_metric: subgroup of another group");
  for (Int i : H.elements)
    if (!X.f.apply(element_at(X.G, i)).isZero())
      throw NotInKernel("split_metric: subgroup not zero-graded");
  if (H.order() == 1) {
    FinAbGroup triv;
    return {{triv, zero_form(triv), {1.0, 0.0}}, X};
  }
  SubgroupBasis hb = subgroup_basis(H);
  QuadraticForm qh = restrict_form(X.q, hb);
  Bicharacter bh = bil_of_quad(qh);
  if (radical(bh).order() != 1)
    throw DegenerateRestriction("split_metric: restriction degenerate");
  Subgroup K = orthogonal_complement(bil_of_quad(X.q), H);
  if (H.order() * K.order() != X.G.order())
    throw std::logic_error("split_metric: order count failed");
  SubgroupBasis kb = subgroup_basis(K);
  for (int i = 0; i < hb.group.rank(); ++i)
    for (int j = 0; j < kb.group.rank(); ++j) {
      IntVec h = hb.inclusion.apply(IntVec::Unit(hb.group.rank(), i));
      IntVec k = kb.inclusion.apply(IntVec::Unit(kb.group.rank(), j));
      if (!(X.q.eval(reduce_element(X.G, h + k)) - X.q.eval(h) - X.q.eval(k)).is_zero())
        throw std::logic_error("split_metric: summands not orthogonal");
    }
  GroupHom fk = compose(X.f, kb.inclusion);
  QuadraticForm qk = restrict_form(X.q, kb);
  GradedPremetricGroup comp{X.context, kb.group, fk, qk};
  return {{hb.group, qh, gauss_sum(qh)}, comp};
}

GradedPremetricGroup condense(const GradedPremetricGroup& X, const Subgroup& H) {
  if (!(H.parent == X.G)) throw ContextMismatch("condense: subgroup of another group");
  for (Int i : H.elements) {
    IntVec x = element_at(X.G, i);
    if (!X.f.apply(x).isZero()) throw NotInKernel("condense: subgroup not zero-graded");
    if (!X.q.eval(x).is_zero()) throw NotIsotropic("condense: subgroup not isotropic");
  }
  Subgroup K = orthogonal_complement(bil_of_quad(X.q), H);
  SubgroupBasis kb = subgroup_basis(K);
  std::vector<Int> h_in_b;
  for (Int i = 0; i < kb.group.order(); ++i) {
    IntVec img = kb.inclusion.apply(element_at(kb.group, i));
    if (H.contains(img)) h_in_b.push_back(i);
  }
  QuotientData qd = quotient(kb.group, subgroup_from_elements(kb.group, h_in_b));

  const int r = qd.group.rank();
  std::vector<IntVec> reps;
  for (int i = 0; i < r; ++i)
    reps.push_back(kb.inclusion.apply(reduce_element(kb.group, qd.section.col(i))));
  QuadraticForm q = zero_form(qd.group);
  Bicharacter bil = bil_of_quad(X.q);
  for (int i = 0; i < r; ++i) {
    q.gen_values[i] = X.q.eval(reps[i]);
    for (int j = i + 1; j < r; ++j) q.off(i, j) = bil.eval(reps[i], reps[j]);
  }
  IntMat fm(X.context.A.rank(), r);
  for (int i = 0; i < r; ++i) fm.col(i) = X.f.apply(reps[i]);
  GroupHom f{qd.group, X.context.A, fm};
  GradedPremetricGroup out{X.context, qd.group, f, q};
  if (!out.well_formed()) throw std::logic_error("condense: result malformed");
  // well-definedness audit over every coset representative
  for (Int i = 0; i < kb.group.order(); ++i) {
    IntVec b = element_at(kb.group, i);
    IntVec img = kb.inclusion.apply(b);
    IntVec z = qd.projection.apply(b);
    if (!(out.q.eval(z) - X.q.eval(img)).is_zero())
      throw std::logic_error("condense: induced form ill-defined");
    if (!(out.f.apply(z) - X.f.apply(img)).isZero())
      throw std::logic_error("condense: induced grading ill-defined");
  }
  return out;
}

GradedPremetricGroup replay_trace(const ReductionTrace& t) {
  GradedPremetricGroup cur = t.input;
  for (const ReductionStep& st : t.steps) {
    if (st.kind == ReductionStep::Kind::Condense)
      cur = condense(cur, st.subgroup);
    else
      cur = split_metric(cur, st.subgroup).complement;
  }
  return cur;
}

ReducedObject condense_reduce(const GradedPremetricGroup& X) {
  ReducedObject out{X, {}};
  for (;;) {
    Tables t = build_tables(out.object);
    Int pick = -1;
    for (Int i = 1; i < out.object.G.order(); ++i)
      if (t.grading[i] == 0 && t.q[i].is_zero()) {
        pick = i;
        break;
      }
    if (pick < 0) break;
    Subgroup H = subgroup_from_elements(out.object.G, cyclic_span(out.object.G, pick));
    GradedPremetricGroup next = condense(out.object, H);
    out.steps.push_back({ReductionStep::Kind::Condense, H, std::nullopt});
    out.object = next;
  }
  return out;
}

std::optional<TrivialityCertificate> raw_trivial(const GradedPremetricGroup& X) {
  return is_a_trivial(condense_reduce(X).object);
}

std::vector<QuadraticForm> stabilizer_pool(Int max_order) {
  std::vector<QuadraticForm> out;
  for (Int n = 2; n <= max_order; ++n)
    for (const FinAbGroup& g : abelian_groups_of_order(n))
      for (const QuadraticForm& q : enumerate_quadratic_forms(g))
        if (radical(bil_of_quad(q)).order() == 1) out.push_back(q);
  return out;
}

std::optional<ReductionTrace> is_trivial_mod_witt(const GradedPremetricGroup& X, Int cap,
                                                  bool allow_stabilization) {
  if (X.G.order() > cap)
    throw CapExceeded("is_trivial_mod_witt: order " + std::to_string(X.G.order()));
  ReducedObject red = condense_reduce(X);
  ReductionTrace trace;
  trace.input = X;
  trace.steps = red.steps;
  if (reduced_is_metric(red.object)) {
    if (red.object.G.order() > 1) {
      Subgroup full = full_subgroup(red.object.G);
      SplitResult sr = split_metric(red.object, full);
      trace.steps.push_back({ReductionStep::Kind::Split, full, sr.metric});
      trace.final_object = sr.complement;
    } else {
      trace.final_object = red.object;
    }
    trace.final_certificate = is_a_trivial(trace.final_object);
    return trace;
  }
  if (allow_stabilization) {
    for (const QuadraticForm& m : stabilizer_pool(red.object.G.order())) {
      GradedPremetricGroup P =
          twisted_product(red.object, trivially_graded(X.context, m));
      auto cert = is_a_trivial(P, cap);
      if (cert) {
        trace.final_object = red.object;
        trace.used_stabilization = true;
        trace.stabilizer = m;
        trace.stabilized_certificate = cert;
        return trace;
      }
    }
  }
  return std::nullopt;
}

namespace {

bool mod_witt_trivial_reduced(const GradedPremetricGroup& reduced) {
  return reduced_is_metric(reduced);
}

bool mod_witt_equal_nocheck(const GradedPremetricGroup& X, const GradedPremetricGroup& Y) {
  GradedPremetricGroup P = twisted_product(X, s_opposite(Y));
  return mod_witt_trivial_reduced(condense_reduce(P).object);
}

}  // namespace

Int order_mod_witt(const GradedPremetricGroup& X, Int cap_n) {
  if (!is_s_invertible(X)) throw NotInvertible("order_mod_witt");
  GradedPremetricGroup P = unit_object(X.context);
  for (Int n = 1; n <= cap_n; ++n) {
    P = condense_reduce(twisted_product(P, X)).object;
    if (mod_witt_trivial_reduced(P)) return n;
  }
  throw OrderCapExceeded("order_mod_witt: cap " + std::to_string(cap_n));
}

Int order_raw(const GradedPremetricGroup& X, Int cap_n) {
  if (!is_s_invertible(X)) throw NotInvertible("order_raw");
  GradedPremetricGroup P = unit_object(X.context);
  for (Int n = 1; n <= cap_n; ++n) {
    P = condense_reduce(twisted_product(P, X)).object;
    if (is_a_trivial(P)) return n;
  }
  throw OrderCapExceeded("order_raw: cap " + std::to_string(cap_n));
}

bool classes_equal(const GradedPremetricGroup& X, const GradedPremetricGroup& Y) {
  if (!is_s_invertible(X) || !is_s_invertible(Y)) throw NotInvertible("classes_equal");
  return raw_trivial(twisted_product(X, s_opposite(Y))).has_value();
}

bool classes_equal_mod_witt(const GradedPremetricGroup& X, const GradedPremetricGroup& Y) {
  if (!is_s_invertible(X) || !is_s_invertible(Y))
    throw NotInvertible("classes_equal_mod_witt");
  return mod_witt_equal_nocheck(X, Y);
}

bool graded_isometry_exists(const GradedPremetricGroup& X, const GradedPremetricGroup& Y) {
  if (!(X.context == Y.context)) throw ContextMismatch("graded_isometry_exists");
  if (X.G.order() != Y.G.order()) return false;
  if (canonicalize(X.G).factors != canonicalize(Y.G).factors) return false;
  Tables tx = build_tables(X), ty = build_tables(Y);
  std::map<std::pair<QZ, Int>, Int> mx, my;
  for (Int i = 0; i < X.G.order(); ++i) {
    ++mx[{tx.q[i], tx.grading[i]}];
    ++my[{ty.q[i], ty.grading[i]}];
  }
  if (mx != my) return false;

  const int r = X.G.rank();
  std::vector<Int> gen_idx(r), img(r, 0);
  for (int j = 0; j < r; ++j) gen_idx[j] = element_index(X.G, IntVec::Unit(r, j));
  // chosen images must generate a subgroup as large as the matching generator
  // prefix does, otherwise no extension can be injective
  std::vector<Int> expect_span(r + 1, 1);
  for (int j = 0; j < r; ++j) expect_span[j + 1] = expect_span[j] * X.G.factors[j];
  std::vector<std::vector<Int>> span_stack;
  span_stack.push_back({0});
  Int budget = Int(1) << 22;
  auto grow_span = [&](const std::vector<Int>& span, Int c) {
    std::set<Int> out(span.begin(), span.end());
    IntVec cv = element_at(Y.G, c);
    IntVec acc = zero_element(Y.G);
    Int ord = element_order(Y.G, cv);
    for (Int t = 1; t < ord; ++t) {
      acc = reduce_element(Y.G, acc + cv);
      for (Int s : span) out.insert(element_index(Y.G, reduce_element(Y.G, element_at(Y.G, s) + acc)));
    }
    return std::vector<Int>(out.begin(), out.end());
  };
  auto dfs = [&](auto&& self, int depth) -> bool {
    if (depth == r) {
      IntMat m(Y.G.rank(), r);
      for (int j = 0; j < r; ++j) m.col(j) = element_at(Y.G, img[j]);
      GroupHom h{X.G, Y.G, m};
      if (!h.well_defined()) return false;
      std::unordered_set<Int> seen;
      for (Int i = 0; i < X.G.order(); ++i) {
        IntVec y = h.apply(element_at(X.G, i));
        Int yi = element_index(Y.G, y);
        if (!seen.insert(yi).second) return false;
        if (ty.q[yi] != tx.q[i] || ty.grading[yi] != tx.grading[i]) return false;
      }
      return true;
    }
    Int n = X.G.factors[depth];
    for (Int c = 0; c < Y.G.order(); ++c) {
      if (--budget <= 0) throw CapExceeded("graded_isometry_exists: search budget");
      if (ty.q[c] != tx.q[gen_idx[depth]] || ty.grading[c] != tx.grading[gen_idx[depth]])
        continue;
      IntVec yc = element_at(Y.G, c);
      if (!reduce_element(Y.G, n * yc).isZero()) continue;
      bool ok = true;
      for (int j = 0; j < depth && ok; ++j)
        ok = bil_idx(ty, c, img[j]) == bil_idx(tx, gen_idx[depth], gen_idx[j]);
      if (!ok) continue;
      std::vector<Int> span = grow_span(span_stack[depth], c);
      if (Int(span.size()) != expect_span[depth + 1]) continue;
      img[depth] = c;
      span_stack.push_back(std::move(span));
      bool hit = self(self, depth + 1);
      span_stack.pop_back();
      if (hit) return true;
    }
    return false;
  };
  return dfs(dfs, 0);
}

AbstractGroupInfo analyze_table(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  int e = -1;
  for (int i = 0; i < n && e < 0; ++i) {
    bool id = true;
    for (int j = 0; j < n && id; ++j) id = table[i][j] == j && table[j][i] == j;
    if (id) e = i;
  }
  if (e < 0) throw std::logic_error("analyze_table: no identity");
  AbstractGroupInfo info;
  info.order = n;
  std::vector<int> inv(n, -1);
  for (int i = 0; i < n; ++i) {
    Int ord = 1;
    int x = i;
    while (x != e) {
      x = table[x][i];
      ++ord;
    }
    ++info.order_histogram[ord];
    for (int j = 0; j < n; ++j)
      if (table[i][j] == e) inv[i] = j;
  }
  info.abelian = true;
  Int center = 0;
  for (int i = 0; i < n; ++i) {
    bool cen = true;
    for (int j = 0; j < n; ++j)
      if (table[i][j] != table[j][i]) {
        cen = false;
        info.abelian = false;
      }
    if (cen) ++center;
  }
  info.center_order = center;
  std::set<int> derived;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      derived.insert(table[table[i][j]][table[inv[i]][inv[j]]]);
  // close the commutator set under multiplication
  for (;;) {
    std::set<int> next = derived;
    for (int x : derived)
      for (int y : derived) next.insert(table[x][y]);
    if (next.size() == derived.size()) break;
    derived = std::move(next);
  }
  info.derived_order = static_cast<Int>(derived.size());
  return info;
}

std::string identify_group(const AbstractGroupInfo& info) {
  if (info.abelian) {
    for (const FinAbGroup& g : abelian_groups_of_order(info.order))
      if (abelian_histogram(g) == info.order_histogram) return group_str(g);
    return "unrecognized-abelian(order=" + std::to_string(info.order) + ")";
  }
  std::vector<std::pair<std::string, std::vector<std::vector<int>>>> candidates;
  if (info.order % 2 == 0 && info.order / 2 >= 3 && info.order <= 60)
    candidates.emplace_back("D" + std::to_string(info.order / 2),
                            dihedral_table(info.order / 2));
  if (info.order % 4 == 0 && info.order / 4 >= 2 && info.order <= 60) {
    Int n = info.order / 4;
    candidates.emplace_back(n == 2 ? "Q8" : "Dic" + std::to_string(n), dicyclic_table(n));
  }
  if (info.order == 12)
    candidates.emplace_back("A4", perm_group_table({{1, 2, 0, 3}, {1, 0, 3, 2}}, 4));
  if (info.order == 24)
    candidates.emplace_back("S4", perm_group_table({{1, 2, 3, 0}, {1, 0, 2, 3}}, 4));
  if (info.order == 60)
    candidates.emplace_back("A5", perm_group_table({{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}}, 5));
  for (const auto& [name, table] : candidates)
    if (info_equal(analyze_table(table), info)) return name;
  return "unrecognized(order=" + std::to_string(info.order) + ")";
}

GroupStructureReport group_structure(const std::vector<GradedPremetricGroup>& generators,
                                     Int closure_cap) {
  GroupStructureReport rep;
  SyllepticContext ctx;
  if (generators.empty()) {
    FinAbGroup triv;
    ctx = {triv, zero_bicharacter(triv, triv)};
  } else {
    ctx = generators.front().context;
  }
  std::vector<GradedPremetricGroup> reps{unit_object(ctx)};
  auto find_class = [&](const GradedPremetricGroup& P) -> int {
    for (size_t k = 0; k < reps.size(); ++k)
      if (objects_identical(P, reps[k])) return static_cast<int>(k);
    for (size_t k = 0; k < reps.size(); ++k)
      if (mod_witt_equal_nocheck(P, reps[k])) return static_cast<int>(k);
    return -1;
  };
  for (const GradedPremetricGroup& g : generators) {
    if (!(g.context == ctx)) throw ContextMismatch("group_structure: mixed contexts");
    if (!is_s_invertible(g)) throw NotInvertible("group_structure: generator");
    GradedPremetricGroup R = condense_reduce(g).object;
    if (find_class(R) < 0) reps.push_back(R);
  }
  std::vector<std::vector<int>> table(reps.size(), std::vector<int>(reps.size(), -1));
  for (;;) {
    bool complete = true;
    for (size_t i = 0; i < reps.size(); ++i)
      for (size_t j = 0; j < reps.size(); ++j) {
        if (table[i][j] >= 0) continue;
        complete = false;
        GradedPremetricGroup P =
            condense_reduce(twisted_product(reps[i], reps[j])).object;
        int k = find_class(P);
        if (k < 0) {
          if (static_cast<Int>(reps.size()) >= closure_cap)
            throw ClosureCapExceeded("group_structure: closure cap " +
                                     std::to_string(closure_cap));
          reps.push_back(P);
          k = static_cast<int>(reps.size()) - 1;
          for (auto& row : table) row.resize(reps.size(), -1);
          table.emplace_back(reps.size(), -1);
        }
        table[i][j] = k;
      }
    if (complete) break;
  }
  AbstractGroupInfo info = analyze_table(table);
  rep.order = info.order;
  rep.order_histogram = info.order_histogram;
  rep.abelian = info.abelian;
  rep.center_order = info.center_order;
  rep.derived_order = info.derived_order;
  rep.label = identify_group(info);
  rep.representatives = std::move(reps);
  rep.table = std::move(table);
  return rep;
}

std::vector<GroupHom> symplectic_automorphisms(const SyllepticContext& ctx, Int cap) {
  Bicharacter alt = alt_of_bicharacter(ctx.s);
  std::vector<GroupHom> out;
  for (const GroupHom& phi : automorphisms(ctx.A, cap)) {
    bool ok = true;
    const int r = ctx.A.rank();
    for (int i = 0; i < r && ok; ++i)
      for (int j = 0; j < r && ok; ++j)
        ok = alt.eval(phi.matrix.col(i), phi.matrix.col(j)) ==
             alt.eval(IntVec::Unit(r, i), IntVec::Unit(r, j));
    if (ok) out.push_back(phi);
  }
  return out;
}

ExactSequenceReport exact_sequence_report(const SyllepticContext& ctx,
                                          std::optional<Int> computed_group_order) {
  ExactSequenceReport rep;
  rep.aut_syp_order = static_cast<Int>(symplectic_automorphisms(ctx).size());
  rep.h5_order = em_h5_b3(ctx.A).order();
  rep.product = rep.aut_syp_order * rep.h5_order;
  rep.witt_group_order = computed_group_order;
  rep.consistent = computed_group_order.has_value() && *computed_group_order == rep.product;
  return rep;
}

}  // namespace tycat
