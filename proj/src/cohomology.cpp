#include "tycat/cohomology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "tycat/linalg.hpp"

namespace tycat {

namespace {

IntMat mat_mod_mul(const FinAbGroup& M, const IntMat& a, const IntMat& b) {
  IntMat c = a * b;
  for (int i = 0; i < c.rows(); ++i)
    for (int j = 0; j < c.cols(); ++j) c(i, j) = mod_pos(c(i, j), M.factors[i]);
  return c;
}

bool mat_mod_equal(const FinAbGroup& M, const IntMat& a, const IntMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (mod_pos(a(i, j) - b(i, j), M.factors[i]) != 0) return false;
  return true;
}

IntMat mat_mod_pow(const FinAbGroup& M, const IntMat& a, Int e) {
  IntMat r = IntMat::Identity(a.rows(), a.cols());
  for (Int i = 0; i < e; ++i) r = mat_mod_mul(M, r, a);
  return r;
}

Int scalar_mul_idx(const FinAbGroup& g, Int k, Int i) {
  return element_index(g, reduce_element(g, k * element_at(g, i)));
}

Int add_idx(const FinAbGroup& g, Int i, Int j) {
  return element_index(g, reduce_element(g, element_at(g, i) + element_at(g, j)));
}

std::vector<Int> closure_set(const FinAbGroup& g, std::vector<Int> seed) {
  std::set<Int> out(seed.begin(), seed.end());
  out.insert(0);
  for (;;) {
    std::set<Int> next = out;
    for (Int a : out)
      for (Int b : seed) next.insert(add_idx(g, a, b));
    if (next.size() == out.size()) break;
    out = std::move(next);
    seed.assign(out.begin(), out.end());
  }
  return {out.begin(), out.end()};
}

// invariant factors of K/I from order-dividing counts; optional generator picks
FinAbGroup quotient_type_counts(const FinAbGroup& M, const std::vector<Int>& K,
                                const std::vector<Int>& I,
                                std::vector<Int>* rep_picks = nullptr) {
  const Int qorder = static_cast<Int>(K.size()) / static_cast<Int>(I.size());
  std::vector<Int> collected;
  Int rem = qorder;
  for (Int p = 2; p <= rem; ++p) {
    if (rem % p) continue;
    std::vector<Int> counts{1};  // elements killed by p^j, j = 0,1,...
    Int pj = 1;
    for (;;) {
      pj *= p;
      Int c = 0;
      for (Int x : K)
        if (std::binary_search(I.begin(), I.end(), scalar_mul_idx(M, pj, x))) ++c;
      counts.push_back(c / static_cast<Int>(I.size()));
      if (counts.back() == counts[counts.size() - 2]) break;
    }
    std::vector<Int> r;  // r[j] = number of cyclic p-factors of order >= p^j
    for (size_t j = 1; j < counts.size(); ++j) {
      Int ratio = counts[j] / counts[j - 1];
      Int e = 0;
      while (ratio > 1) {
        ratio /= p;
        ++e;
      }
      r.push_back(e);
    }
    r.push_back(0);
    Int power = 1;
    for (size_t j = 0; j + 1 < r.size(); ++j) {
      power *= p;
      for (Int c = 0; c < r[j] - r[j + 1]; ++c) collected.push_back(power);
    }
    while (rem % p == 0) rem /= p;
  }
  if (rep_picks) {
    rep_picks->clear();
    std::vector<Int> span = I;
    while (span.size() < K.size()) {
      Int pick = -1;
      for (Int x : K)
        if (!std::binary_search(span.begin(), span.end(), x)) {
          pick = x;
          break;
        }
      rep_picks->push_back(pick);
      std::vector<Int> seed = span;
      seed.push_back(pick);
      span = closure_set(M, seed);
    }
  }
  if (collected.empty()) return FinAbGroup{};
  return canonicalize(FinAbGroup{collected});
}

struct BarMatrix {
  IntMat scaled;              // transported to common modulus L
  std::vector<Int> src_mods;  // per column
  std::vector<Int> dst_mods;  // per row
};

// differential C^d -> C^{d+1} for the normalized bar resolution
BarMatrix bar_differential(const GModule& mod, int d) {
  const Int n = mod.G.order();
  const int r = mod.M.rank();
  const Int tc = bar_tuple_count(n, d);
  const Int tr = bar_tuple_count(n, d + 1);
  if (tr * r * tc * r > kBarEntryCap)
    throw CapExceeded("bar differential size " + std::to_string(tr * r) + "x" +
                      std::to_string(tc * r));
  IntMat A = IntMat::Zero(tr * r, tc * r);
  IntMat id = IntMat::Identity(r, r);
  for (Int ti = 0; ti < tr; ++ti) {
    std::vector<Int> t = bar_tuple_at(n, d + 1, ti);
    {  // g1 acts on the tail
      std::vector<Int> tail(t.begin() + 1, t.end());
      Int ct = bar_tuple_index(n, tail);
      A.block(ti * r, ct * r, r, r) += action_of(mod, element_at(mod.G, t[0]));
    }
    for (int i = 0; i < d; ++i) {  // contract entries i, i+1
      Int merged = add_idx(mod.G, t[i], t[i + 1]);
      if (merged == 0) continue;
      std::vector<Int> u;
      for (int k = 0; k < d + 1; ++k) {
        if (k == i) {
          u.push_back(merged);
          ++k;  // the entry at i+1 was absorbed
          continue;
        }
        u.push_back(t[k]);
      }
      Int ct = bar_tuple_index(n, u);
      Int sign = (i % 2 == 0) ? -1 : 1;  // (-1)^{i+1} with 1-based position
      A.block(ti * r, ct * r, r, r) += sign * id;
    }
    {  // drop the last entry
      std::vector<Int> head(t.begin(), t.end() - 1);
      Int ct = bar_tuple_index(n, head);
      Int sign = (d % 2 == 0) ? -1 : 1;  // (-1)^{d+1}
      A.block(ti * r, ct * r, r, r) += sign * id;
    }
  }
  BarMatrix bm;
  bm.src_mods.reserve(tc * r);
  bm.dst_mods.reserve(tr * r);
  for (Int t = 0; t < tc; ++t)
    for (int c = 0; c < r; ++c) bm.src_mods.push_back(mod.M.factors[c]);
  for (Int t = 0; t < tr; ++t)
    for (int c = 0; c < r; ++c) bm.dst_mods.push_back(mod.M.factors[c]);
  Int L = 1;
  for (Int m : mod.M.factors) L = std::lcm(L, m);
  bm.scaled = IntMat::Zero(A.rows(), A.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) {
      if (A(i, j) == 0) continue;
      Int v = A(i, j) * bm.src_mods[j];
      if (v % bm.dst_mods[i] != 0)
        throw std::logic_error("bar differential not well defined on coordinates");
      bm.scaled(i, j) = mod_pos(v / bm.dst_mods[i], L);
    }
  return bm;
}

IntMat scale_diag(const std::vector<Int>& mods, Int L) {
  IntMat d = IntMat::Zero(mods.size(), mods.size());
  for (size_t i = 0; i < mods.size(); ++i) d(i, i) = L / mods[i];
  return d;
}

}  // namespace

GModule make_module(const FinAbGroup& G, const FinAbGroup& M, std::vector<IntMat> gen_action) {
  if (static_cast<int>(gen_action.size()) != G.rank())
    throw ActionInvalid("one action matrix per generator required");
  for (int i = 0; i < G.rank(); ++i) {
    const IntMat& a = gen_action[i];
    if (a.rows() != M.rank() || a.cols() != M.rank())
      throw ActionInvalid("action matrix shape");
    GroupHom h{M, M, a};
    if (!h.well_defined()) throw ActionInvalid("action not well defined");
    std::set<Int> img;
    for (Int k = 0; k < M.order(); ++k)
      img.insert(element_index(M, h.apply(element_at(M, k))));
    if (static_cast<Int>(img.size()) != M.order())
      throw ActionInvalid("action not bijective");
    if (!mat_mod_equal(M, mat_mod_pow(M, a, G.factors[i]), IntMat::Identity(M.rank(), M.rank())))
      throw ActionInvalid("action ignores generator order");
  }
  for (size_t i = 0; i < gen_action.size(); ++i)
    for (size_t j = i + 1; j < gen_action.size(); ++j)
      if (!mat_mod_equal(M, mat_mod_mul(M, gen_action[i], gen_action[j]),
                         mat_mod_mul(M, gen_action[j], gen_action[i])))
        throw ActionInvalid("actions do not commute");
  return {G, M, std::move(gen_action)};
}

GModule trivial_module(const FinAbGroup& G, const FinAbGroup& M) {
  std::vector<IntMat> acts(G.rank(), IntMat::Identity(M.rank(), M.rank()));
  return {G, M, std::move(acts)};
}

IntMat action_of(const GModule& mod, const IntVec& g) {
  IntMat r = IntMat::Identity(mod.M.rank(), mod.M.rank());
  for (int i = 0; i < mod.G.rank(); ++i)
    for (Int k = 0; k < mod_pos(g(i), mod.G.factors[i]); ++k)
      r = mat_mod_mul(mod.M, r, mod.gen_action[i]);
  return r;
}

Int bar_tuple_count(Int group_order, int degree) {
  if (degree == 0) return 1;
  Int base = group_order - 1;
  Int c = 1;
  for (int i = 0; i < degree; ++i) c *= base;
  return c;
}

std::vector<Int> bar_tuple_at(Int group_order, int degree, Int index) {
  Int base = group_order - 1;
  std::vector<Int> t(degree);
  for (int k = degree - 1; k >= 0; --k) {
    t[k] = index % base + 1;
    index /= base;
  }
  return t;
}

Int bar_tuple_index(Int group_order, const std::vector<Int>& tuple) {
  Int base = group_order - 1;
  Int idx = 0;
  for (Int e : tuple) {
    if (e == 0) return -1;
    idx = idx * base + (e - 1);
  }
  return idx;
}

CohomologyGroup cohomology_bar(const GModule& mod, int degree) {
  const Int n = mod.G.order();
  const int r = mod.M.rank();
  CohomologyGroup out;
  out.degree = degree;
  if (n == 1) {
    out.group = degree == 0 ? canonicalize(mod.M) : FinAbGroup{};
    return out;
  }
  Int L = 1;
  for (Int m : mod.M.factors) L = std::lcm(L, m);
  BarMatrix dd = bar_differential(mod, degree);
  IntMat ds = scale_diag(dd.src_mods, L);
  IntMat kernel_gens = ds * howell_kernel(dd.scaled * ds, L);
  for (int i = 0; i < kernel_gens.rows(); ++i)
    for (int j = 0; j < kernel_gens.cols(); ++j)
      kernel_gens(i, j) = mod_pos(kernel_gens(i, j), L);
  IntMat image_gens(kernel_gens.rows(), 0);
  if (degree > 0) {
    BarMatrix dprev = bar_differential(mod, degree - 1);
    IntMat dsp = scale_diag(dprev.src_mods, L);
    image_gens = dprev.scaled * dsp;
    for (int i = 0; i < image_gens.rows(); ++i)
      for (int j = 0; j < image_gens.cols(); ++j)
        image_gens(i, j) = mod_pos(image_gens(i, j), L);
  }
  QuotientType qt = quotient_type_mod(kernel_gens, image_gens, L);
  std::vector<Int> fs;
  for (Int f : qt.factors) fs.push_back(f);
  out.group = fs.empty() ? FinAbGroup{} : canonicalize(FinAbGroup{fs});

  Int tuples = bar_tuple_count(n, degree);
  Int gd = 1;
  bool small = true;
  for (int i = 0; i < degree && small; ++i) {
    gd *= n;
    small = gd <= kRepresentativeCap;
  }
  if (small) {
    for (int k = 0; k < qt.gen_combos.cols(); ++k) {
      IntVec scaled = kernel_gens * qt.gen_combos.col(k);
      std::vector<IntVec> table;
      for (Int t = 0; t < tuples; ++t) {
        IntVec v(r);
        for (int c = 0; c < r; ++c) {
          Int unit = L / mod.M.factors[c];
          Int val = mod_pos(scaled(t * r + c), L);
          if (val % unit != 0) throw std::logic_error("representative off the coordinate lattice");
          v(c) = (val / unit) % mod.M.factors[c];
        }
        table.push_back(v);
      }
      out.representatives.push_back(std::move(table));
    }
  }
  return out;
}

CohomologyGroup cohomology_cyclic(Int n, const GModule& mod, int degree) {
  CohomologyGroup out;
  out.degree = degree;
  if (n == 1) {
    out.group = degree == 0 ? canonicalize(mod.M) : FinAbGroup{};
    return out;
  }
  if (mod.G.factors != std::vector<Int>{n})
    throw ActionInvalid("cohomology_cyclic: module not over Z/" + std::to_string(n));
  const FinAbGroup& M = mod.M;
  const IntMat& sigma = mod.gen_action.at(0);
  if (!mat_mod_equal(M, mat_mod_pow(M, sigma, n), IntMat::Identity(M.rank(), M.rank())))
    throw ActionInvalid("generator action order");
  if (M.order() > kDefaultGroupCap) throw CapExceeded("cohomology_cyclic module size");

  IntMat norm = IntMat::Zero(M.rank(), M.rank());
  IntMat pw = IntMat::Identity(M.rank(), M.rank());
  for (Int i = 0; i < n; ++i) {
    norm += pw;
    pw = mat_mod_mul(M, pw, sigma);
  }
  auto apply_idx = [&](const IntMat& m, Int i) {
    return element_index(M, reduce_element(M, m * element_at(M, i)));
  };
  std::vector<Int> invariants, norm_image, norm_kernel, shift_image;
  std::set<Int> nm, sm;
  for (Int i = 0; i < M.order(); ++i) {
    if (apply_idx(sigma, i) == i) invariants.push_back(i);
    if (apply_idx(norm, i) == 0) norm_kernel.push_back(i);
    nm.insert(apply_idx(norm, i));
    IntVec d = sigma * element_at(M, i) - element_at(M, i);
    sm.insert(element_index(M, reduce_element(M, d)));
  }
  norm_image.assign(nm.begin(), nm.end());
  shift_image.assign(sm.begin(), sm.end());

  std::vector<Int> picks;
  if (degree == 0) {
    out.group = quotient_type_counts(M, invariants, {0}, &picks);
  } else if (degree % 2 == 0) {
    out.group = quotient_type_counts(M, invariants, norm_image, &picks);
  } else {
    out.group = quotient_type_counts(M, norm_kernel, shift_image, &picks);
  }
  for (Int p : picks) out.representatives.push_back({element_at(M, p)});
  return out;
}

CohomologyGroup cohomology(const GModule& mod, int degree, Resolution res) {
  bool periodic = res == Resolution::Periodic ||
                  (res == Resolution::Auto && mod.G.rank() <= 1);
  if (periodic) {
    if (mod.G.rank() > 1)
      throw ActionInvalid("periodic resolution needs a cyclic group");
    return cohomology_cyclic(mod.G.order(), mod, degree);
  }
  return cohomology_bar(mod, degree);
}

namespace {

// one level pair: classes at level N pushed through the coefficient map
// x -> |G| * x into level N * |G|
CohomologyGroup torus_at_level(const FinAbGroup& G, int degree, Int level, Resolution res) {
  const Int n = G.order();
  const Int level2 = level * n;
  CohomologyGroup out;
  out.degree = degree;
  if (n == 1) {
    out.group = degree == 0 ? FinAbGroup{{level}} : FinAbGroup{};
    return out;
  }
  bool periodic = res == Resolution::Periodic ||
                  (res == Resolution::Auto && G.rank() <= 1);
  if (periodic && G.rank() > 1)
    throw ActionInvalid("periodic resolution needs a cyclic group");
  if (periodic) {
    FinAbGroup M1{{level}}, M2{{level2}};
    auto sets = [&](const FinAbGroup& M) {
      // trivial action: invariants = M, norm = multiplication by n
      std::vector<Int> all, ker, img;
      std::set<Int> im;
      for (Int i = 0; i < M.order(); ++i) {
        all.push_back(i);
        if (mod_pos(n * i, M.factors[0]) == 0) ker.push_back(i);
        im.insert(mod_pos(n * i, M.factors[0]));
      }
      img.assign(im.begin(), im.end());
      return std::tuple(all, ker, img);
    };
    auto [all1, ker1, img1] = sets(M1);
    auto [all2, ker2, img2] = sets(M2);
    (void)img1;
    (void)all2;
    (void)ker2;
    std::vector<Int> K1, I2;
    if (degree == 0) {
      K1 = all1;
      I2 = {0};
    } else if (degree % 2 == 0) {
      K1 = all1;
      I2 = img2;
    } else {
      K1 = ker1;  // trivial action: the odd-degree denominator is zero
      I2 = {0};
    }
    std::vector<Int> mapped;
    for (Int x : K1) mapped.push_back(mod_pos(n * x, level2));
    mapped.push_back(0);
    std::sort(mapped.begin(), mapped.end());
    mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
    std::vector<Int> span = closure_set(M2, mapped);
    for (Int x : I2)
      if (!std::binary_search(span.begin(), span.end(), x)) {
        std::vector<Int> seed = span;
        seed.insert(seed.end(), I2.begin(), I2.end());
        span = closure_set(M2, seed);
        break;
      }
    std::vector<Int> picks;
    out.group = quotient_type_counts(M2, span, I2, &picks);
    for (Int p : picks) out.representatives.push_back({element_at(M2, p)});
    return out;
  }
  // non-cyclic: bar kernels at both levels, image of the transition
  GModule m1 = trivial_module(G, FinAbGroup{{level}});
  GModule m2 = trivial_module(G, FinAbGroup{{level2}});
  BarMatrix d1 = bar_differential(m1, degree);
  IntMat k1 = howell_kernel(d1.scaled, level);
  IntMat mapped = k1;
  for (int i = 0; i < mapped.rows(); ++i)
    for (int j = 0; j < mapped.cols(); ++j)
      mapped(i, j) = mod_pos(n * mod_pos(k1(i, j), level), level2);
  IntMat image_gens(mapped.rows(), 0);
  if (degree > 0) {
    BarMatrix dp = bar_differential(m2, degree - 1);
    image_gens = dp.scaled;
    for (int i = 0; i < image_gens.rows(); ++i)
      for (int j = 0; j < image_gens.cols(); ++j)
        image_gens(i, j) = mod_pos(image_gens(i, j), level2);
  }
  QuotientType qt = quotient_type_mod(mapped, image_gens, level2);
  std::vector<Int> fs(qt.factors.begin(), qt.factors.end());
  out.group = fs.empty() ? FinAbGroup{} : canonicalize(FinAbGroup{fs});
  Int tuples = bar_tuple_count(n, degree);
  Int gd = 1;
  bool small = true;
  for (int i = 0; i < degree && small; ++i) {
    gd *= n;
    small = gd <= kRepresentativeCap;
  }
  if (small) {
    for (int k = 0; k < qt.gen_combos.cols(); ++k) {
      IntVec v = mapped * qt.gen_combos.col(k);
      std::vector<IntVec> table;
      for (Int t = 0; t < tuples; ++t) {
        IntVec e(1);
        e(0) = mod_pos(v(t), level2);
        table.push_back(e);
      }
      out.representatives.push_back(std::move(table));
    }
  }
  return out;
}

}  // namespace

CohomologyGroup cohomology_torus(const FinAbGroup& G, int degree, bool doubling_check,
                                 Resolution res) {
  const Int level = G.order() * G.order();
  CohomologyGroup a = torus_at_level(G, degree, std::max<Int>(level, 1), res);
  if (doubling_check && degree > 0) {
    CohomologyGroup b = torus_at_level(G, degree, 2 * std::max<Int>(level, 1), res);
    if (a.group.factors != b.group.factors)
      throw StabilizationFailure("torus level doubling changed degree " +
                                 std::to_string(degree));
  }
  return a;
}

ModCochain zero_mod_cochain(const GModule& mod, int degree) {
  ModCochain c;
  c.degree = degree;
  c.values.assign(bar_tuple_count(mod.G.order(), degree), IntVec::Zero(mod.M.rank()));
  return c;
}

ModCochain mod_differential(const GModule& mod, const ModCochain& c) {
  const Int n = mod.G.order();
  const int d = c.degree;
  ModCochain out;
  out.degree = d + 1;
  Int tr = bar_tuple_count(n, d + 1);
  for (Int ti = 0; ti < tr; ++ti) {
    std::vector<Int> t = bar_tuple_at(n, d + 1, ti);
    IntVec acc = IntVec::Zero(mod.M.rank());
    {
      std::vector<Int> tail(t.begin() + 1, t.end());
      acc += action_of(mod, element_at(mod.G, t[0])) * c.values[bar_tuple_index(n, tail)];
    }
    for (int i = 0; i < d; ++i) {
      Int merged = add_idx(mod.G, t[i], t[i + 1]);
      if (merged == 0) continue;
      std::vector<Int> u;
      for (int k = 0; k < d + 1; ++k) {
        if (k == i) {
          u.push_back(merged);
          ++k;
          continue;
        }
        u.push_back(t[k]);
      }
      Int sign = (i % 2 == 0) ? -1 : 1;
      acc += sign * c.values[bar_tuple_index(n, u)];
    }
    {
      std::vector<Int> head(t.begin(), t.end() - 1);
      Int sign = (d % 2 == 0) ? -1 : 1;
      acc += sign * c.values[bar_tuple_index(n, head)];
    }
    out.values.push_back(reduce_element(mod.M, acc));
  }
  return out;
}

bool is_cocycle(const GModule& mod, const ModCochain& c) {
  ModCochain d = mod_differential(mod, c);
  for (const IntVec& v : d.values)
    if (!v.isZero()) return false;
  return true;
}

QZCochain qz_differential(const FinAbGroup& G, const QZCochain& c) {
  const Int n = G.order();
  const int d = c.degree;
  QZCochain out;
  out.degree = d + 1;
  Int tr = bar_tuple_count(n, d + 1);
  for (Int ti = 0; ti < tr; ++ti) {
    std::vector<Int> t = bar_tuple_at(n, d + 1, ti);
    QZ acc;
    {
      std::vector<Int> tail(t.begin() + 1, t.end());
      acc += c.values[bar_tuple_index(n, tail)];
    }
    for (int i = 0; i < d; ++i) {
      Int merged = add_idx(G, t[i], t[i + 1]);
      if (merged == 0) continue;
      std::vector<Int> u;
      for (int k = 0; k < d + 1; ++k) {
        if (k == i) {
          u.push_back(merged);
          ++k;
          continue;
        }
        u.push_back(t[k]);
      }
      QZ term = c.values[bar_tuple_index(n, u)];
      acc += (i % 2 == 0) ? -term : term;
    }
    {
      std::vector<Int> head(t.begin(), t.end() - 1);
      QZ term = c.values[bar_tuple_index(n, head)];
      acc += (d % 2 == 0) ? -term : term;
    }
    out.values.push_back(acc);
  }
  return out;
}

ModCochain sample_three_cocycle(const GModule& mod, std::uint64_t seed) {
  const Int n = mod.G.order();
  const int r = mod.M.rank();
  Int L = 1;
  for (Int m : mod.M.factors) L = std::lcm(L, m);
  BarMatrix dd = bar_differential(mod, 3);
  IntMat ds = scale_diag(dd.src_mods, L);
  IntMat gens = ds * howell_kernel(dd.scaled * ds, L);
  std::mt19937_64 rng(seed);
  ModCochain c = zero_mod_cochain(mod, 3);
  if (gens.cols() > 0) {
    IntVec combo(gens.cols());
    for (int j = 0; j < gens.cols(); ++j)
      combo(j) = static_cast<Int>(rng() % static_cast<std::uint64_t>(L));
    IntVec scaled = gens * combo;
    Int tuples = bar_tuple_count(n, 3);
    for (Int t = 0; t < tuples; ++t)
      for (int ci = 0; ci < r; ++ci) {
        Int unit = L / mod.M.factors[ci];
        Int val = mod_pos(scaled(t * r + ci), L);
        if (val % unit != 0) throw std::logic_error("sampled cocycle off the lattice");
        c.values[t](ci) = (val / unit) % mod.M.factors[ci];
      }
  }
  if (!is_cocycle(mod, c)) throw std::logic_error("sampled cochain is not a cocycle");
  return c;
}

CupSquareResult cup_square(const GModule& mod, const ModCochain& alpha,
                           const Bicharacter& pairing) {
  if (alpha.degree != 3) throw NotACocycle("cup_square expects a 3-cochain");
  if (!is_cocycle(mod, alpha)) throw NotACocycle("cup_square input");
  if (!(pairing.left == mod.M) || !(pairing.right == mod.M))
    throw PairingNotInvariant("pairing domain mismatch");
  const int r = mod.M.rank();
  for (const IntMat& a : mod.gen_action)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        IntVec ei = IntVec::Unit(r, i), ej = IntVec::Unit(r, j);
        if (pairing.eval(reduce_element(mod.M, a * ei), reduce_element(mod.M, a * ej)) !=
            pairing.eval(ei, ej))
          throw PairingNotInvariant("pairing moves under the action");
      }

  const Int n = mod.G.order();
  CupSquareResult res;
  res.square.degree = 6;
  Int t6 = bar_tuple_count(n, 6);
  for (Int ti = 0; ti < t6; ++ti) {
    std::vector<Int> t = bar_tuple_at(n, 6, ti);
    Int front = add_idx(mod.G, add_idx(mod.G, t[0], t[1]), t[2]);
    IntVec m1 = alpha.values[bar_tuple_index(n, {t[0], t[1], t[2]})];
    IntVec m2 = alpha.values[bar_tuple_index(n, {t[3], t[4], t[5]})];
    IntVec moved =
        reduce_element(mod.M, action_of(mod, element_at(mod.G, front)) * m2);
    res.square.values.push_back(pairing.eval(m1, moved));
  }

  Int level = n * n;
  for (const QZ& v : res.square.values) level = std::lcm(level, v.den);
  for (int attempt = 0; attempt < 2 && !res.vanishes; ++attempt) {
    level *= n;
    GModule coeff = trivial_module(mod.G, FinAbGroup{{level}});
    BarMatrix d5 = bar_differential(coeff, 5);
    IntVec b(t6);
    for (Int i = 0; i < t6; ++i)
      b(i) = mod_pos(res.square.values[i].num * (level / res.square.values[i].den), level);
    auto sol = solve_mod(d5.scaled, b, level);
    if (sol) {
      QZCochain w;
      w.degree = 5;
      for (Int i = 0; i < sol->size(); ++i) w.values.push_back(QZ((*sol)(i), level));
      QZCochain check = qz_differential(mod.G, w);
      for (Int i = 0; i < t6; ++i)
        if (check.values[i] != res.square.values[i])
          throw std::logic_error("cup witness failed pointwise verification");
      res.vanishes = true;
      res.witness = std::move(w);
      res.solve_level = level;
    }
  }
  if (!res.vanishes) res.solve_level = level;
  res.h6 = cohomology_torus(mod.G, 6).group;
  return res;
}

}  // namespace tycat
