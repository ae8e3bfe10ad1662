#include "tycat/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

namespace tycat {

Int FinAbGroup::exponent() const {
  Int e = 1;
  for (Int f : factors) e = std::lcm(e, f);
  return e;
}

FinAbGroup canonicalize(const FinAbGroup& g) {
  // split each factor into prime powers, then stack per prime
  std::map<Int, std::vector<Int>> by_prime;  // prime -> exponents, descending later
  for (Int f : g.factors) {
    if (f < 2) throw ParseError("group factor < 2");
    Int rem = f;
    for (Int p = 2; p * p <= rem; ++p) {
      if (rem % p) continue;
      Int e = 0;
      while (rem % p == 0) { rem /= p; ++e; }
      by_prime[p].push_back(e);
    }
    if (rem > 1) by_prime[rem].push_back(1);
  }
  size_t count = 0;
  for (auto& [p, es] : by_prime) {
    std::sort(es.begin(), es.end(), std::greater<Int>());
    count = std::max(count, es.size());
  }
  std::vector<Int> inv(count, 1);
  for (auto& [p, es] : by_prime)
    for (size_t i = 0; i < es.size(); ++i) {
      Int pe = 1;
      for (Int k = 0; k < es[i]; ++k) pe *= p;
      inv[i] *= pe;  // inv[0] = largest
    }
  std::reverse(inv.begin(), inv.end());
  return FinAbGroup{inv};
}

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
  FinAbGroup r = a;
  r.factors.insert(r.factors.end(), b.factors.begin(), b.factors.end());
  return r;
}

IntVec reduce_element(const FinAbGroup& g, IntVec x) {
  for (int i = 0; i < g.rank(); ++i) x(i) = mod_pos(x(i), g.factors[i]);
  return x;
}

IntVec zero_element(const FinAbGroup& g) { return IntVec::Zero(g.rank()); }

Int element_index(const FinAbGroup& g, const IntVec& x) {
  Int idx = 0;
  for (int i = 0; i < g.rank(); ++i) idx = idx * g.factors[i] + mod_pos(x(i), g.factors[i]);
  return idx;
}

IntVec element_at(const FinAbGroup& g, Int idx) {
  IntVec x(g.rank());
  for (int i = g.rank() - 1; i >= 0; --i) {
    x(i) = idx % g.factors[i];
    idx /= g.factors[i];
  }
  return x;
}

Int element_order(const FinAbGroup& g, const IntVec& x) {
  Int o = 1;
  for (int i = 0; i < g.rank(); ++i) {
    Int xi = mod_pos(x(i), g.factors[i]);
    o = std::lcm(o, g.factors[i] / std::gcd(g.factors[i], xi));
  }
  return o;
}

bool GroupHom::well_defined() const {
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank()) return false;
  for (int j = 0; j < source.rank(); ++j) {
    IntVec v = source.factors[j] * matrix.col(j);
    for (int i = 0; i < target.rank(); ++i)
      if (mod_pos(v(i), target.factors[i]) != 0) return false;
  }
  return true;
}

GroupHom identity_hom(const FinAbGroup& g) {
  return {g, g, IntMat::Identity(g.rank(), g.rank())};
}

GroupHom zero_hom(const FinAbGroup& src, const FinAbGroup& dst) {
  return {src, dst, IntMat::Zero(dst.rank(), src.rank())};
}

GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
  if (!(outer.source == inner.target)) throw ContextMismatch("hom composition");
  GroupHom h{inner.source, outer.target, outer.matrix * inner.matrix};
  for (int j = 0; j < h.matrix.cols(); ++j)
    h.matrix.col(j) = reduce_element(h.target, h.matrix.col(j));
  return h;
}

bool hom_equal(const GroupHom& a, const GroupHom& b) {
  if (!(a.source == b.source) || !(a.target == b.target)) return false;
  for (int j = 0; j < a.matrix.cols(); ++j)
    if (a.apply(IntVec::Unit(a.source.rank(), j)) != b.apply(IntVec::Unit(b.source.rank(), j)))
      return false;
  return true;
}

bool Subgroup::contains(const IntVec& x) const {
  Int idx = element_index(parent, reduce_element(parent, x));
  return std::binary_search(elements.begin(), elements.end(), idx);
}

namespace {

// closure of columns under addition, as sorted element indices
std::vector<Int> span_indices(const FinAbGroup& g, const IntMat& gens) {
  std::set<Int> seen{element_index(g, zero_element(g))};
  for (int j = 0; j < gens.cols(); ++j) {
    IntVec gen = reduce_element(g, gens.col(j));
    Int ord = element_order(g, gen);
    std::set<Int> grown;
    for (Int s : seen) {
      IntVec base = element_at(g, s);
      IntVec cur = base;
      for (Int k = 0; k < ord; ++k) {
        grown.insert(element_index(g, cur));
        cur = reduce_element(g, cur + gen);
      }
    }
    seen = std::move(grown);
  }
  return {seen.begin(), seen.end()};
}

// greedy minimal generating columns for a sorted element-index set
IntMat greedy_generators(const FinAbGroup& g, const std::vector<Int>& elements) {
  std::vector<IntVec> gens;
  std::vector<Int> span{element_index(g, zero_element(g))};
  for (Int idx : elements) {
    if (std::binary_search(span.begin(), span.end(), idx)) continue;
    gens.push_back(element_at(g, idx));
    IntMat m(g.rank(), gens.size());
    for (size_t k = 0; k < gens.size(); ++k) m.col(k) = gens[k];
    span = span_indices(g, m);
    if (span.size() == elements.size()) break;
  }
  IntMat m(g.rank(), gens.size());
  for (size_t k = 0; k < gens.size(); ++k) m.col(k) = gens[k];
  return m;
}

}  // namespace

Subgroup trivial_subgroup(const FinAbGroup& g) {
  return {g, {element_index(g, zero_element(g))}, IntMat(g.rank(), 0)};
}

Subgroup full_subgroup(const FinAbGroup& g) {
  std::vector<Int> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return {g, all, greedy_generators(g, all)};
}

Subgroup subgroup_from_generators(const FinAbGroup& g, const IntMat& gens) {
  auto elems = span_indices(g, gens);
  return {g, elems, greedy_generators(g, elems)};
}

Subgroup subgroup_from_elements(const FinAbGroup& g, std::vector<Int> idxs) {
  std::sort(idxs.begin(), idxs.end());
  idxs.erase(std::unique(idxs.begin(), idxs.end()), idxs.end());
  for (Int a : idxs)
    for (Int b : idxs) {
      IntVec sum = reduce_element(g, element_at(g, a) + element_at(g, b));
      if (!std::binary_search(idxs.begin(), idxs.end(), element_index(g, sum)))
        throw ParseError("element set is not closed under addition");
    }
  if (!std::binary_search(idxs.begin(), idxs.end(), element_index(g, zero_element(g))))
    throw ParseError("element set lacks the identity");
  return {g, idxs, greedy_generators(g, idxs)};
}

Subgroup kernel(const GroupHom& h, Int cap) {
  if (h.source.order() > cap) throw CapExceeded("kernel: source order " + std::to_string(h.source.order()));
  std::vector<Int> idxs;
  for (Int i = 0; i < h.source.order(); ++i) {
    IntVec x = element_at(h.source, i);
    if (h.apply(x).isZero()) idxs.push_back(i);
  }
  return {h.source, idxs, greedy_generators(h.source, idxs)};
}

Subgroup image(const GroupHom& h, Int cap) {
  if (h.source.order() > cap) throw CapExceeded("image: source order " + std::to_string(h.source.order()));
  std::set<Int> idxs;
  for (Int i = 0; i < h.source.order(); ++i)
    idxs.insert(element_index(h.target, h.apply(element_at(h.source, i))));
  std::vector<Int> v(idxs.begin(), idxs.end());
  return {h.target, v, greedy_generators(h.target, v)};
}

QuotientData quotient(const FinAbGroup& parent, const Subgroup& sub) {
  if (!(sub.parent == parent)) throw ContextMismatch("quotient: subgroup of a different group");
  const int n = parent.rank();
  IntMat R(n, sub.generators.cols() + n);
  R.leftCols(sub.generators.cols()) = sub.generators;
  for (int i = 0; i < n; ++i) R.col(sub.generators.cols() + i) = parent.factors[i] * IntVec::Unit(n, i);
  SmithResult s = smith_normal_form(R);

  std::vector<Int> factors;
  std::vector<int> keep;
  const int t_max = static_cast<int>(std::min(R.rows(), R.cols()));
  for (int i = 0; i < n; ++i) {
    Int d = i < t_max ? s.D(i, i) : 0;
    if (d == 0) throw std::logic_error("quotient: relation lattice not full rank");
    if (d != 1) { factors.push_back(d); keep.push_back(i); }
  }

  QuotientData q;
  q.group = FinAbGroup{factors};
  IntMat proj(keep.size(), n);
  for (size_t k = 0; k < keep.size(); ++k) proj.row(k) = s.P.row(keep[k]);
  q.projection = GroupHom{parent, q.group, proj};
  for (int j = 0; j < q.projection.matrix.cols(); ++j)
    q.projection.matrix.col(j) = reduce_element(q.group, q.projection.matrix.col(j));

  q.section.resize(n, keep.size());
  for (size_t k = 0; k < keep.size(); ++k) {
    IntVec lift = reduce_element(parent, s.Pinv.col(keep[k]));
    q.section.col(k) = coset_representative(parent, sub, lift);
  }
  return q;
}

IntVec coset_representative(const FinAbGroup& parent, const Subgroup& sub, const IntVec& x) {
  IntVec best = reduce_element(parent, x);
  for (Int idx : sub.elements) {
    IntVec cand = reduce_element(parent, x + element_at(parent, idx));
    for (int i = 0; i < parent.rank(); ++i) {
      if (cand(i) < best(i)) { best = cand; break; }
      if (cand(i) > best(i)) break;
    }
  }
  return best;
}

SubgroupBasis subgroup_basis(const Subgroup& sub) {
  const FinAbGroup& parent = sub.parent;
  const int n = parent.rank();
  const int gcnt = static_cast<int>(sub.generators.cols());
  if (gcnt == 0) {
    SubgroupBasis b;
    b.group = FinAbGroup{};
    b.basis = IntMat(n, 0);
    b.inclusion = GroupHom{b.group, parent, IntMat(n, 0)};
    return b;
  }
  // relations between the generators inside the parent
  IntMat M(n, gcnt + n);
  M.leftCols(gcnt) = sub.generators;
  for (int i = 0; i < n; ++i) M.col(gcnt + i) = parent.factors[i] * IntVec::Unit(n, i);
  IntMat K = integer_kernel(M);
  IntMat R = K.topRows(gcnt);
  Cokernel c = cokernel(R);
  SubgroupBasis b;
  b.group = FinAbGroup{c.factors};
  b.basis.resize(n, c.factors.size());
  for (int k = 0; k < b.basis.cols(); ++k)
    b.basis.col(k) = reduce_element(parent, sub.generators * c.gens.col(k));
  b.inclusion = GroupHom{b.group, parent, b.basis};
  if (b.group.order() != sub.order()) throw std::logic_error("subgroup_basis: order mismatch");
  return b;
}

std::vector<Subgroup> enumerate_subgroups(const FinAbGroup& g,
                                          const std::optional<Subgroup>& only_inside, Int cap) {
  if (g.order() > cap) throw CapExceeded("enumerate_subgroups: order " + std::to_string(g.order()));
  const std::vector<Int>* universe;
  std::vector<Int> all;
  if (only_inside) {
    universe = &only_inside->elements;
  } else {
    all.resize(g.order());
    std::iota(all.begin(), all.end(), 0);
    universe = &all;
  }
  std::map<std::vector<Int>, IntMat> known;  // element set -> generators
  Subgroup triv = trivial_subgroup(g);
  known[triv.elements] = triv.generators;
  std::vector<std::vector<Int>> frontier{triv.elements};
  while (!frontier.empty()) {
    std::vector<std::vector<Int>> next;
    for (const auto& elems : frontier) {
      IntMat gens = greedy_generators(g, elems);
      for (Int idx : *universe) {
        if (std::binary_search(elems.begin(), elems.end(), idx)) continue;
        IntMat grown(g.rank(), gens.cols() + 1);
        grown.leftCols(gens.cols()) = gens;
        grown.col(gens.cols()) = element_at(g, idx);
        auto span = span_indices(g, grown);
        if (known.find(span) == known.end()) {
          known[span] = greedy_generators(g, span);
          next.push_back(std::move(span));
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  out.reserve(known.size());
  for (auto& [elems, gens] : known) out.push_back({g, elems, gens});
  std::stable_sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return out;
}

std::vector<GroupHom> automorphisms(const FinAbGroup& g, Int cap) {
  if (g.order() > cap) throw CapExceeded("automorphisms: order " + std::to_string(g.order()));
  const int n = g.rank();
  if (n == 0) return {identity_hom(g)};
  // candidate images per generator: elements annihilated by the factor
  std::vector<std::vector<IntVec>> cands(n);
  for (int j = 0; j < n; ++j)
    for (Int i = 0; i < g.order(); ++i) {
      IntVec x = element_at(g, i);
      if (reduce_element(g, g.factors[j] * x).isZero()) cands[j].push_back(x);
    }
  std::vector<GroupHom> out;
  IntMat m(n, n);
  std::vector<size_t> pick(n, 0);
  for (;;) {
    for (int j = 0; j < n; ++j) m.col(j) = cands[j][pick[j]];
    GroupHom h{g, g, m};
    std::unordered_set<Int> img;
    for (Int i = 0; i < g.order(); ++i) img.insert(element_index(g, h.apply(element_at(g, i))));
    if (static_cast<Int>(img.size()) == g.order()) out.push_back(h);
    int j = n - 1;
    for (; j >= 0; --j) {
      if (++pick[j] < cands[j].size()) break;
      pick[j] = 0;
    }
    if (j < 0) break;
  }
  return out;
}

FinAbGroup dual_group(const FinAbGroup& g) { return g; }

QZ ev_pairing(const FinAbGroup& g, const IntVec& a, const IntVec& chi) {
  QZ v;
  for (int i = 0; i < g.rank(); ++i) v += QZ(a(i) * chi(i), g.factors[i]);
  return v;
}

FinAbGroup parse_group(const std::string& s) {
  std::string t;
  for (char c : s) if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "Z1" || t == "1" || t == "0" || t == "trivial") return FinAbGroup{};
  FinAbGroup g;
  size_t pos = 0;
  while (pos < t.size()) {
    size_t plus = t.find('+', pos);
    std::string tok = t.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
    if (tok.size() < 2 || (tok[0] != 'Z' && tok[0] != 'z'))
      throw ParseError("bad group literal: " + s);
    std::string digits = tok.substr(tok[1] == '/' ? 2 : 1);
    for (char c : digits)
      if (!isdigit(static_cast<unsigned char>(c))) throw ParseError("bad group literal: " + s);
    Int f = std::stoll(digits);
    if (f < 2) throw ParseError("group factor must be >= 2: " + s);
    g.factors.push_back(f);
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  if (g.factors.empty()) throw ParseError("bad group literal: " + s);
  return g;
}

std::string group_str(const FinAbGroup& g) {
  if (g.factors.empty()) return "Z1";
  std::string s;
  for (size_t i = 0; i < g.factors.size(); ++i) {
    if (i) s += "+";
    s += "Z" + std::to_string(g.factors[i]);
  }
  return s;
}

IntVec parse_element(const FinAbGroup& g, const std::string& s) {
  std::string t;
  for (char c : s) if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw ParseError("bad element literal: " + s);
  t = t.substr(1, t.size() - 2);
  std::vector<Int> vals;
  size_t pos = 0;
  if (!t.empty()) {
    while (true) {
      size_t comma = t.find(',', pos);
      std::string tok = t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        vals.push_back(std::stoll(tok));
      } catch (const std::exception&) {
        throw ParseError("bad element literal: " + s);
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (static_cast<int>(vals.size()) != g.rank())
    throw ParseError("element rank mismatch: " + s + " in " + group_str(g));
  IntVec x(g.rank());
  for (int i = 0; i < g.rank(); ++i) x(i) = vals[i];
  return reduce_element(g, x);
}

std::string element_str(const IntVec& x) {
  std::string s = "(";
  for (int i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x(i));
  }
  return s + ")";
}

}  // namespace tycat
