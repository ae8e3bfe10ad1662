#include "tycat/forms.hpp"

#include <cmath>
#include <numbers>

namespace tycat {

QZ Bicharacter::eval(const IntVec& x, const IntVec& y) const {
  QZ v;
  for (int i = 0; i < left.rank(); ++i) {
    if (x(i) == 0) continue;
    for (int j = 0; j < right.rank(); ++j) {
      if (y(j) == 0) continue;
      v += (x(i) * y(j)) * values[i][j];
    }
  }
  return v;
}

bool Bicharacter::well_formed() const {
  if (static_cast<int>(values.size()) != left.rank()) return false;
  for (int i = 0; i < left.rank(); ++i) {
    if (static_cast<int>(values[i].size()) != right.rank()) return false;
    for (int j = 0; j < right.rank(); ++j)
      if (std::gcd(left.factors[i], right.factors[j]) % values[i][j].order() != 0) return false;
  }
  return true;
}

bool Bicharacter::is_symmetric() const {
  if (!(left == right)) return false;
  for (int i = 0; i < left.rank(); ++i)
    for (int j = 0; j < right.rank(); ++j)
      if (values[i][j] != values[j][i]) return false;
  return true;
}

Bicharacter zero_bicharacter(const FinAbGroup& left, const FinAbGroup& right) {
  return {left, right,
          std::vector<std::vector<QZ>>(left.rank(), std::vector<QZ>(right.rank()))};
}

int offdiag_count(int rank) { return rank * (rank - 1) / 2; }

int offdiag_index(int rank, int i, int j) {
  // row-major over the strict upper triangle
  return i * rank - i * (i + 1) / 2 + (j - i - 1);
}

QZ QuadraticForm::eval(const IntVec& x) const {
  QZ v;
  const int n = group.rank();
  for (int i = 0; i < n; ++i) {
    if (x(i) == 0) continue;
    v += (x(i) * x(i)) * gen_values[i];
    for (int j = i + 1; j < n; ++j)
      if (x(j) != 0) v += (x(i) * x(j)) * off(i, j);
  }
  return v;
}

bool QuadraticForm::well_formed() const {
  const int n = group.rank();
  if (static_cast<int>(gen_values.size()) != n) return false;
  if (static_cast<int>(offdiag.size()) != offdiag_count(n)) return false;
  for (int i = 0; i < n; ++i) {
    Int ni = group.factors[i];
    if ((ni * std::gcd<Int>(2, ni)) % gen_values[i].order() != 0) return false;
    for (int j = i + 1; j < n; ++j)
      if (std::gcd(ni, group.factors[j]) % off(i, j).order() != 0) return false;
  }
  return true;
}

const QZ& QuadraticForm::off(int i, int j) const {
  return offdiag[offdiag_index(group.rank(), i, j)];
}
QZ& QuadraticForm::off(int i, int j) {
  return offdiag[offdiag_index(group.rank(), i, j)];
}

QuadraticForm zero_form(const FinAbGroup& g) {
  return {g, std::vector<QZ>(g.rank()), std::vector<QZ>(offdiag_count(g.rank()))};
}

Bicharacter bil_of_quad(const QuadraticForm& q) {
  const int n = q.group.rank();
  Bicharacter b = zero_bicharacter(q.group, q.group);
  for (int i = 0; i < n; ++i) {
    b.values[i][i] = Int(2) * q.gen_values[i];
    for (int j = i + 1; j < n; ++j) b.values[i][j] = b.values[j][i] = q.off(i, j);
  }
  return b;
}

Bicharacter bil12(const QuadraticForm& q, const FinAbGroup& A) {
  FinAbGroup prod = direct_sum(A, A);
  if (!(q.group == prod))
    throw ContextMismatch("bil12: form does not live on the declared product");
  const int r = A.rank();
  Bicharacter b = zero_bicharacter(A, A);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      b.values[i][j] = q.off(i, r + j);  // i < r <= r+j always
  return b;
}

Subgroup radical(const Bicharacter& b) {
  if (!(b.left == b.right)) throw ContextMismatch("radical of a mixed pairing");
  const FinAbGroup& g = b.left;
  std::vector<Int> idxs;
  for (Int i = 0; i < g.order(); ++i) {
    IntVec x = element_at(g, i);
    bool central = true;
    for (int j = 0; j < g.rank() && central; ++j)
      central = b.eval(x, IntVec::Unit(g.rank(), j)).is_zero();
    if (central) idxs.push_back(i);
  }
  return subgroup_from_elements(g, idxs);
}

bool is_nondegenerate(const Bicharacter& b) { return radical(b).order() == 1; }

Subgroup orthogonal_complement(const Bicharacter& b, const Subgroup& H) {
  if (!(b.left == b.right) || !(H.parent == b.left))
    throw ContextMismatch("orthogonal complement");
  const FinAbGroup& g = b.left;
  std::vector<Int> idxs;
  for (Int i = 0; i < g.order(); ++i) {
    IntVec x = element_at(g, i);
    bool orth = true;
    for (int j = 0; j < H.generators.cols() && orth; ++j)
      orth = b.eval(x, H.generators.col(j)).is_zero();
    if (orth) idxs.push_back(i);
  }
  return subgroup_from_elements(g, idxs);
}

QuadraticForm restrict_form(const QuadraticForm& q, const SubgroupBasis& sb) {
  QuadraticForm r = zero_form(sb.group);
  Bicharacter b = bil_of_quad(q);
  for (int i = 0; i < sb.group.rank(); ++i) {
    r.gen_values[i] = q.eval(sb.basis.col(i));
    for (int j = i + 1; j < sb.group.rank(); ++j)
      r.off(i, j) = b.eval(sb.basis.col(i), sb.basis.col(j));
  }
  if (!r.well_formed()) throw std::logic_error("restrict_form: restriction is not well formed");
  return r;
}

Bicharacter restrict_bicharacter(const Bicharacter& b, const SubgroupBasis& sb) {
  Bicharacter r = zero_bicharacter(sb.group, sb.group);
  for (int i = 0; i < sb.group.rank(); ++i)
    for (int j = 0; j < sb.group.rank(); ++j)
      r.values[i][j] = b.eval(sb.basis.col(i), sb.basis.col(j));
  return r;
}

std::complex<double> gauss_sum(const QuadraticForm& q) {
  std::complex<double> sum = 0.0;
  const Int n = q.group.order();
  for (Int i = 0; i < n; ++i) {
    QZ t = q.eval(element_at(q.group, i));
    double theta = 2.0 * std::numbers::pi * static_cast<double>(t.num) / static_cast<double>(t.den);
    sum += std::complex<double>(std::cos(theta), std::sin(theta));
  }
  return sum / std::sqrt(static_cast<double>(n));
}

Int quad_form_count(const FinAbGroup& B) {
  Int c = 1;
  for (int i = 0; i < B.rank(); ++i) {
    c *= B.factors[i] * std::gcd<Int>(2, B.factors[i]);
    for (int j = i + 1; j < B.rank(); ++j) c *= std::gcd(B.factors[i], B.factors[j]);
  }
  return c;
}

std::vector<QuadraticForm> enumerate_quadratic_forms(const FinAbGroup& B, Int cap) {
  if (B.order() > cap) throw CapExceeded("enumerate_quadratic_forms: order " + std::to_string(B.order()));
  const int n = B.rank();
  std::vector<Int> slot_mod;  // number of choices per slot, gen slots then offdiag
  for (int i = 0; i < n; ++i) slot_mod.push_back(B.factors[i] * std::gcd<Int>(2, B.factors[i]));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slot_mod.push_back(std::gcd(B.factors[i], B.factors[j]));

  std::vector<QuadraticForm> out;
  std::vector<Int> pick(slot_mod.size(), 0);
  for (;;) {
    QuadraticForm q = zero_form(B);
    for (int i = 0; i < n; ++i) q.gen_values[i] = QZ(pick[i], slot_mod[i]);
    int s = n;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++s) q.off(i, j) = QZ(pick[s], slot_mod[s]);
    out.push_back(std::move(q));
    int k = static_cast<int>(slot_mod.size()) - 1;
    for (; k >= 0; --k) {
      if (++pick[k] < slot_mod[k]) break;
      pick[k] = 0;
    }
    if (k < 0) break;
  }
  return out;
}

AlternatingForm make_alternating(const Bicharacter& b) {
  if (!(b.left == b.right)) throw ContextMismatch("alternating form on a mixed pairing");
  for (int i = 0; i < b.left.rank(); ++i) {
    if (!b.values[i][i].is_zero()) throw ParseError("not alternating on a generator");
    for (int j = i + 1; j < b.left.rank(); ++j)
      if (b.values[i][j] + b.values[j][i] != QZ())
        throw ParseError("not antisymmetric on a generator pair");
  }
  return {b};
}

std::vector<AlternatingForm> enumerate_alternating_forms(const FinAbGroup& B, Int cap) {
  if (B.order() > cap) throw CapExceeded("enumerate_alternating_forms");
  const int n = B.rank();
  std::vector<Int> slot_mod;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slot_mod.push_back(std::gcd(B.factors[i], B.factors[j]));
  std::vector<AlternatingForm> out;
  std::vector<Int> pick(slot_mod.size(), 0);
  for (;;) {
    Bicharacter b = zero_bicharacter(B, B);
    int s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++s) {
        b.values[i][j] = QZ(pick[s], slot_mod[s]);
        b.values[j][i] = -b.values[i][j];
      }
    out.push_back({std::move(b)});
    int k = static_cast<int>(slot_mod.size()) - 1;
    for (; k >= 0; --k) {
      if (++pick[k] < slot_mod[k]) break;
      pick[k] = 0;
    }
    if (k < 0) break;
  }
  return out;
}

FinAbGroup two_torsion_characters(const FinAbGroup& B) {
  std::vector<Int> fs;
  for (Int f : B.factors)
    if (f % 2 == 0) fs.push_back(2);
  return canonicalize(FinAbGroup{fs});
}

Int h6_b3_order(const FinAbGroup& B) {
  Int lam = 1;
  for (int i = 0; i < B.rank(); ++i)
    for (int j = i + 1; j < B.rank(); ++j) lam *= std::gcd(B.factors[i], B.factors[j]);
  return two_torsion_characters(B).order() * lam;
}

FinAbGroup em_h5_b3(const FinAbGroup& B) {
  // Hom(B/2B, C*) has one Z/2 per even factor
  return two_torsion_characters(B);
}

Bicharacter alt_of_bicharacter(const Bicharacter& s) {
  if (!(s.left == s.right)) throw ContextMismatch("alt of a mixed pairing");
  Bicharacter a = zero_bicharacter(s.left, s.left);
  for (int i = 0; i < s.left.rank(); ++i)
    for (int j = 0; j < s.left.rank(); ++j)
      a.values[i][j] = s.values[i][j] - s.values[j][i];
  return a;
}

Bicharacter canonical_sigma(const FinAbGroup& A) {
  FinAbGroup B = direct_sum(A, dual_group(A));
  Bicharacter s = zero_bicharacter(B, B);
  const int r = A.rank();
  // ((a1,l1),(a2,l2)) -> l1(a2): dual generator i against group generator i
  for (int i = 0; i < r; ++i) s.values[r + i][i] = QZ(1, A.factors[i]);
  return s;
}

}  // namespace tycat
