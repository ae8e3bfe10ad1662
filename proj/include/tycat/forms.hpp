#pragma once

#include <complex>
#include <vector>

#include "tycat/abelian.hpp"

namespace tycat {

// bilinear pairing on generators, extended bilinearly; order of each entry
// divides gcd of the two factor orders
struct Bicharacter {
  FinAbGroup left, right;
  std::vector<std::vector<QZ>> values;  // values[i][j] = b(e_i, f_j)

  QZ eval(const IntVec& x, const IntVec& y) const;
  bool well_formed() const;
  bool is_symmetric() const;
};

Bicharacter zero_bicharacter(const FinAbGroup& left, const FinAbGroup& right);

// q(x) = sum x_i^2 q(e_i) + sum_{i<j} x_i x_j b(e_i,e_j); the generator value
// has order dividing n_i*gcd(2,n_i), the off-diagonal order divides gcd(n_i,n_j)
struct QuadraticForm {
  FinAbGroup group;
  std::vector<QZ> gen_values;
  std::vector<QZ> offdiag;  // row-major upper triangle, i < j

  QZ eval(const IntVec& x) const;
  bool well_formed() const;
  const QZ& off(int i, int j) const;
  QZ& off(int i, int j);
  bool operator==(const QuadraticForm&) const = default;
};

QuadraticForm zero_form(const FinAbGroup& g);
int offdiag_count(int rank);
int offdiag_index(int rank, int i, int j);

Bicharacter bil_of_quad(const QuadraticForm& q);

// mixed pairing Bil(q)((a,0),(0,b)) for a form on an explicit product A+A
Bicharacter bil12(const QuadraticForm& q, const FinAbGroup& A);

Subgroup radical(const Bicharacter& b);        // requires left == right
bool is_nondegenerate(const Bicharacter& b);
Subgroup orthogonal_complement(const Bicharacter& b, const Subgroup& H);

// forms transported to a subgroup presented on its own basis
QuadraticForm restrict_form(const QuadraticForm& q, const SubgroupBasis& sb);
Bicharacter restrict_bicharacter(const Bicharacter& b, const SubgroupBasis& sb);

std::complex<double> gauss_sum(const QuadraticForm& q);

std::vector<QuadraticForm> enumerate_quadratic_forms(const FinAbGroup& B, Int cap = kDefaultGroupCap);
Int quad_form_count(const FinAbGroup& B);  // closed-form count

struct AlternatingForm {
  Bicharacter b;  // b(g,g) = 0 for all g, hence antisymmetric
};
AlternatingForm make_alternating(const Bicharacter& b);

std::vector<AlternatingForm> enumerate_alternating_forms(const FinAbGroup& B, Int cap = kDefaultGroupCap);
FinAbGroup two_torsion_characters(const FinAbGroup& B);
// |H^6(B[3]; C*)| = |B_2^| * |Lambda^2 B^|
Int h6_b3_order(const FinAbGroup& B);
// H^5(B[3]; C*) = Hom(B/2B, C*)
FinAbGroup em_h5_b3(const FinAbGroup& B);

Bicharacter alt_of_bicharacter(const Bicharacter& s);
// pairing on A+A^ with value ((a1,l1),(a2,l2)) -> l1(a2)
Bicharacter canonical_sigma(const FinAbGroup& A);

}  // namespace tycat
