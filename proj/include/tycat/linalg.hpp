#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "tycat/qz.hpp"

namespace tycat {

using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

// g = u*a + v*b
struct ExtGcd { Int g, u, v; };
ExtGcd ext_gcd(Int a, Int b);

Int mod_pos(Int a, Int m);
// inverse of a mod m, requires gcd(a,m)=1
Int mod_inverse(Int a, Int m);
// unit w (gcd(w,N)=1) with w*a = gcd(a,N) mod N
Int unit_to_gcd(Int a, Int N);

// P*A*Q = D with P,Q unimodular, D diagonal, d1 | d2 | ..., entries >= 0
struct SmithResult {
  IntMat D, P, Pinv, Q, Qinv;
};
SmithResult smith_normal_form(IntMat A);

// columns generate {x in Z^cols : A x = 0}
IntMat integer_kernel(const IntMat& A);

// Z^rows / colspan(R): invariant factors > 1 in divisibility order, and for
// each one a preimage column g with [g] generating that cyclic factor
struct Cokernel {
  std::vector<Int> factors;
  IntMat gens;
};
Cokernel cokernel(const IntMat& R);

// column echelon over Z/N closed under annihilators (Howell): the columns
// span the same Z/N-module as A's and membership can be decided by top-down
// elimination against the pivots
struct HowellForm {
  IntMat cols;
  std::vector<int> pivot_row;  // per column, strictly increasing
  Int N;
};
HowellForm howell_echelon(const IntMat& A, Int N);

// residual of v after eliminating against H; zero residual means v in span
IntVec howell_reduce(const HowellForm& H, IntVec v);
// as above but also reports x with H.cols * x = v - residual
IntVec howell_reduce_track(const HowellForm& H, IntVec v, IntVec& coeffs);

// generators of {x in (Z/N)^cols : A x = 0 mod N}
IntMat howell_kernel(const IntMat& A, Int N);

// solve A x = b mod N; returns x if solvable
std::optional<IntVec> solve_mod(const IntMat& A, const IntVec& b, Int N);

// abstract type of (span(U)+span(V))/span(V) inside (Z/N)^n, with preimage
// combinations: factor i is generated by the class of U * gen_combos.col(i)
struct QuotientType {
  std::vector<Int> factors;
  IntMat gen_combos;
};
QuotientType quotient_type_mod(const IntMat& U, const IntMat& V, Int N);

}  // namespace tycat
