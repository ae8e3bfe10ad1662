#include "tycat/linalg.hpp"

#include <cstdlib>
#include <stdexcept>

namespace tycat {

ExtGcd ext_gcd(Int a, Int b) {
  if (b == 0) return a >= 0 ? ExtGcd{a, 1, 0} : ExtGcd{-a, -1, 0};
  Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1; r0 = r1; r1 = r2;
    Int s2 = s0 - q * s1; s0 = s1; s1 = s2;
    Int t2 = t0 - q * t1; t0 = t1; t1 = t2;
  }
  if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
  return {r0, s0, t0};
}

Int mod_pos(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Int mod_inverse(Int a, Int m) {
  auto e = ext_gcd(mod_pos(a, m), m);
  if (e.g != 1) throw std::domain_error("mod_inverse: not a unit");
  return mod_pos(e.u, m);
}

Int unit_to_gcd(Int a, Int N) {
  a = mod_pos(a, N);
  Int d = std::gcd(a, N);
  if (d == N) return 1;  // a = 0 mod N
  Int ap = a / d, Np = N / d;
  Int w0 = mod_inverse(ap % Np, Np);
  // lift to a unit mod N
  for (Int w = w0; ; w += Np) {
    if (std::gcd(mod_pos(w, N), N) == 1) return mod_pos(w, N);
  }
}

namespace {

void swap_rows(IntMat& A, int i, int j) { A.row(i).swap(A.row(j)); }
void swap_cols(IntMat& A, int i, int j) { A.col(i).swap(A.col(j)); }

}  // namespace

SmithResult smith_normal_form(IntMat A) {
  const int n = static_cast<int>(A.rows());
  const int m = static_cast<int>(A.cols());
  SmithResult r;
  r.P = IntMat::Identity(n, n);
  r.Pinv = IntMat::Identity(n, n);
  r.Q = IntMat::Identity(m, m);
  r.Qinv = IntMat::Identity(m, m);

  auto row_add = [&](int dst, int src, Int k) {  // row dst += k * row src
    A.row(dst) += k * A.row(src);
    r.P.row(dst) += k * r.P.row(src);
    r.Pinv.col(src) -= k * r.Pinv.col(dst);
  };
  auto col_add = [&](int dst, int src, Int k) {
    A.col(dst) += k * A.col(src);
    r.Q.col(dst) += k * r.Q.col(src);
    r.Qinv.row(src) -= k * r.Qinv.row(dst);
  };
  auto row_swap = [&](int i, int j) {
    if (i == j) return;
    swap_rows(A, i, j); swap_rows(r.P, i, j); swap_cols(r.Pinv, i, j);
  };
  auto col_swap = [&](int i, int j) {
    if (i == j) return;
    swap_cols(A, i, j); swap_cols(r.Q, i, j); swap_rows(r.Qinv, i, j);
  };
  auto row_neg = [&](int i) {
    A.row(i) = -A.row(i); r.P.row(i) = -r.P.row(i); r.Pinv.col(i) = -r.Pinv.col(i);
  };

  const int t_max = std::min(n, m);
  for (int t = 0; t < t_max; ++t) {
    for (;;) {
      // smallest nonzero entry in the trailing block to (t,t)
      int pi = -1, pj = -1;
      Int best = 0;
      for (int i = t; i < n; ++i)
        for (int j = t; j < m; ++j) {
          Int v = std::abs(A(i, j));
          if (v != 0 && (pi < 0 || v < best)) { best = v; pi = i; pj = j; }
        }
      if (pi < 0) { pi = -2; break; }
      row_swap(t, pi);
      col_swap(t, pj);
      bool clean = true;
      for (int i = t + 1; i < n; ++i) {
        if (A(i, t) == 0) continue;
        Int q = A(i, t) / A(t, t);
        row_add(i, t, -q);
        if (A(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < m; ++j) {
        if (A(t, j) == 0) continue;
        Int q = A(t, j) / A(t, t);
        col_add(j, t, -q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // pivot must divide the rest of the block
      bool divides = true;
      for (int i = t + 1; i < n && divides; ++i)
        for (int j = t + 1; j < m; ++j)
          if (A(i, j) % A(t, t) != 0) { row_add(t, i, 1); divides = false; break; }
      if (divides) break;
    }
    if (A(t, t) < 0) row_neg(t);
  }
  r.D = A;
  return r;
}

IntMat integer_kernel(const IntMat& A) {
  SmithResult s = smith_normal_form(A);
  const int m = static_cast<int>(A.cols());
  const int t_max = static_cast<int>(std::min(A.rows(), A.cols()));
  std::vector<int> keep;
  for (int j = 0; j < m; ++j) {
    Int d = j < t_max ? s.D(j, j) : 0;
    if (d == 0) keep.push_back(j);
  }
  IntMat K(m, keep.size());
  for (size_t k = 0; k < keep.size(); ++k) K.col(k) = s.Q.col(keep[k]);
  return K;
}

Cokernel cokernel(const IntMat& R) {
  SmithResult s = smith_normal_form(R);
  const int u = static_cast<int>(R.rows());
  const int t_max = static_cast<int>(std::min(R.rows(), R.cols()));
  Cokernel c;
  std::vector<int> keep;
  for (int i = 0; i < u; ++i) {
    Int d = i < t_max ? s.D(i, i) : 0;
    if (d == 0) throw std::domain_error("cokernel: quotient is infinite");
    if (d != 1) { c.factors.push_back(d); keep.push_back(i); }
  }
  c.gens.resize(u, keep.size());
  for (size_t k = 0; k < keep.size(); ++k) c.gens.col(k) = s.Pinv.col(keep[k]);
  return c;
}

HowellForm howell_echelon(const IntMat& A, Int N) {
  const int n = static_cast<int>(A.rows());
  HowellForm H;
  H.N = N;
  std::vector<IntVec> work;
  for (int j = 0; j < A.cols(); ++j) {
    IntVec c = A.col(j).unaryExpr([N](Int x) { return mod_pos(x, N); });
    if (!c.isZero()) work.push_back(std::move(c));
  }
  std::vector<IntVec> pivots;
  std::vector<int> pivot_rows;
  for (int rrow = 0; rrow < n && !work.empty(); ++rrow) {
    std::vector<IntVec> next;
    IntVec pivot;
    bool have = false;
    for (auto& c : work) {
      if (c(rrow) == 0) { next.push_back(std::move(c)); continue; }
      if (!have) { pivot = std::move(c); have = true; continue; }
      ExtGcd e = ext_gcd(pivot(rrow), c(rrow));
      Int pq = pivot(rrow) / e.g, cq = c(rrow) / e.g;
      IntVec np = (e.u * pivot + e.v * c).unaryExpr([N](Int x) { return mod_pos(x, N); });
      IntVec el = (cq * pivot - pq * c).unaryExpr([N](Int x) { return mod_pos(x, N); });
      pivot = std::move(np);
      if (!el.isZero()) next.push_back(std::move(el));
    }
    if (have) {
      Int w = unit_to_gcd(pivot(rrow), N);
      pivot = (w * pivot).unaryExpr([N](Int x) { return mod_pos(x, N); });
      Int d = pivot(rrow);  // = gcd of old entry with N
      IntVec ann = ((N / d) * pivot).unaryExpr([N](Int x) { return mod_pos(x, N); });
      if (!ann.isZero()) next.push_back(std::move(ann));
      pivots.push_back(std::move(pivot));
      pivot_rows.push_back(rrow);
    }
    work = std::move(next);
  }
  H.cols.resize(n, pivots.size());
  for (size_t k = 0; k < pivots.size(); ++k) H.cols.col(k) = pivots[k];
  H.pivot_row = std::move(pivot_rows);
  return H;
}

IntVec howell_reduce(const HowellForm& H, IntVec v) {
  IntVec dummy;
  return howell_reduce_track(H, std::move(v), dummy);
}

IntVec howell_reduce_track(const HowellForm& H, IntVec v, IntVec& coeffs) {
  const Int N = H.N;
  v = v.unaryExpr([N](Int x) { return mod_pos(x, N); });
  coeffs = IntVec::Zero(H.cols.cols());
  for (int k = 0; k < H.cols.cols(); ++k) {
    int rrow = H.pivot_row[k];
    if (v(rrow) == 0) continue;
    Int d = H.cols(rrow, k);  // divides N by construction
    if (v(rrow) % d != 0) continue;  // cannot eliminate; leave residual
    Int c = v(rrow) / d;
    v = (v - c * H.cols.col(k)).unaryExpr([N](Int x) { return mod_pos(x, N); });
    coeffs(k) = mod_pos(c, N);
  }
  return v;
}

IntMat howell_kernel(const IntMat& A, Int N) {
  const int n = static_cast<int>(A.rows());
  const int m = static_cast<int>(A.cols());
  IntMat stacked(n + m, m);
  stacked.topRows(n) = A;
  stacked.bottomRows(m) = IntMat::Identity(m, m);

  // run the echelon but only over the top n rows; survivors have zero top part
  std::vector<IntVec> work;
  for (int j = 0; j < m; ++j) {
    IntVec c = stacked.col(j).unaryExpr([N](Int x) { return mod_pos(x, N); });
    work.push_back(std::move(c));
  }
  for (int rrow = 0; rrow < n && !work.empty(); ++rrow) {
    std::vector<IntVec> next;
    IntVec pivot;
    bool have = false;
    for (auto& c : work) {
      if (c(rrow) == 0) { next.push_back(std::move(c)); continue; }
      if (!have) { pivot = std::move(c); have = true; continue; }
      ExtGcd e = ext_gcd(pivot(rrow), c(rrow));
      Int pq = pivot(rrow) / e.g, cq = c(rrow) / e.g;
      IntVec np = (e.u * pivot + e.v * c).unaryExpr([N](Int x) { return mod_pos(x, N); });
      IntVec el = (cq * pivot - pq * c).unaryExpr([N](Int x) { return mod_pos(x, N); });
      pivot = std::move(np);
      if (!el.isZero()) next.push_back(std::move(el));
    }
    if (have) {
      Int w = unit_to_gcd(pivot(rrow), N);
      pivot = (w * pivot).unaryExpr([N](Int x) { return mod_pos(x, N); });
      Int d = pivot(rrow);
      IntVec ann = ((N / d) * pivot).unaryExpr([N](Int x) { return mod_pos(x, N); });
      if (!ann.isZero()) next.push_back(std::move(ann));
    }
    work = std::move(next);
  }
  // survivors: top part zero, bottom parts generate the kernel
  IntMat K(m, work.size());
  int cnt = 0;
  for (auto& c : work) {
    if (!c.topRows(n).isZero()) throw std::logic_error("howell_kernel: nonzero top residue");
    K.col(cnt++) = c.bottomRows(m);
  }
  // tidy the generating set
  HowellForm tidy = howell_echelon(K, N);
  return tidy.cols;
}

std::optional<IntVec> solve_mod(const IntMat& A, const IntVec& b, Int N) {
  const int n = static_cast<int>(A.rows());
  const int m = static_cast<int>(A.cols());
  IntMat stacked(n + m, m);
  stacked.topRows(n) = A;
  stacked.bottomRows(m) = IntMat::Identity(m, m);
  HowellForm H = howell_echelon(stacked, N);
  // eliminate b against pivots living in the top rows
  IntVec v(n + m);
  v.topRows(n) = b;
  v.bottomRows(m).setZero();
  v = v.unaryExpr([N](Int x) { return mod_pos(x, N); });
  for (int k = 0; k < H.cols.cols(); ++k) {
    int rrow = H.pivot_row[k];
    if (rrow >= n) break;
    if (v(rrow) == 0) continue;
    Int d = H.cols(rrow, k);
    if (v(rrow) % d != 0) return std::nullopt;
    Int c = v(rrow) / d;
    v = (v - c * H.cols.col(k)).unaryExpr([N](Int x) { return mod_pos(x, N); });
  }
  if (!v.topRows(n).isZero()) return std::nullopt;
  IntVec x = (-v.bottomRows(m)).unaryExpr([N](Int x_) { return mod_pos(x_, N); });
  return x;
}

QuotientType quotient_type_mod(const IntMat& U, const IntMat& V, Int N) {
  const int u = static_cast<int>(U.cols());
  IntMat UV(U.rows(), U.cols() + V.cols());
  UV << U, V;
  IntMat K = howell_kernel(UV, N);
  // relations on the U-coefficients
  IntMat R(u, K.cols() + u);
  R.leftCols(K.cols()) = K.topRows(u);
  R.rightCols(u) = N * IntMat::Identity(u, u);
  Cokernel c = cokernel(R);
  QuotientType q;
  q.factors = c.factors;
  q.gen_combos = c.gens;
  return q;
}

}  // namespace tycat
