#include "tycat/extension.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace tycat {

namespace {

// matrix of a -> p(a,-) (or p(-,a) when transpose) as a hom into dual coordinates
IntMat pairing_hom_matrix(const Bicharacter& p, bool transpose) {
  const FinAbGroup& A = p.left;
  const int r = A.rank();
  IntMat m = IntMat::Zero(r, r);
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i) {
      QZ v = transpose ? p.values[k][i] : p.values[i][k];
      Int nk = A.factors[k];
      m(k, i) = mod_pos(v.num * (nk / v.den), nk);  // order of v divides nk
    }
  return m;
}

std::vector<Int> form_key(const QuadraticForm& q) {
  std::vector<Int> key;
  for (const QZ& v : q.gen_values) {
    key.push_back(v.num);
    key.push_back(v.den);
  }
  for (const QZ& v : q.offdiag) {
    key.push_back(v.num);
    key.push_back(v.den);
  }
  return key;
}

// generator presentation of x -> q(beta x) + r(first half of x) + r(second half)
QuadraticForm transformed_form(const QuadraticForm& q, const FinAbGroup& A,
                               const IntMat& aut, const QuadraticForm& r) {
  const FinAbGroup& B = q.group;
  const int n = A.rank();
  IntMat beta = IntMat::Zero(2 * n, 2 * n);
  beta.block(0, 0, n, n) = aut;
  beta.block(n, n, n, n) = aut;
  auto t = [&](const IntVec& x) {
    QZ v = q.eval(reduce_element(B, beta * x));
    v += r.eval(reduce_element(A, x.head(n)));
    v += r.eval(reduce_element(A, x.tail(n)));
    return v;
  };
  QuadraticForm out = zero_form(B);
  std::vector<QZ> diag(2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    diag[i] = t(IntVec::Unit(2 * n, i));
    out.gen_values[i] = diag[i];
  }
  for (int i = 0; i < 2 * n; ++i)
    for (int j = i + 1; j < 2 * n; ++j) {
      IntVec x = IntVec::Zero(2 * n);
      x(i) = 1;
      x(j) = 1;
      out.off(i, j) = t(x) - diag[i] - diag[j];
    }
  if (!out.well_formed()) throw std::logic_error("twist transform left the form space");
  return out;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

BimoduleForm make_bimodule_form(const FinAbGroup& A, const QuadraticForm& q) {
  FinAbGroup B = direct_sum(A, A);
  if (!(q.group == B)) throw ContextMismatch("bimodule form must live on A+A");
  if (!q.well_formed()) throw ParseError("malformed quadratic form");
  const int r = A.rank();
  BimoduleForm f;
  f.A = A;
  f.q = q;
  f.q1 = zero_form(A);
  f.q2 = zero_form(A);
  for (int i = 0; i < r; ++i) {
    f.q1.gen_values[i] = q.gen_values[i];
    f.q2.gen_values[i] = q.gen_values[r + i];
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      f.q1.off(i, j) = q.off(i, j);
      f.q2.off(i, j) = q.off(r + i, r + j);
    }
  f.cross = bil12(q, A);
  return f;
}

std::vector<BimoduleForm> enumerate_bimodule_forms(const FinAbGroup& A, Int cap) {
  FinAbGroup B = direct_sum(A, A);
  std::vector<BimoduleForm> out;
  for (const QuadraticForm& q : enumerate_quadratic_forms(B, cap))
    out.push_back(make_bimodule_form(A, q));
  return out;
}

bool is_viable(const BimoduleForm& f) {
  if (f.A.order() == 1) return true;
  return radical(f.cross).order() == 1;  // injective onto a group of equal size
}

std::vector<BimoduleForm> filter_viable(const std::vector<BimoduleForm>& forms) {
  std::vector<BimoduleForm> out;
  std::copy_if(forms.begin(), forms.end(), std::back_inserter(out), is_viable);
  return out;
}

std::vector<BimoduleForm> filter_order_two(const std::vector<BimoduleForm>& forms) {
  std::vector<BimoduleForm> out;
  for (const BimoduleForm& f : forms) {
    const int r = f.A.rank();
    bool symmetric = true;
    for (Int i = 0; i < f.A.order() && symmetric; ++i)
      for (Int j = 0; j < f.A.order() && symmetric; ++j) {
        IntVec a = element_at(f.A, i), b = element_at(f.A, j);
        IntVec ab(2 * r), ba(2 * r);
        ab << a, b;
        ba << b, a;
        symmetric = f.q.eval(ab) == f.q.eval(ba);
      }
    if (symmetric) out.push_back(f);
  }
  return out;
}

std::vector<BimoduleForm> filter_order_four(const std::vector<BimoduleForm>& forms) {
  std::vector<BimoduleForm> out;
  for (const BimoduleForm& f : forms) {
    if (!(f.q1 == zero_form(f.A)) || !(f.q2 == zero_form(f.A))) continue;
    if (!is_viable(f)) continue;
    if (induced_center_action(f, true).order == 4) out.push_back(f);
  }
  return out;
}

CenterAction induced_center_action(const BimoduleForm& f, bool order4_case) {
  if (!is_viable(f)) throw HypothesisViolated("cross pairing is not invertible");
  if (order4_case &&
      (!(f.q1 == zero_form(f.A)) || !(f.q2 == zero_form(f.A))))
    throw HypothesisViolated("order-4 action needs trivial diagonal slices");
  const FinAbGroup& A = f.A;
  const int r = A.rank();
  FinAbGroup D = direct_sum(A, dual_group(A));
  IntMat B = pairing_hom_matrix(f.cross, false);
  IntMat Bhat = pairing_hom_matrix(f.cross, true);
  // invert the transposed pairing by locating preimages of dual generators
  IntMat Bhat_inv = IntMat::Zero(r, r);
  for (int j = 0; j < r; ++j) {
    bool found = false;
    for (Int k = 0; k < A.order() && !found; ++k) {
      IntVec a = element_at(A, k);
      IntVec img = Bhat * a;
      bool hit = true;
      for (int i = 0; i < r; ++i)
        hit = hit && mod_pos(img(i) - (i == j ? 1 : 0), A.factors[i]) == 0;
      if (hit) {
        Bhat_inv.col(j) = a;
        found = true;
      }
    }
    if (!found) throw HypothesisViolated("transposed pairing is not invertible");
  }
  CenterAction act;
  act.domain = D;
  act.matrix = IntMat::Zero(2 * r, 2 * r);
  act.matrix.block(0, r, r, r) = -Bhat_inv;
  act.matrix.block(r, 0, r, r) = B;
  for (int i = 0; i < 2 * r; ++i)
    for (int j = 0; j < 2 * r; ++j)
      act.matrix(i, j) = mod_pos(act.matrix(i, j), D.factors[i]);

  Bicharacter alt = alt_of_bicharacter(canonical_sigma(A));
  GroupHom m{D, D, act.matrix};
  for (int i = 0; i < 2 * r; ++i)
    for (int j = i + 1; j < 2 * r; ++j) {
      IntVec ei = IntVec::Unit(2 * r, i), ej = IntVec::Unit(2 * r, j);
      if (alt.eval(m.apply(ei), m.apply(ej)) != alt.eval(ei, ej))
        throw HypothesisViolated("center action breaks the alternating form");
    }

  auto is_ident = [&](const IntMat& p) {
    for (int i = 0; i < 2 * r; ++i)
      for (int j = 0; j < 2 * r; ++j)
        if (mod_pos(p(i, j) - (i == j ? 1 : 0), D.factors[i]) != 0) return false;
    return true;
  };
  IntMat pw = act.matrix;
  act.order = 1;
  while (!is_ident(pw)) {
    pw = act.matrix * pw;
    for (int i = 0; i < 2 * r; ++i)
      for (int j = 0; j < 2 * r; ++j) pw(i, j) = mod_pos(pw(i, j), D.factors[i]);
    ++act.order;
    if (act.order > 64) throw std::logic_error("center action order runaway");
  }
  IntMat sq = act.matrix * act.matrix;
  act.square_is_minus_identity = true;
  for (int i = 0; i < 2 * r; ++i)
    for (int j = 0; j < 2 * r; ++j)
      act.square_is_minus_identity =
          act.square_is_minus_identity &&
          mod_pos(sq(i, j) - (i == j ? -1 : 0), D.factors[i]) == 0;
  return act;
}

std::vector<std::vector<int>> twist_orbits(const std::vector<BimoduleForm>& forms,
                                           const FinAbGroup& A) {
  std::map<std::vector<Int>, int> lookup;
  for (size_t i = 0; i < forms.size(); ++i) lookup[form_key(forms[i].q)] = static_cast<int>(i);
  std::vector<QuadraticForm> quads = enumerate_quadratic_forms(A);
  std::vector<GroupHom> auts = automorphisms(A);
  Dsu dsu(static_cast<int>(forms.size()));
  for (size_t fi = 0; fi < forms.size(); ++fi)
    for (const GroupHom& al : auts)
      for (const QuadraticForm& r : quads) {
        QuadraticForm moved = transformed_form(forms[fi].q, A, al.matrix, r);
        auto it = lookup.find(form_key(moved));
        if (it != lookup.end()) dsu.unite(static_cast<int>(fi), it->second);
      }
  std::map<int, std::vector<int>> buckets;
  for (size_t i = 0; i < forms.size(); ++i)
    buckets[dsu.find(static_cast<int>(i))].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : buckets) out.push_back(std::move(members));
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

ExtensionReport classify_extension(const FinAbGroup& G, const FinAbGroup& A,
                                   const std::string& action, Int witt_order,
                                   const std::optional<IntMat>& explicit_matrix) {
  if (G.rank() > 1 && G.order() > 8)
    throw CapExceeded("classify_extension: non-cyclic grading group of order " +
                      std::to_string(G.order()));
  const int r = A.rank();
  FinAbGroup D = direct_sum(A, dual_group(A));
  ExtensionReport rep;
  rep.G = G;
  rep.A = A;
  rep.action = action;
  rep.witt_order = witt_order;

  // identification A ~ A^ by the diagonal pairing, echoed for reproducibility
  rep.pairing_used = zero_bicharacter(A, A);
  for (int i = 0; i < r; ++i) rep.pairing_used.values[i][i] = QZ(1, A.factors[i]);

  IntMat M = IntMat::Zero(2 * r, 2 * r);
  if (action == "swap") {
    M.block(0, r, r, r) = IntMat::Identity(r, r);
    M.block(r, 0, r, r) = IntMat::Identity(r, r);
  } else if (action == "S-matrix") {
    M.block(0, r, r, r) = IntMat::Identity(r, r);
    for (int i = 0; i < r; ++i) M(r + i, i) = A.factors[i] - 1;  // -1 mod n_i
  } else if (action == "explicit") {
    if (!explicit_matrix || explicit_matrix->rows() != 2 * r ||
        explicit_matrix->cols() != 2 * r)
      throw ParseError("explicit action needs a matrix on A+A^");
    M = *explicit_matrix;
  } else {
    throw ParseError("unknown action literal: " + action);
  }
  GroupHom hm{D, D, M};
  if (!hm.well_defined()) throw NotSymplectic("action is not an endomorphism of A+A^");
  std::set<Int> img;
  for (Int k = 0; k < D.order(); ++k) img.insert(element_index(D, hm.apply(element_at(D, k))));
  if (static_cast<Int>(img.size()) != D.order())
    throw NotSymplectic("action is not invertible on A+A^");
  Bicharacter alt = alt_of_bicharacter(canonical_sigma(A));
  for (int i = 0; i < 2 * r; ++i)
    for (int j = i + 1; j < 2 * r; ++j) {
      IntVec ei = IntVec::Unit(2 * r, i), ej = IntVec::Unit(2 * r, j);
      if (alt.eval(hm.apply(ei), hm.apply(ej)) != alt.eval(ei, ej))
        throw NotSymplectic("action does not preserve Alt of the canonical pairing");
    }
  rep.action_matrix = M;
  IntMat pw = M;
  rep.action_order = 1;
  auto is_ident = [&](const IntMat& p) {
    for (int i = 0; i < 2 * r; ++i)
      for (int j = 0; j < 2 * r; ++j)
        if (mod_pos(p(i, j) - (i == j ? 1 : 0), D.factors[i]) != 0) return false;
    return true;
  };
  while (!is_ident(pw)) {
    pw = M * pw;
    for (int i = 0; i < 2 * r; ++i)
      for (int j = 0; j < 2 * r; ++j) pw(i, j) = mod_pos(pw(i, j), D.factors[i]);
    ++rep.action_order;
    if (rep.action_order > 64) throw NotSymplectic("action order runaway");
  }

  GModule mod = make_module(G, D, std::vector<IntMat>(G.rank(), M));
  CohomologyGroup h3 = cohomology(mod, 3);
  CohomologyGroup h4 = cohomology(mod, 4);
  CohomologyGroup h5 = cohomology_torus(G, 5);
  CohomologyGroup h6 = cohomology_torus(G, 6);
  auto pack = [](const std::string& name, const CohomologyGroup& h) {
    return LabeledGroup{name, h.group, h.group.order() == 1};
  };
  rep.h3 = pack("H3(G, A+A^)", h3);
  rep.h4 = pack("H4(G, A+A^)", h4);
  rep.h5 = pack("H5(G; C*)", h5);
  rep.h6 = pack("H6(G; C*)", h6);
  rep.sigma_torsor_size = quad_form_count(A);
  rep.witt_note =
      "w is a caller-declared order label; Witt orders of stacked non-pointed "
      "classes are outside this engine";
  Int tau_count = rep.h5.order();
  if (tau_count * rep.sigma_torsor_size <= 256) {
    for (Int t = 0; t < tau_count; ++t)
      for (Int s = 0; s < rep.sigma_torsor_size; ++s)
        rep.labels.push_back("3TY^" + std::to_string(witt_order) + "_{tau" +
                             std::to_string(t) + ",sigma" + std::to_string(s) + "}");
  }
  return rep;
}

FusionTable generalized_ty_fusion_table(const FinAbGroup& A, const QuadraticForm& phi_quad,
                                        const GroupHom& phi_aut) {
  if (!(phi_quad.group == A)) throw ContextMismatch("twist form must live on A");
  if (!(phi_aut.source == A) || !(phi_aut.target == A))
    throw ContextMismatch("relabeling must be an automorphism of A");
  auto compose_quad = [&](const QuadraticForm& q, const GroupHom& al) {
    QuadraticForm out = zero_form(A);
    const int n = A.rank();
    std::vector<QZ> diag(n);
    for (int i = 0; i < n; ++i) {
      diag[i] = q.eval(al.apply(IntVec::Unit(n, i)));
      out.gen_values[i] = diag[i];
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        IntVec x = IntVec::Zero(n);
        x(i) = 1;
        x(j) = 1;
        out.off(i, j) = q.eval(al.apply(x)) - diag[i] - diag[j];
      }
    return out;
  };
  auto coeff_label = [&](const QuadraticForm& q) -> std::string {
    if (q == zero_form(A)) return "Vect(A[0])";
    std::string body;
    for (size_t i = 0; i < q.gen_values.size(); ++i) {
      if (i) body += ",";
      body += q.gen_values[i].str();
    }
    for (const QZ& v : q.offdiag)
      if (!v.is_zero()) {
        body += ";off";
        break;
      }
    return "Vect^{Omega[" + body + "]}(A[0])";
  };
  QuadraticForm phi2 = compose_quad(phi_quad, phi_aut);
  const char* symbols[4] = {"C3(0)", "D3(1)", "D3(2)", "D3(3)"};
  FusionTable table;
  table.A = A;
  for (int l = 0; l < 4; ++l)
    for (int rr = 0; rr < 4; ++rr) {
      FusionRow row;
      row.left = symbols[l];
      row.right = symbols[rr];
      row.left_degree = l;
      row.right_degree = rr;
      row.result_degree = (l + rr) % 4;
      row.result = symbols[row.result_degree];
      row.coefficient = "Vect(A[0])";
      if (l == 0 && rr == 2) row.coefficient = coeff_label(phi_quad);
      if (l == 2 && rr == 0) row.coefficient = coeff_label(phi2);
      table.rows.push_back(row);
    }
  return table;
}

}  // namespace tycat
