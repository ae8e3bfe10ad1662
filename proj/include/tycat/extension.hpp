#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tycat/cohomology.hpp"
#include "tycat/forms.hpp"

namespace tycat {

// quadratic form on A+A with its two diagonal slices and the cross pairing cached
struct BimoduleForm {
  FinAbGroup A;
  QuadraticForm q;       // on A+A
  QuadraticForm q1, q2;  // restrictions to the two copies
  Bicharacter cross;     // Bil(q) between the copies, first copy on the left

  bool operator==(const BimoduleForm& o) const { return q == o.q; }
};

BimoduleForm make_bimodule_form(const FinAbGroup& A, const QuadraticForm& q);
std::vector<BimoduleForm> enumerate_bimodule_forms(const FinAbGroup& A,
                                                   Int cap = kDefaultGroupCap);

// cross pairing induces an isomorphism onto the character group
bool is_viable(const BimoduleForm& f);
std::vector<BimoduleForm> filter_viable(const std::vector<BimoduleForm>& forms);
// q(a,b) = q(b,a) everywhere
std::vector<BimoduleForm> filter_order_two(const std::vector<BimoduleForm>& forms);
// trivial diagonal slices and center action of multiplicative order 4
std::vector<BimoduleForm> filter_order_four(const std::vector<BimoduleForm>& forms);

struct CenterAction {
  FinAbGroup domain;  // A + A^ coordinates
  IntMat matrix;
  Int order;
  bool square_is_minus_identity;
};

// duality action on A+A^ induced by a viable form; preserves Alt of the
// canonical pairing by construction (checked)
CenterAction induced_center_action(const BimoduleForm& f, bool order4_case);

// orbits of the joint quadratic-twist / relabeling action, as index sets into
// the input list; transforms leaving the list are ignored
std::vector<std::vector<int>> twist_orbits(const std::vector<BimoduleForm>& forms,
                                           const FinAbGroup& A);

struct LabeledGroup {
  std::string name;
  FinAbGroup group;
  bool vanishes = false;

  Int order() const { return group.order(); }
};

struct ExtensionReport {
  FinAbGroup G, A;
  std::string action;       // "swap", "S-matrix", "explicit"
  IntMat action_matrix;     // automorphism of A + A^
  Int action_order = 0;
  Bicharacter pairing_used;  // the A ~ A^ identification echoed for reruns
  LabeledGroup h3, h4, h5, h6;
  Int witt_order = 0;        // caller-declared label; not computed here
  Int sigma_torsor_size = 0;
  std::vector<std::string> labels;
  std::string witt_note;
};

ExtensionReport classify_extension(const FinAbGroup& G, const FinAbGroup& A,
                                   const std::string& action, Int witt_order,
                                   const std::optional<IntMat>& explicit_matrix = std::nullopt);

struct FusionRow {
  std::string left, right, result, coefficient;
  int left_degree = 0, right_degree = 0, result_degree = 0;
};

struct FusionTable {
  FinAbGroup A;
  std::vector<FusionRow> rows;
};

// symbolic table over C3(0), D3(1), D3(2), D3(3); phi = (quadratic twist, relabeling)
FusionTable generalized_ty_fusion_table(const FinAbGroup& A, const QuadraticForm& phi_quad,
                                        const GroupHom& phi_aut);

}  // namespace tycat
