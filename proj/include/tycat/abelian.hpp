#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tycat/errors.hpp"
#include "tycat/linalg.hpp"
#include "tycat/qz.hpp"

namespace tycat {

inline constexpr Int kDefaultGroupCap = 4096;

// Finite abelian group as a direct sum of cyclic factors Z/n_i (any n_i >= 2;
// the trivial group has no factors). Canonical form has n_1 | n_2 | ...
struct FinAbGroup {
  std::vector<Int> factors;

  Int order() const {
    Int o = 1;
    for (Int f : factors) o *= f;
    return o;
  }
  int rank() const { return static_cast<int>(factors.size()); }
  Int exponent() const;
  bool operator==(const FinAbGroup&) const = default;
};

FinAbGroup canonicalize(const FinAbGroup& g);
FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);

// elements are coordinate vectors, entry i reduced mod factors[i]
IntVec reduce_element(const FinAbGroup& g, IntVec x);
IntVec zero_element(const FinAbGroup& g);
Int element_index(const FinAbGroup& g, const IntVec& x);  // mixed-radix
IntVec element_at(const FinAbGroup& g, Int idx);
Int element_order(const FinAbGroup& g, const IntVec& x);

struct GroupHom {
  FinAbGroup source, target;
  IntMat matrix;  // column j = image of source generator j

  bool well_defined() const;
  IntVec apply(const IntVec& x) const { return reduce_element(target, matrix * x); }
};

GroupHom identity_hom(const FinAbGroup& g);
GroupHom zero_hom(const FinAbGroup& src, const FinAbGroup& dst);
GroupHom compose(const GroupHom& outer, const GroupHom& inner);
bool hom_equal(const GroupHom& a, const GroupHom& b);

struct Subgroup {
  FinAbGroup parent;
  std::vector<Int> elements;  // sorted element indices, always contains 0
  IntMat generators;          // minimal generating columns (may have 0 columns)

  Int order() const { return static_cast<Int>(elements.size()); }
  bool contains(const IntVec& x) const;
};

Subgroup trivial_subgroup(const FinAbGroup& g);
Subgroup full_subgroup(const FinAbGroup& g);
Subgroup subgroup_from_generators(const FinAbGroup& g, const IntMat& gens);
// validates closure; rejects non-closed sets
Subgroup subgroup_from_elements(const FinAbGroup& g, std::vector<Int> element_indices);

Subgroup kernel(const GroupHom& h, Int cap = kDefaultGroupCap);
Subgroup image(const GroupHom& h, Int cap = kDefaultGroupCap);

struct QuotientData {
  FinAbGroup group;     // canonical form
  GroupHom projection;  // parent -> group
  IntMat section;       // column i = lex-least representative of generator i
};
QuotientData quotient(const FinAbGroup& parent, const Subgroup& sub);

// lex-least element of the coset x + sub
IntVec coset_representative(const FinAbGroup& parent, const Subgroup& sub, const IntVec& x);

// standalone presentation of a subgroup: group ≅ ⊕ Z/d_i with basis columns
// in parent coordinates; every subgroup element is a unique combination
struct SubgroupBasis {
  FinAbGroup group;
  IntMat basis;
  GroupHom inclusion;  // group -> parent
};
SubgroupBasis subgroup_basis(const Subgroup& sub);

std::vector<Subgroup> enumerate_subgroups(const FinAbGroup& g,
                                          const std::optional<Subgroup>& only_inside = std::nullopt,
                                          Int cap = kDefaultGroupCap);

std::vector<GroupHom> automorphisms(const FinAbGroup& g, Int cap = kDefaultGroupCap);

// Pontryagin dual: same invariant factors, with the evaluation pairing
FinAbGroup dual_group(const FinAbGroup& g);
QZ ev_pairing(const FinAbGroup& g, const IntVec& a, const IntVec& chi);

// "Z2+Z4" literals; "Z1" (or "1", "trivial") is the trivial group
FinAbGroup parse_group(const std::string& s);
std::string group_str(const FinAbGroup& g);
// "(1,0,1)" literals
IntVec parse_element(const FinAbGroup& g, const std::string& s);
std::string element_str(const IntVec& x);

}  // namespace tycat
