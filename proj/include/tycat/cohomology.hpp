#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tycat/errors.hpp"
#include "tycat/forms.hpp"

namespace tycat {

// storage cap for one differential matrix (entry count)
inline constexpr Int kBarEntryCap = Int(1) << 25;
// representatives kept only while |G|^d stays below this
inline constexpr Int kRepresentativeCap = Int(1) << 16;

struct GModule {
  FinAbGroup G;
  FinAbGroup M;
  std::vector<IntMat> gen_action;  // automorphism of M per generator of G
};

// validates: each matrix an automorphism, respects generator orders, pairwise commuting
GModule make_module(const FinAbGroup& G, const FinAbGroup& M, std::vector<IntMat> gen_action);
GModule trivial_module(const FinAbGroup& G, const FinAbGroup& M);
IntMat action_of(const GModule& mod, const IntVec& g);

struct CohomologyGroup {
  int degree = 0;
  FinAbGroup group;  // canonical invariant factors
  // bar classes: table over non-identity tuples; periodic-resolution classes: single entry
  std::vector<std::vector<IntVec>> representatives;
};

// periodic resolution for G = Z/n
CohomologyGroup cohomology_cyclic(Int n, const GModule& mod, int degree);

// normalized bar resolution
CohomologyGroup cohomology_bar(const GModule& mod, int degree);

enum class Resolution { Auto, Periodic, Bar };

// dispatcher: periodic when G is cyclic, bar otherwise; Periodic on a
// non-cyclic group is rejected
CohomologyGroup cohomology(const GModule& mod, int degree, Resolution res = Resolution::Auto);

// circle coefficients modeled at level N = |G|^2 and stabilized through the
// transition into level N*|G|; doubling_check recomputes at 2N and compares
CohomologyGroup cohomology_torus(const FinAbGroup& G, int degree, bool doubling_check = false,
                                 Resolution res = Resolution::Auto);

// non-identity tuple bookkeeping for bar cochains
Int bar_tuple_count(Int group_order, int degree);
std::vector<Int> bar_tuple_at(Int group_order, int degree, Int index);
Int bar_tuple_index(Int group_order, const std::vector<Int>& tuple);  // -1 if any entry is 0

struct ModCochain {
  int degree = 0;
  std::vector<IntVec> values;  // M-coordinates per non-identity tuple
};

struct QZCochain {
  int degree = 0;
  std::vector<QZ> values;
};

ModCochain zero_mod_cochain(const GModule& mod, int degree);
ModCochain mod_differential(const GModule& mod, const ModCochain& c);
bool is_cocycle(const GModule& mod, const ModCochain& c);
QZCochain qz_differential(const FinAbGroup& G, const QZCochain& c);

// deterministic pseudo-random 3-cocycle drawn from the kernel lattice
ModCochain sample_three_cocycle(const GModule& mod, std::uint64_t seed);

struct CupSquareResult {
  QZCochain square;  // 6-cochain valued in circle exponents
  bool vanishes = false;
  std::optional<QZCochain> witness;  // 5-cochain with d(witness) = square
  FinAbGroup h6;                     // stable ambient group
  Int solve_level = 0;               // denominator level at which the solve ran
};

CupSquareResult cup_square(const GModule& mod, const ModCochain& alpha,
                           const Bicharacter& pairing);

}  // namespace tycat
