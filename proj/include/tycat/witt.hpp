#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tycat/errors.hpp"
#include "tycat/forms.hpp"

namespace tycat {

inline constexpr Int kDefaultOrderCap = 12;
inline constexpr Int kDefaultClosureCap = 256;

struct SyllepticContext {
  FinAbGroup A;
  Bicharacter s;  // bicharacter on A, not assumed symmetric
  bool operator==(const SyllepticContext& o) const {
    return A == o.A && s.values == o.s.values;
  }
};

// correction attached to a pair (first-factor grading x, second-factor grading y)
QZ twist_term(const SyllepticContext& ctx, const IntVec& x, const IntVec& y);

struct GradedPremetricGroup {
  SyllepticContext context;
  FinAbGroup G;
  GroupHom f;       // grading G -> A
  QuadraticForm q;  // on G
  bool well_formed() const;
  IntVec grading(const IntVec& g) const { return f.apply(g); }
};

GradedPremetricGroup unit_object(const SyllepticContext& ctx);
GradedPremetricGroup trivially_graded(const SyllepticContext& ctx, const QuadraticForm& q);
Subgroup degree_zero_part(const GradedPremetricGroup& X);

GradedPremetricGroup twisted_product(const GradedPremetricGroup& X,
                                     const GradedPremetricGroup& Y);
GradedPremetricGroup s_opposite(const GradedPremetricGroup& X);

struct TrivialityCertificate {
  Subgroup lagrangian;        // isotropic, self-orthogonal, inside Ker(f)
  bool nondegenerate = false; // radical of Bil(q) is trivial
};

bool verify_certificate(const GradedPremetricGroup& X, const TrivialityCertificate& c);

std::optional<TrivialityCertificate> is_a_trivial(const GradedPremetricGroup& X,
                                                  Int cap = kDefaultGroupCap);

struct InvertibilityCertificate {
  bool invertible = false;
  std::optional<TrivialityCertificate> product_certificate;  // on X x X-op
};

InvertibilityCertificate s_invertibility(const GradedPremetricGroup& X,
                                         Int cap = kDefaultGroupCap);
bool is_s_invertible(const GradedPremetricGroup& X, Int cap = kDefaultGroupCap);

struct MetricSummand {
  FinAbGroup group;  // abstract basis group of the split subgroup
  QuadraticForm q;
  std::complex<double> gauss;
};

struct SplitResult {
  MetricSummand metric;
  GradedPremetricGroup complement;
};

SplitResult split_metric(const GradedPremetricGroup& X, const Subgroup& H);
GradedPremetricGroup condense(const GradedPremetricGroup& X, const Subgroup& H);

struct ReductionStep {
  enum class Kind { Condense, Split };
  Kind kind;
  Subgroup subgroup;  // lives in the object current before this step
  std::optional<MetricSummand> metric;  // filled for Split steps
};

struct ReductionTrace {
  GradedPremetricGroup input;
  std::vector<ReductionStep> steps;
  GradedPremetricGroup final_object;
  std::optional<TrivialityCertificate> final_certificate;
  bool used_stabilization = false;
  std::optional<QuadraticForm> stabilizer;  // metric form tensored in, when stabilized
  std::optional<TrivialityCertificate> stabilized_certificate;  // on final x stabilizer
};

// applies the recorded steps to the input and returns the outcome
GradedPremetricGroup replay_trace(const ReductionTrace& t);

struct ReducedObject {
  GradedPremetricGroup object;
  std::vector<ReductionStep> steps;
};

// condenses by the lexicographically first isotropic vector in Ker(f) until none remain
ReducedObject condense_reduce(const GradedPremetricGroup& X);

std::optional<TrivialityCertificate> raw_trivial(const GradedPremetricGroup& X);

std::optional<ReductionTrace> is_trivial_mod_witt(const GradedPremetricGroup& X,
                                                  Int cap = kDefaultGroupCap,
                                                  bool allow_stabilization = false);

// metric forms used by the stabilization fallback, deterministic order
std::vector<QuadraticForm> stabilizer_pool(Int max_order);

Int order_mod_witt(const GradedPremetricGroup& X, Int cap_n = kDefaultOrderCap);
Int order_raw(const GradedPremetricGroup& X, Int cap_n = kDefaultOrderCap);

bool classes_equal(const GradedPremetricGroup& X, const GradedPremetricGroup& Y);
bool classes_equal_mod_witt(const GradedPremetricGroup& X, const GradedPremetricGroup& Y);

// brute-force search for a grading- and form-preserving isomorphism
bool graded_isometry_exists(const GradedPremetricGroup& X, const GradedPremetricGroup& Y);

struct AbstractGroupInfo {
  Int order = 0;
  std::map<Int, Int> order_histogram;
  bool abelian = true;
  Int center_order = 0;
  Int derived_order = 0;
};

AbstractGroupInfo analyze_table(const std::vector<std::vector<int>>& table);
std::string identify_group(const AbstractGroupInfo& info);

struct GroupStructureReport {
  Int order = 0;
  std::map<Int, Int> order_histogram;
  bool abelian = true;
  Int center_order = 0;
  Int derived_order = 0;
  std::string label;
  std::vector<GradedPremetricGroup> representatives;  // index 0 is the unit class
  std::vector<std::vector<int>> table;
};

GroupStructureReport group_structure(const std::vector<GradedPremetricGroup>& generators,
                                     Int closure_cap = kDefaultClosureCap);

std::vector<GroupHom> symplectic_automorphisms(const SyllepticContext& ctx,
                                               Int cap = kDefaultGroupCap);

struct ExactSequenceReport {
  Int aut_syp_order = 0;
  Int h5_order = 0;
  Int product = 0;
  std::optional<Int> witt_group_order;
  bool consistent = false;  // product equals the computed group order
};

ExactSequenceReport exact_sequence_report(const SyllepticContext& ctx,
                                          std::optional<Int> computed_group_order = std::nullopt);

}  // namespace tycat
