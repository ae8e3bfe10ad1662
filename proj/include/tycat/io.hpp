#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tycat/cohomology.hpp"
#include "tycat/extension.hpp"
#include "tycat/witt.hpp"

namespace tycat {

using Json = nlohmann::json;

Json mat_to_json(const IntMat& m);  // array of rows
IntMat mat_from_json(const Json& j);
Json vec_to_json(const IntVec& v);
IntVec vec_from_json(const Json& j);

void to_json(Json& j, const QZ& v);
void from_json(const Json& j, QZ& v);
void to_json(Json& j, const FinAbGroup& g);
void from_json(const Json& j, FinAbGroup& g);
void to_json(Json& j, const Bicharacter& b);
void from_json(const Json& j, Bicharacter& b);
void to_json(Json& j, const QuadraticForm& q);  // group carried alongside by owners
void to_json(Json& j, const SyllepticContext& c);
void from_json(const Json& j, SyllepticContext& c);
void to_json(Json& j, const GradedPremetricGroup& x);
void from_json(const Json& j, GradedPremetricGroup& x);
void to_json(Json& j, const MetricSummand& m);
void to_json(Json& j, const CohomologyGroup& h);
void to_json(Json& j, const LabeledGroup& g);
void to_json(Json& j, const ExtensionReport& r);
void to_json(Json& j, const FusionRow& r);
void to_json(Json& j, const FusionTable& t);
void to_json(Json& j, const CenterAction& a);
void to_json(Json& j, const GroupStructureReport& r);
void to_json(Json& j, const ExactSequenceReport& r);

// forms are stored without their group; owners supply it on the way back in
QuadraticForm quad_from_json(const FinAbGroup& g, const Json& j);
Json subgroup_to_json(const Subgroup& h);  // generator columns
Subgroup subgroup_from_json(const FinAbGroup& parent, const Json& j);
Json certificate_to_json(const TrivialityCertificate& c);
TrivialityCertificate certificate_from_json(const FinAbGroup& parent, const Json& j);
Json trace_to_json(const ReductionTrace& t);
// rebuilds step subgroups against the replayed intermediate objects
ReductionTrace trace_from_json(const Json& j);

// named inputs compiled into the library
std::vector<std::string> preset_names();
SyllepticContext standard_context();
GradedPremetricGroup preset_object(const std::string& name);
std::vector<GradedPremetricGroup> preset_generators(const std::string& name);

// flat "key = value" config, # comments, optional quotes around values
std::map<std::string, std::string> parse_flat_config(const std::string& text);

// self-contained claim + evidence envelopes
Json make_triviality_certificate(const GradedPremetricGroup& x, const TrivialityCertificate& c);
Json make_trace_certificate(const ReductionTrace& t);
Json make_order_certificate(const GradedPremetricGroup& x, const std::string& kind, Int order,
                            const std::optional<ReductionTrace>& witness);
Json make_group_certificate(const std::vector<GradedPremetricGroup>& generators,
                            const GroupStructureReport& rep);

struct CertCheck {
  bool ok = false;
  std::string message;
};
CertCheck check_certificate(const Json& j);

}  // namespace tycat
