#include "tycat/io.hpp"

#include <algorithm>
#include <sstream>

namespace tycat {

Json mat_to_json(const IntMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return Json{{"r", m.rows()}, {"c", m.cols()}, {"rows", rows}};
}

IntMat mat_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("c"))
    throw ParseError("matrix json needs r/c/rows");
  Int r = j.at("r").get<Int>(), c = j.at("c").get<Int>();
  if (r < 0 || c < 0) throw ParseError("negative matrix shape");
  IntMat m = IntMat::Zero(r, c);
  const Json& rows = j.at("rows");
  if (static_cast<Int>(rows.size()) != r) throw ParseError("matrix row count mismatch");
  for (Int i = 0; i < r; ++i) {
    if (static_cast<Int>(rows[i].size()) != c) throw ParseError("matrix column count mismatch");
    for (Int k = 0; k < c; ++k) m(i, k) = rows[i][k].get<Int>();
  }
  return m;
}

Json vec_to_json(const IntVec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

IntVec vec_from_json(const Json& j) {
  IntVec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(static_cast<int>(i)) = j[i].get<Int>();
  return v;
}

void to_json(Json& j, const QZ& v) { j = v.str(); }

void from_json(const Json& j, QZ& v) {
  try {
    v = qz_parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

void to_json(Json& j, const FinAbGroup& g) { j = group_str(g); }

void from_json(const Json& j, FinAbGroup& g) { g = parse_group(j.get<std::string>()); }

void to_json(Json& j, const Bicharacter& b) {
  Json vals = Json::array();
  for (const auto& row : b.values) {
    Json r = Json::array();
    for (const QZ& v : row) r.push_back(v.str());
    vals.push_back(r);
  }
  j = Json{{"left", b.left}, {"right", b.right}, {"values", vals}};
}

void from_json(const Json& j, Bicharacter& b) {
  b.left = j.at("left").get<FinAbGroup>();
  b.right = j.at("right").get<FinAbGroup>();
  b.values.assign(b.left.rank(), std::vector<QZ>(b.right.rank()));
  const Json& vals = j.at("values");
  if (static_cast<int>(vals.size()) != b.left.rank()) throw ParseError("pairing row count");
  for (int i = 0; i < b.left.rank(); ++i) {
    if (static_cast<int>(vals[i].size()) != b.right.rank())
      throw ParseError("pairing column count");
    for (int k = 0; k < b.right.rank(); ++k) b.values[i][k] = qz_parse(vals[i][k].get<std::string>());
  }
  if (!b.well_formed()) throw ParseError("pairing value orders incompatible with the groups");
}

void to_json(Json& j, const QuadraticForm& q) {
  Json gens = Json::array(), off = Json::array();
  for (const QZ& v : q.gen_values) gens.push_back(v.str());
  for (const QZ& v : q.offdiag) off.push_back(v.str());
  j = Json{{"gen_values", gens}, {"offdiag", off}};
}

QuadraticForm quad_from_json(const FinAbGroup& g, const Json& j) {
  QuadraticForm q = zero_form(g);
  const Json& gens = j.at("gen_values");
  if (static_cast<int>(gens.size()) != g.rank()) throw ParseError("form generator count");
  for (int i = 0; i < g.rank(); ++i) q.gen_values[i] = qz_parse(gens[i].get<std::string>());
  const Json& off = j.at("offdiag");
  if (static_cast<int>(off.size()) != offdiag_count(g.rank()))
    throw ParseError("form off-diagonal count");
  for (size_t i = 0; i < q.offdiag.size(); ++i) q.offdiag[i] = qz_parse(off[i].get<std::string>());
  if (!q.well_formed()) throw ParseError("form values incompatible with the group");
  return q;
}

void to_json(Json& j, const SyllepticContext& c) {
  Json vals = Json::array();
  for (const auto& row : c.s.values) {
    Json r = Json::array();
    for (const QZ& v : row) r.push_back(v.str());
    vals.push_back(r);
  }
  j = Json{{"A", c.A}, {"s", vals}};
}

void from_json(const Json& j, SyllepticContext& c) {
  c.A = j.at("A").get<FinAbGroup>();
  Json bj = Json{{"left", c.A}, {"right", c.A}, {"values", j.at("s")}};
  c.s = bj.get<Bicharacter>();
}

void to_json(Json& j, const GradedPremetricGroup& x) {
  j = Json{{"context", x.context},
           {"G", x.G},
           {"f", mat_to_json(x.f.matrix)},
           {"q", x.q}};
}

void from_json(const Json& j, GradedPremetricGroup& x) {
  x.context = j.at("context").get<SyllepticContext>();
  x.G = j.at("G").get<FinAbGroup>();
  x.f = GroupHom{x.G, x.context.A, mat_from_json(j.at("f"))};
  x.q = quad_from_json(x.G, j.at("q"));
  if (!x.well_formed()) throw ParseError("graded object fails well-formedness");
}

void to_json(Json& j, const MetricSummand& m) {
  j = Json{{"group", m.group},
           {"q", m.q},
           {"gauss", Json::array({m.gauss.real(), m.gauss.imag()})}};
}

void to_json(Json& j, const CohomologyGroup& h) {
  j = Json{{"degree", h.degree},
           {"group", h.group},
           {"order", h.group.order()},
           {"representative_count", h.representatives.size()}};
}

void to_json(Json& j, const LabeledGroup& g) {
  j = Json{{"name", g.name}, {"group", g.group}, {"order", g.order()}, {"vanishes", g.vanishes}};
}

void to_json(Json& j, const ExtensionReport& r) {
  j = Json{{"G", r.G},
           {"A", r.A},
           {"action", r.action},
           {"action_matrix", mat_to_json(r.action_matrix)},
           {"action_order", r.action_order},
           {"pairing_used", r.pairing_used},
           {"h3", r.h3},
           {"h4", r.h4},
           {"h5", r.h5},
           {"h6", r.h6},
           {"witt_order", r.witt_order},
           {"sigma_torsor_size", r.sigma_torsor_size},
           {"labels", r.labels},
           {"witt_note", r.witt_note}};
}

void to_json(Json& j, const FusionRow& r) {
  j = Json{{"left", r.left},
           {"right", r.right},
           {"result", r.result},
           {"coefficient", r.coefficient},
           {"degrees", Json::array({r.left_degree, r.right_degree, r.result_degree})}};
}

void to_json(Json& j, const FusionTable& t) { j = Json{{"A", t.A}, {"rows", t.rows}}; }

void to_json(Json& j, const CenterAction& a) {
  j = Json{{"domain", a.domain},
           {"matrix", mat_to_json(a.matrix)},
           {"order", a.order},
           {"square_is_minus_identity", a.square_is_minus_identity}};
}

void to_json(Json& j, const GroupStructureReport& r) {
  Json hist = Json::object();
  for (const auto& [ord, count] : r.order_histogram) hist[std::to_string(ord)] = count;
  Json class_orders = Json::array();
  for (const auto& rep : r.representatives) class_orders.push_back(rep.G.order());
  j = Json{{"order", r.order},
           {"order_histogram", hist},
           {"abelian", r.abelian},
           {"center_order", r.center_order},
           {"derived_order", r.derived_order},
           {"label", r.label},
           {"class_group_orders", class_orders},
           {"table", r.table}};
}

void to_json(Json& j, const ExactSequenceReport& r) {
  j = Json{{"aut_syp_order", r.aut_syp_order},
           {"h5_order", r.h5_order},
           {"product", r.product},
           {"witt_group_order", r.witt_group_order ? Json(*r.witt_group_order) : Json()},
           {"consistent", r.consistent}};
}

Json subgroup_to_json(const Subgroup& h) {
  return Json{{"generators", mat_to_json(h.generators)}};
}

Subgroup subgroup_from_json(const FinAbGroup& parent, const Json& j) {
  IntMat gens = mat_from_json(j.at("generators"));
  if (gens.rows() != parent.rank()) throw ParseError("subgroup generators shape");
  return subgroup_from_generators(parent, gens);
}

Json certificate_to_json(const TrivialityCertificate& c) {
  return Json{{"lagrangian", subgroup_to_json(c.lagrangian)},
              {"nondegenerate", c.nondegenerate}};
}

TrivialityCertificate certificate_from_json(const FinAbGroup& parent, const Json& j) {
  TrivialityCertificate c;
  c.lagrangian = subgroup_from_json(parent, j.at("lagrangian"));
  c.nondegenerate = j.at("nondegenerate").get<bool>();
  return c;
}

Json trace_to_json(const ReductionTrace& t) {
  Json steps = Json::array();
  for (const ReductionStep& s : t.steps) {
    Json sj{{"kind", s.kind == ReductionStep::Kind::Condense ? "condense" : "split"},
            {"subgroup", subgroup_to_json(s.subgroup)}};
    sj["metric"] = s.metric ? Json(*s.metric) : Json();
    steps.push_back(sj);
  }
  Json j{{"input", t.input},
         {"steps", steps},
         {"final_object", t.final_object},
         {"used_stabilization", t.used_stabilization}};
  j["final_certificate"] = t.final_certificate ? certificate_to_json(*t.final_certificate) : Json();
  if (t.stabilizer)
    j["stabilizer"] = Json{{"group", t.stabilizer->group}, {"q", *t.stabilizer}};
  else
    j["stabilizer"] = Json();
  j["stabilized_certificate"] =
      t.stabilized_certificate ? certificate_to_json(*t.stabilized_certificate) : Json();
  return j;
}

ReductionTrace trace_from_json(const Json& j) {
  ReductionTrace t;
  t.input = j.at("input").get<GradedPremetricGroup>();
  GradedPremetricGroup current = t.input;
  for (const Json& sj : j.at("steps")) {
    ReductionStep step;
    std::string kind = sj.at("kind").get<std::string>();
    step.subgroup = subgroup_from_json(current.G, sj.at("subgroup"));
    if (kind == "condense") {
      step.kind = ReductionStep::Kind::Condense;
      current = condense(current, step.subgroup);
    } else if (kind == "split") {
      step.kind = ReductionStep::Kind::Split;
      SplitResult sr = split_metric(current, step.subgroup);
      step.metric = sr.metric;
      current = sr.complement;
    } else {
      throw ParseError("unknown reduction step kind: " + kind);
    }
    t.steps.push_back(std::move(step));
  }
  t.final_object = j.at("final_object").get<GradedPremetricGroup>();
  if (j.contains("final_certificate") && !j.at("final_certificate").is_null())
    t.final_certificate = certificate_from_json(t.final_object.G, j.at("final_certificate"));
  t.used_stabilization = j.value("used_stabilization", false);
  if (j.contains("stabilizer") && !j.at("stabilizer").is_null()) {
    FinAbGroup sg = j.at("stabilizer").at("group").get<FinAbGroup>();
    t.stabilizer = quad_from_json(sg, j.at("stabilizer").at("q"));
  }
  if (j.contains("stabilized_certificate") && !j.at("stabilized_certificate").is_null()) {
    if (!t.stabilizer) throw ParseError("stabilized certificate without a stabilizer");
    FinAbGroup prod = direct_sum(t.final_object.G, t.stabilizer->group);
    t.stabilized_certificate = certificate_from_json(prod, j.at("stabilized_certificate"));
  }
  return t;
}

std::vector<std::string> preset_names() {
  return {"a", "b", "c", "ab", "a2b", "C", "L", "z"};
}

SyllepticContext standard_context() {
  FinAbGroup A{{2, 2}};
  Bicharacter s = zero_bicharacter(A, A);
  s.values[0][1] = QZ(1, 2);
  return {A, s};
}

namespace {

GradedPremetricGroup line_generator(Int a0, Int a1, QZ qval) {
  SyllepticContext ctx = standard_context();
  FinAbGroup G{{2}};
  IntMat f(2, 1);
  f << a0, a1;
  GradedPremetricGroup x;
  x.context = ctx;
  x.G = G;
  x.f = GroupHom{G, ctx.A, f};
  x.q = zero_form(G);
  x.q.gen_values[0] = qval;
  return x;
}

GradedPremetricGroup residue_square() {
  SyllepticContext ctx = standard_context();
  FinAbGroup G{{2, 2}};
  GradedPremetricGroup x;
  x.context = ctx;
  x.G = G;
  x.f = GroupHom{G, ctx.A, IntMat::Zero(2, 2)};
  x.q = zero_form(G);
  x.q.gen_values[0] = QZ(1, 2);
  x.q.gen_values[1] = QZ(1, 2);
  x.q.off(0, 1) = QZ(1, 2);
  return x;
}

}  // namespace

GradedPremetricGroup preset_object(const std::string& name) {
  if (name == "a") return line_generator(1, 0, QZ(1, 4));
  if (name == "b") return line_generator(0, 1, QZ(1, 4));
  if (name == "c") return line_generator(1, 1, QZ(0, 1));
  if (name == "ab") return twisted_product(preset_object("a"), preset_object("b"));
  if (name == "a2b")
    return twisted_product(twisted_product(preset_object("a"), preset_object("a")),
                           preset_object("b"));
  if (name == "C" || name == "z") return residue_square();
  if (name == "L") {
    GradedPremetricGroup x = residue_square();
    x.q = zero_form(x.G);
    return x;
  }
  throw ParseError("unknown preset: " + name);
}

std::vector<GradedPremetricGroup> preset_generators(const std::string& name) {
  if (name == "ab-generators") return {preset_object("a"), preset_object("b")};
  throw ParseError("unknown generator preset: " + name);
}

std::map<std::string, std::string> parse_flat_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (key.empty()) throw ParseError("config line " + std::to_string(lineno) + ": empty key");
    out[key] = value;
  }
  return out;
}

Json make_triviality_certificate(const GradedPremetricGroup& x, const TrivialityCertificate& c) {
  return Json{{"kind", "triviality"}, {"object", x}, {"certificate", certificate_to_json(c)}};
}

Json make_trace_certificate(const ReductionTrace& t) {
  return Json{{"kind", "trace"}, {"trace", trace_to_json(t)}};
}

Json make_order_certificate(const GradedPremetricGroup& x, const std::string& kind, Int order,
                            const std::optional<ReductionTrace>& witness) {
  Json j{{"kind", "order"}, {"object", x}, {"order_kind", kind}, {"order", order}};
  j["witness"] = witness ? make_trace_certificate(*witness) : Json();
  return j;
}

Json make_group_certificate(const std::vector<GradedPremetricGroup>& generators,
                            const GroupStructureReport& rep) {
  Json gens = Json::array();
  for (const auto& g : generators) gens.push_back(g);
  Json hist = Json::object();
  for (const auto& [ord, count] : rep.order_histogram) hist[std::to_string(ord)] = count;
  return Json{{"kind", "group"},
              {"generators", gens},
              {"order", rep.order},
              {"order_histogram", hist},
              {"abelian", rep.abelian},
              {"center_order", rep.center_order},
              {"label", rep.label}};
}

namespace {

CertCheck check_trace_json(const Json& tj) {
  ReductionTrace t = trace_from_json(tj);
  GradedPremetricGroup replayed = replay_trace(t);
  if (Json(replayed) != Json(t.final_object))
    return {false, "replayed steps do not reach the recorded final object"};
  if (t.final_certificate && !verify_certificate(t.final_object, *t.final_certificate))
    return {false, "final certificate does not verify"};
  if (t.used_stabilization) {
    if (!t.stabilizer || !t.stabilized_certificate)
      return {false, "stabilization claimed without stabilizer data"};
    GradedPremetricGroup pad = trivially_graded(t.final_object.context, *t.stabilizer);
    GradedPremetricGroup prod = twisted_product(t.final_object, pad);
    if (!verify_certificate(prod, *t.stabilized_certificate))
      return {false, "stabilized certificate does not verify"};
  }
  return {true, "trace replays and certificates verify"};
}

}  // namespace

CertCheck check_certificate(const Json& j) {
  std::string kind;
  try {
    kind = j.at("kind").get<std::string>();
    if (kind == "triviality") {
      GradedPremetricGroup x = j.at("object").get<GradedPremetricGroup>();
      TrivialityCertificate c = certificate_from_json(x.G, j.at("certificate"));
      if (!verify_certificate(x, c)) return {false, "certificate does not verify"};
      return {true, "Lagrangian verifies"};
    }
    if (kind == "trace") return check_trace_json(j.at("trace"));
    if (kind == "order") {
      GradedPremetricGroup x = j.at("object").get<GradedPremetricGroup>();
      std::string order_kind = j.at("order_kind").get<std::string>();
      Int claimed = j.at("order").get<Int>();
      Int got = order_kind == "raw" ? order_raw(x) : order_mod_witt(x);
      if (got != claimed)
        return {false, "recomputed order " + std::to_string(got) + " != claimed " +
                           std::to_string(claimed)};
      if (j.contains("witness") && !j.at("witness").is_null()) {
        CertCheck inner = check_certificate(j.at("witness"));
        if (!inner.ok) return inner;
      }
      return {true, "order recomputed and witness verified"};
    }
    if (kind == "group") {
      std::vector<GradedPremetricGroup> gens;
      for (const Json& gj : j.at("generators")) gens.push_back(gj.get<GradedPremetricGroup>());
      GroupStructureReport rep = group_structure(gens);
      Json hist = Json::object();
      for (const auto& [ord, count] : rep.order_histogram) hist[std::to_string(ord)] = count;
      if (rep.order != j.at("order").get<Int>()) return {false, "group order mismatch"};
      if (hist != j.at("order_histogram")) return {false, "order histogram mismatch"};
      if (rep.abelian != j.at("abelian").get<bool>()) return {false, "abelian flag mismatch"};
      if (rep.center_order != j.at("center_order").get<Int>())
        return {false, "center order mismatch"};
      if (rep.label != j.at("label").get<std::string>()) return {false, "label mismatch"};
      return {true, "group structure recomputed and matches"};
    }
  } catch (const CapExceeded&) {
    throw;
  } catch (const OrderCapExceeded&) {
    throw;
  } catch (const std::exception& e) {
    return {false, std::string("certificate rejected: ") + e.what()};
  }
  return {false, "unknown certificate kind: " + kind};
}

}  // namespace tycat
