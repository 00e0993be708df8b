// Copyright 2023 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flatgeom/io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "flatgeom/error.h"

namespace flatgeom {

namespace {

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kParse, what);
}

const Json& Field(const Json& j, const std::string& key) {
  if (!j.is_object()) Bad("expected an object holding '" + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) Bad("missing field '" + key + "'");
  return *it;
}

const Json* OptionalField(const Json& j, const std::string& key) {
  if (!j.is_object()) Bad("expected an object holding '" + key + "'");
  const auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

int AsInt(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) Bad("'" + where + "' must be an integer");
  const int64_t x = v.get<int64_t>();
  if (x < -(int64_t{1} << 30) || x > (int64_t{1} << 30)) {
    Bad("'" + where + "' is out of range");
  }
  return static_cast<int>(x);
}

int IntField(const Json& j, const std::string& key) {
  return AsInt(Field(j, key), key);
}

const Json& ArrayField(const Json& j, const std::string& key) {
  const Json& v = Field(j, key);
  if (!v.is_array()) Bad("'" + key + "' must be an array");
  return v;
}

std::vector<int> IntList(const Json& v, const std::string& where) {
  if (!v.is_array()) Bad("'" + where + "' must be an array of integers");
  std::vector<int> out;
  for (const Json& x : v) out.push_back(AsInt(x, where));
  return out;
}

std::vector<std::vector<int>> Tuples(const Json& v, const std::string& where) {
  if (!v.is_array()) Bad("'" + where + "' must be an array of tuples");
  std::vector<std::vector<int>> out;
  for (const Json& t : v) out.push_back(IntList(t, where));
  return out;
}

std::vector<std::string> Labels(const Json& j) {
  std::vector<std::string> labels;
  if (const Json* l = OptionalField(j, "labels")) {
    if (!l->is_array()) Bad("'labels' must be an array of strings");
    for (const Json& s : *l) {
      if (!s.is_string()) Bad("'labels' must be an array of strings");
      labels.push_back(s.get<std::string>());
    }
  }
  return labels;
}

Json OptionalSet(const std::optional<ElementSet>& s) {
  return s ? SetToJson(*s) : Json(nullptr);
}

Json Index(int i) { return i < 0 ? Json(nullptr) : Json(i); }

}  // namespace

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(
        e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    const std::size_t colon = what.rfind(": ");
    if (colon != std::string::npos) what = what.substr(colon + 2);
    Bad("malformed JSON at line " + std::to_string(line) + ", column " +
        std::to_string(column) + " (byte " + std::to_string(e.byte) +
        "): " + what);
  }
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Bad("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return ParseJson(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string Dump(const Json& j) { return j.dump(); }

Json SetToJson(ElementSet set) { return Json(set.ToVector()); }

ElementSet SetFromJson(const Json& j, int size) {
  const std::vector<int> ids = IntList(j, "set");
  for (int id : ids) {
    if (id < 0 || id >= size) {
      throw Error(ErrorCode::kInvalidElement,
                  "element " + std::to_string(id) + " is outside [0, " +
                      std::to_string(size) + ")");
    }
  }
  return ElementSet::FromIds(ids);
}

Matroid MatroidFromJson(const Json& j) {
  const Json& type = Field(j, "type");
  if (!type.is_string()) Bad("'type' must be a string");
  const std::string kind = type.get<std::string>();
  if (kind == "linear") {
    return Matroid::Linear(IntField(j, "field"),
                           Tuples(ArrayField(j, "columns"), "columns"),
                           Labels(j));
  }
  if (kind == "uniform") {
    return Matroid::Uniform(IntField(j, "rank"), IntField(j, "size"));
  }
  if (kind == "closure-table") {
    const int n = IntField(j, "ground");
    if (n < 0 || n > 64) {
      throw Error(ErrorCode::kGroundTooLarge, "ground must be in [0, 64]");
    }
    std::vector<ClosureEntry> entries;
    for (const Json& e : ArrayField(j, "closure")) {
      entries.push_back(ClosureEntry{SetFromJson(Field(e, "set"), n),
                                     SetFromJson(Field(e, "cl"), n)});
    }
    return Matroid::ClosureTable(n, std::move(entries), Labels(j));
  }
  Bad("unknown matroid type '" + kind + "'");
}

Json MatroidToJson(const Matroid& m) {
  Json j;
  if (const auto* lin = std::get_if<LinearOracle>(&m.oracle())) {
    j["type"] = "linear";
    j["field"] = lin->field;
    j["columns"] = lin->columns;
  } else if (const auto* uni = std::get_if<UniformOracle>(&m.oracle())) {
    j["type"] = "uniform";
    j["rank"] = uni->rank;
    j["size"] = m.size();
  } else {
    const auto& table = std::get<ClosureTableOracle>(m.oracle());
    j["type"] = "closure-table";
    j["ground"] = m.size();
    Json entries = Json::array();
    for (const ClosureEntry& e : table.entries) {
      entries.push_back({{"set", SetToJson(e.set)}, {"cl", SetToJson(e.closure)}});
    }
    j["closure"] = entries;
  }
  if (!m.labels().empty()) j["labels"] = m.labels();
  return j;
}

GeometricStructure StructureFromJson(const Json& j) {
  Matroid m = MatroidFromJson(Field(j, "matroid"));
  if (const Json* u = OptionalField(j, "universe")) {
    if (AsInt(*u, "universe") != m.size()) {
      throw Error(ErrorCode::kInvalidStructure,
                  "universe size differs from the matroid's ground set");
    }
  }
  const Json& phi = Field(j, "phi");
  PhiRelation rel{IntField(phi, "arity"), Tuples(ArrayField(phi, "tuples"), "tuples")};
  return GeometricStructure::Create(std::move(m), std::move(rel),
                                    IntField(j, "K"));
}

Json StructureToJson(const GeometricStructure& g) {
  return {{"universe", g.universe_size()},
          {"matroid", MatroidToJson(g.matroid())},
          {"phi", {{"arity", g.phi().arity}, {"tuples", g.phi().tuples}}},
          {"K", g.fiber_bound()}};
}

namespace {

FiberKey ParseCountKey(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) Bad("count key '" + text + "' lacks ':'");
  FiberKey key;
  const auto parse_int = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      Bad("count key '" + text + "' is not of the form pos:k1,k2,...");
    }
    return v;
  };
  key.position = parse_int(std::string_view(text).substr(0, colon));
  std::string_view rest = std::string_view(text).substr(colon + 1);
  while (true) {
    const std::size_t comma = rest.find(',');
    key.rest.push_back(parse_int(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return key;
}

std::string CountKeyText(const FiberKey& key) {
  std::string s = std::to_string(key.position) + ":";
  for (std::size_t i = 0; i < key.rest.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(key.rest[i]);
  }
  return s;
}

}  // namespace

LambdaScenario LambdaScenarioFromJson(const Json& j) {
  Matroid m = MatroidFromJson(Field(j, "matroid"));
  const int n = m.size();
  const Json& phi = Field(j, "phi");
  const int arity = IntField(phi, "arity");
  // Explicit reveals first; phi-only tuples then default to stage 1.
  std::map<std::vector<int>, int> stage_of;
  if (const Json* stages = OptionalField(j, "stages")) {
    if (!stages->is_array()) Bad("'stages' must be an array");
    int s = 0;
    for (const Json& stage : *stages) {
      ++s;
      for (const auto& t : Tuples(ArrayField(stage, "reveal"), "reveal")) {
        const auto [it, fresh] = stage_of.emplace(t, s);
        if (!fresh && it->second != s) Bad("tuple revealed at two stages");
      }
    }
  }
  for (const auto& t : Tuples(ArrayField(phi, "tuples"), "tuples")) {
    stage_of.emplace(t, 1);
  }
  PhiRelation rel{arity, {}};
  for (const auto& [t, s] : stage_of) rel.tuples.push_back(t);
  if (const Json* u = OptionalField(j, "universe")) {
    if (AsInt(*u, "universe") != n) {
      throw Error(ErrorCode::kInvalidStructure,
                  "universe size differs from the matroid's ground set");
    }
  }
  GeometricStructure g =
      GeometricStructure::Create(std::move(m), std::move(rel), IntField(j, "K"));
  std::vector<int> reveal;
  for (const auto& t : g.phi().tuples) reveal.push_back(stage_of.at(t));
  std::map<FiberKey, int> counts;
  if (const Json* c = OptionalField(j, "counts")) {
    if (!c->is_object()) Bad("'counts' must be an object");
    for (const auto& [k, v] : c->items()) counts[ParseCountKey(k)] = AsInt(v, k);
  }
  ElementSet core;
  if (const Json* c = OptionalField(j, "core")) core = SetFromJson(*c, n);
  LambdaScenario out{EnumeratedStructure::Create(std::move(g), std::move(reveal),
                                                 std::move(counts), core),
                     {}, {}, {}};
  if (const Json* b = OptionalField(j, "bbar")) out.bbar = SetFromJson(*b, n);
  if (const Json* x = OptionalField(j, "expected_acl")) {
    out.expected_acl = SetFromJson(*x, n);
  }
  if (j.contains("expected_ild")) {
    const Json& v = j.at("expected_ild");
    out.expected_ild = v.is_null() ? std::optional<int>()
                                   : std::optional<int>(AsInt(v, "expected_ild"));
  }
  return out;
}

Json LambdaScenarioToJson(const LambdaScenario& s) {
  const EnumeratedStructure& e = s.structure;
  Json j = StructureToJson(e.limit());
  Json stages = Json::array();
  for (int st = 1; st <= e.stage_count(); ++st) {
    Json reveal = Json::array();
    for (std::size_t i = 0; i < e.limit().phi().tuples.size(); ++i) {
      if (e.reveal_stage()[i] == st) reveal.push_back(e.limit().phi().tuples[i]);
    }
    stages.push_back({{"reveal", reveal}});
  }
  j["stages"] = stages;
  Json counts = Json::object();
  for (const auto& [key, c] : e.declared_counts()) counts[CountKeyText(key)] = c;
  j["counts"] = counts;
  j["core"] = SetToJson(e.core());
  if (s.bbar) j["bbar"] = SetToJson(*s.bbar);
  if (s.expected_acl) j["expected_acl"] = SetToJson(*s.expected_acl);
  if (s.expected_ild) {
    j["expected_ild"] = *s.expected_ild ? Json(**s.expected_ild) : Json(nullptr);
  }
  return j;
}

StagewisePresentation PresentationFromJson(const Json& j) {
  const Json& st = Field(j, "structure");
  RelationalStructure rs;
  std::optional<Matroid> matroid;
  if (const Json* m = OptionalField(st, "matroid")) matroid = MatroidFromJson(*m);
  rs.size = IntField(st, "universe");
  if (const Json* rels = OptionalField(st, "relations")) {
    if (!rels->is_array()) Bad("'relations' must be an array");
    for (const Json& r : *rels) {
      const Json& name = Field(r, "name");
      if (!name.is_string()) Bad("relation 'name' must be a string");
      Relation rel{name.get<std::string>(), IntField(r, "arity"), {}};
      for (auto& t : Tuples(ArrayField(r, "tuples"), "tuples")) {
        rel.tuples.insert(std::move(t));
      }
      rs.relations.push_back(std::move(rel));
    }
  }
  std::vector<std::string> order;
  if (const Json* o = OptionalField(j, "signature_order")) {
    if (!o->is_array()) Bad("'signature_order' must be an array");
    for (const Json& s : *o) {
      if (!s.is_string()) Bad("'signature_order' must list names");
      order.push_back(s.get<std::string>());
    }
  } else {
    for (const Relation& r : rs.relations) order.push_back(r.name);
  }
  return StagewisePresentation::Create(std::move(rs), std::move(order),
                                       std::move(matroid));
}

GoingDownScenario GoingDownScenarioFromJson(const Json& j) {
  StagewisePresentation p = PresentationFromJson(j);
  const int n = p.size();
  const ElementSet target = SetFromJson(Field(j, "M"), n);
  std::vector<Flip> flips;
  std::map<int, int> per_element;
  if (const Json* fs = OptionalField(j, "flips")) {
    if (!fs->is_array()) Bad("'flips' must be an array");
    for (const Json& f : *fs) {
      const Json& in = Field(f, "in");
      if (!in.is_boolean()) Bad("flip 'in' must be a boolean");
      flips.push_back(Flip{IntField(f, "elem"), IntField(f, "stage"),
                           in.get<bool>()});
      ++per_element[flips.back().element];
    }
  }
  int budget = 0;
  for (const auto& [x, c] : per_element) budget = std::max(budget, c);
  if (const Json* b = OptionalField(j, "flip_budget")) {
    budget = AsInt(*b, "flip_budget");
  }
  Delta2Schedule m = Delta2Schedule::Create(n, target, std::move(flips), budget);
  std::vector<int> order;
  if (const Json* a = OptionalField(j, "A")) order = IntList(*a, "A");
  std::map<int, int> stages;
  if (const Json* s = OptionalField(j, "A_stages")) {
    if (!s->is_object()) Bad("'A_stages' must be an object");
    for (const auto& [k, v] : s->items()) {
      int x = 0;
      const auto [ptr, ec] = std::from_chars(k.data(), k.data() + k.size(), x);
      if (ec != std::errc() || ptr != k.data() + k.size()) {
        Bad("'A_stages' keys must be element ids");
      }
      stages[x] = AsInt(v, "A_stages");
    }
  }
  Sigma1Schedule a = Sigma1Schedule::Create(n, std::move(order), std::move(stages));
  return GoingDownScenario{std::move(p), std::move(m), std::move(a),
                           IntField(j, "horizon")};
}

Json GoingDownScenarioToJson(const GoingDownScenario& s) {
  const StagewisePresentation& p = s.presentation;
  Json rels = Json::array();
  for (const Relation& r : p.structure().relations) {
    rels.push_back({{"name", r.name},
                    {"arity", r.arity},
                    {"tuples", std::vector<std::vector<int>>(r.tuples.begin(),
                                                             r.tuples.end())}});
  }
  Json structure = {{"universe", p.size()}, {"relations", rels}};
  if (p.matroid()) structure["matroid"] = MatroidToJson(*p.matroid());
  Json order = Json::array();
  for (int r : p.order()) order.push_back(p.structure().relations[r].name);
  Json flips = Json::array();
  for (const Flip& f : s.schedule.flips()) {
    flips.push_back({{"elem", f.element}, {"stage", f.stage}, {"in", f.in}});
  }
  Json a_stages = Json::object();
  for (int x : s.enumeration.order()) {
    a_stages[std::to_string(x)] = s.enumeration.StageOf(x);
  }
  return {{"structure", structure},
          {"signature_order", order},
          {"M", SetToJson(s.schedule.target())},
          {"flips", flips},
          {"flip_budget", s.schedule.flip_budget()},
          {"A", s.enumeration.order()},
          {"A_stages", a_stages},
          {"horizon", s.horizon}};
}

Json ToJson(const PregeometryReport& r) {
  Json j = {{"passed", r.passed()},
            {"exhaustive", r.exhaustive},
            {"checks", r.checks},
            {"violation", nullptr}};
  if (r.violation) {
    j["violation"] = {{"axiom", AxiomKindName(r.violation->kind)},
                      {"a", Index(r.violation->a)},
                      {"b", Index(r.violation->b)},
                      {"set", SetToJson(r.violation->set)}};
  }
  return j;
}

Json ToJson(const std::vector<Circuit>& circuits) {
  Json list = Json::array();
  for (const Circuit& c : circuits) list.push_back(SetToJson(c.elements));
  return {{"count", circuits.size()}, {"circuits", list}};
}

Json ToJson(const FlatnessVerdict& v) {
  Json j = {{"status", FlatnessStatusName(v.status)},
            {"bound", v.bound},
            {"flat_count", v.flat_count},
            {"collections_checked", v.collections_checked},
            {"witness", nullptr}};
  if (v.witness) {
    Json flats = Json::array();
    for (const Flat& f : v.witness->sigma.flats()) {
      flats.push_back({{"elements", SetToJson(f.elements)}, {"dim", f.dim}});
    }
    j["witness"] = {{"flats", flats},
                    {"delta", v.witness->delta},
                    {"union_dim", v.witness->union_dim}};
  }
  return j;
}

Json ToJson(const PpsConfig& c) {
  return {{"x", SetToJson(c.net)}, {"a1", c.a1}, {"a2", c.a2}, {"t1", c.t1}};
}

Json ToJson(const PpsRun& run) {
  return {{"config", ToJson(run.sequence.config)},
          {"ts", run.sequence.ts},
          {"status", PpsStatusName(run.status)},
          {"repeat_of", Index(run.repeat_of)},
          {"cycle_length", run.CycleLength()}};
}

Json ToJson(const PpsRunResult& r) {
  Json runs = Json::array();
  for (const PpsRun& run : r.runs) runs.push_back(ToJson(run));
  return {{"runs", runs}, {"truncated", r.truncated}};
}

Json ToJson(const PpsReport& r) {
  return {{"config_valid", r.config_valid},
          {"step_valid", r.step_valid},
          {"first_bad_step", Index(r.first_bad_step)},
          {"outside_closure", r.outside_closure},
          {"first_inside", Index(r.first_inside)},
          {"injective", r.injective},
          {"repeat", r.injective ? Json(nullptr)
                                 : Json::array({r.repeat_first, r.repeat_second})}};
}

Json ToJson(const CycleSearchResult& r) {
  return {{"status", CycleSearchStatusName(r.status)},
          {"witness", r.witness ? ToJson(*r.witness) : Json(nullptr)},
          {"configs", r.configs},
          {"sequences", r.sequences}};
}

Json ToJson(const LambdaResult& r) {
  Json iterates = Json::array();
  for (ElementSet s : r.iterates) iterates.push_back(SetToJson(s));
  const bool fix = r.status == LambdaResult::Status::kFixpoint;
  Json growth = Json::array();
  for (ElementSet s : r.iterates) growth.push_back(s.size());
  return {{"status", fix ? "Fixpoint" : "Diverging"},
          {"fixpoint_index", fix ? Json(r.fixpoint_index) : Json(nullptr)},
          {"iterates", iterates},
          {"growth", growth},
          {"closure", SetToJson(r.closure())}};
}

Json ToJson(const StagedLambda& r) {
  Json iterates = Json::array();
  for (ElementSet s : r.iterates) iterates.push_back(SetToJson(s));
  Json escape = nullptr;
  if (r.escape_key) {
    escape = {{"position", r.escape_key->position}, {"rest", r.escape_key->rest}};
  }
  return {{"status", StagedStatusName(r.status)},
          {"iterates", iterates},
          {"escape", escape}};
}

Json ToJson(const AclEnumeration& r) {
  Json emissions = Json::array();
  for (const auto& e : r.emissions) {
    emissions.push_back({{"element", e.element}, {"stage", e.stage}});
  }
  return {{"status", r.complete ? "Complete" : "BudgetExceeded"},
          {"emissions", emissions},
          {"emitted", SetToJson(r.emitted)},
          {"stages_run", r.stages_run}};
}

Json ToJson(const IldEstimate& r) {
  return {{"value", r.value == IldEstimate::kInfinite ? Json("infinite")
                                                       : Json(r.value)},
          {"certainty", r.certified ? "Certified" : "LowerBoundOnly"},
          {"witness", OptionalSet(r.witness)},
          {"stage", r.stage}};
}

Json ToJson(const PsiReport& r) {
  return {{"totality", r.totality},
          {"first_unwitnessed", r.totality ? Json(nullptr) : Json(r.first_unwitnessed)},
          {"bounded", r.bounded},
          {"first_overfull", r.bounded ? Json(nullptr) : Json(r.first_overfull)},
          {"dependent", r.dependent},
          {"isolation_declared", r.isolation_declared},
          {"holds_on_x", r.holds_on_x}};
}

Json ToJson(const ConstructionTrace& t, const StagewisePresentation& p) {
  const auto name = [&](int r) { return p.structure().relations[r].name; };
  Json stages = Json::array();
  for (const StageRecord& rec : t.stages) {
    Json s = {{"stage", rec.stage},
              {"event", EventKindName(rec.event)},
              {"map", rec.map}};
    if (rec.symbol >= 0) s["symbol"] = name(rec.symbol);
    if (rec.event == EventKind::kExtend) {
      s["element"] = rec.element;
      s["image"] = rec.image;
    }
    if (rec.z >= 0) {
      s["z"] = rec.z;
      s["ybar"] = rec.ybar;
    }
    if (rec.event == EventKind::kOutcome2) {
      s["a"] = rec.a;
      s["ybar_prime"] = rec.ybar_prime;
    }
    stages.push_back(s);
  }
  Json symbols = Json::array();
  Json diagram = Json::object();
  for (std::size_t i = 0; i < t.symbols.size(); ++i) {
    symbols.push_back(name(t.symbols[i]));
    diagram[name(t.symbols[i])] = std::vector<std::vector<int>>(
        t.diagram[i].begin(), t.diagram[i].end());
  }
  return {{"status", TraceStatusName(t.status)},
          {"stuck_since", Index(t.stuck_since)},
          {"horizon", t.horizon},
          {"corrections", t.corrections},
          {"stages", stages},
          {"limit_map", t.limit_map},
          {"settled_at", t.settled_at},
          {"symbols", symbols},
          {"diagram", diagram},
          {"outcome1_count", t.outcome1_count},
          {"outcome2_count", t.outcome2_count},
          {"longest_wait", t.longest_wait}};
}

Json ToJson(const TraceReport& r) {
  return {{"passed", r.passed()},
          {"stabilized", r.stabilized},
          {"permanent", r.permanent},
          {"isomorphism", r.isomorphism},
          {"surjective", r.surjective},
          {"detail", r.detail}};
}

Json ToJson(const Delta2Schedule& m) {
  Json flips = Json::array();
  for (const Flip& f : m.flips()) {
    flips.push_back({{"elem", f.element}, {"stage", f.stage}, {"in", f.in}});
  }
  Json stages = Json::array();
  for (int s = 0; s <= m.LastFlipStage(); ++s) stages.push_back(SetToJson(m.At(s)));
  return {{"target", SetToJson(m.target())},
          {"flips", flips},
          {"flip_budget", m.flip_budget()},
          {"stages", stages}};
}

Json ToJson(const ProfileReport& r) {
  Json violations = Json::array();
  for (const RuleViolation& v : r.violations) {
    violations.push_back({{"rule", v.rule}, {"message", v.message}});
  }
  return {{"valid", r.valid()}, {"violations", violations}};
}

Json ToJson(const Verdict& v) {
  Json rules = Json::array();
  for (const RuleViolation& r : v.rules) {
    rules.push_back({{"rule", r.rule}, {"message", r.message}});
  }
  Json j = {{"verdict", VerdictKindName(v.kind)}, {"rules", rules}};
  if (v.kind == Verdict::Kind::kAllowed) {
    j["shape"] = v.shape;
    j["instance"] = v.instance;
  }
  if (v.kind == Verdict::Kind::kOpenUnknown) j["open_set"] = v.instance;
  return j;
}

Json ToJson(const std::vector<CaseRow>& rows) {
  Json list = Json::array();
  int counts[3] = {0, 0, 0};
  for (const CaseRow& row : rows) {
    ++counts[static_cast<int>(row.category)];
    list.push_back({{"set", row.set.ToString()},
                    {"category", CaseCategoryName(row.category)},
                    {"classify", ToJson(row.verdict)}});
  }
  return {{"rows", list},
          {"shape_covered", counts[0]},
          {"open", counts[1]},
          {"excluded", counts[2]}};
}

}  // namespace flatgeom
