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

#include "flatgeom/flatgeom.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "flatgeom/corpus.h"
#include "flatgeom/error.h"
#include "flatgeom/io.h"

using flatgeom::ElementSet;
using flatgeom::Error;
using flatgeom::ErrorCode;
using flatgeom::Json;

struct fg_matroid {
  flatgeom::Matroid m;
};
struct fg_structure {
  flatgeom::GeometricStructure g;
};
struct fg_lambda_scenario {
  flatgeom::LambdaScenario s;
};
struct fg_going_down {
  flatgeom::GoingDownScenario s;
};

namespace {

thread_local std::string last_error;

fg_status Fail(fg_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into a status and a message.
template <typename F>
fg_status Guard(F&& body) {
  last_error.clear();
  try {
    body();
    return FG_OK;
  } catch (const Error& e) {
    return Fail(static_cast<fg_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(FG_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(FG_INTERNAL, e.what());
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

char* Emit(Json j) {
  j["v"] = flatgeom::kSchemaVersion;
  const std::string text = flatgeom::Dump(j);
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

ElementSet Ids(const int* ids, size_t count, int size) {
  Require(ids != nullptr || count == 0, "null id array");
  ElementSet s;
  for (size_t i = 0; i < count; ++i) {
    if (ids[i] < 0 || ids[i] >= size) {
      throw Error(ErrorCode::kInvalidElement,
                  "element " + std::to_string(ids[i]) + " is outside [0, " +
                      std::to_string(size) + ")");
    }
    s = s.With(ids[i]);
  }
  return s;
}

}  // namespace

extern "C" {

const char* fg_version(void) { return "1.0.0"; }

const char* fg_status_name(fg_status status) {
  if (status == FG_OK) return "Ok";
  if (status < FG_INVALID_ARGUMENT || status > FG_INTERNAL) return "Unknown";
  return flatgeom::ErrorCodeName(static_cast<ErrorCode>(status));
}

const char* fg_last_error(void) { return last_error.c_str(); }

void fg_string_free(char* s) { std::free(s); }

fg_status fg_matroid_from_json(const char* json, fg_matroid** out) {
  return Guard([&] {
    Require(json && out, "null argument");
    *out = new fg_matroid{flatgeom::MatroidFromJson(flatgeom::ParseJson(json))};
  });
}

fg_status fg_matroid_from_corpus(const char* name, fg_matroid** out) {
  return Guard([&] {
    Require(name && out, "null argument");
    const flatgeom::CorpusEntry& e = flatgeom::CorpusEntryNamed(name);
    Require(e.kind == flatgeom::CorpusKind::kMatroid, "entry is not a matroid");
    *out = new fg_matroid{flatgeom::MatroidFromJson(e.json)};
  });
}

void fg_matroid_free(fg_matroid* m) { delete m; }

fg_status fg_matroid_size(const fg_matroid* m, int* out) {
  return Guard([&] {
    Require(m && out, "null argument");
    *out = m->m.size();
  });
}

fg_status fg_matroid_rank(const fg_matroid* m, const int* ids, size_t count,
                          int* out) {
  return Guard([&] {
    Require(m && out, "null argument");
    *out = m->m.RankOf(Ids(ids, count, m->m.size()));
  });
}

fg_status fg_matroid_closure(const fg_matroid* m, const int* ids, size_t count,
                             int* out_ids, size_t capacity, size_t* out_count) {
  return Guard([&] {
    Require(m && out_count, "null argument");
    Require(out_ids != nullptr || capacity == 0, "null output array");
    const ElementSet cl = m->m.ClosureOf(Ids(ids, count, m->m.size()));
    size_t i = 0;
    for (int id : cl) {
      if (i < capacity) out_ids[i] = id;
      ++i;
    }
    *out_count = i;
  });
}

fg_status fg_matroid_to_json(const fg_matroid* m, char** out) {
  return Guard([&] {
    Require(m && out, "null argument");
    *out = Emit(flatgeom::MatroidToJson(m->m));
  });
}

fg_status fg_verify_pregeometry(const fg_matroid* m, int bound, int sample,
                                uint64_t seed, char** out) {
  return Guard([&] {
    Require(m && out, "null argument");
    flatgeom::VerifyOptions options;
    if (bound > 0) options.bound = bound;
    options.sample = sample != 0;
    options.seed = seed;
    *out = Emit(flatgeom::ToJson(flatgeom::VerifyPregeometry(m->m, options)));
  });
}

fg_status fg_circuits(const fg_matroid* m, int max_size, char** out) {
  return Guard([&] {
    Require(m && out, "null argument");
    if (max_size <= 0) max_size = m->m.size();
    *out = Emit(flatgeom::ToJson(flatgeom::Circuits(m->m, max_size)));
  });
}

fg_status fg_carousel_check(const fg_matroid* m, const int* abar,
                            size_t abar_count, const int* bs, size_t bs_count,
                            int* out) {
  return Guard([&] {
    Require(m && out, "null argument");
    Require(bs != nullptr || bs_count == 0, "null id array");
    const ElementSet a = Ids(abar, abar_count, m->m.size());
    *out = flatgeom::CarouselCheck(m->m, a, std::span<const int>(bs, bs_count))
               ? 1
               : 0;
  });
}

fg_status fg_delta(const fg_matroid* m, const char* flats_json, int64_t* delta,
                   int* union_dim) {
  return Guard([&] {
    Require(m && flats_json && delta && union_dim, "null argument");
    const Json j = flatgeom::ParseJson(flats_json);
    if (!j.is_array()) throw Error(ErrorCode::kParse, "expected an array of sets");
    std::vector<ElementSet> sets;
    for (const Json& s : j) sets.push_back(flatgeom::SetFromJson(s, m->m.size()));
    const auto sigma = flatgeom::FlatCollection::Of(m->m, std::move(sets));
    *delta = flatgeom::Delta(m->m, sigma);
    *union_dim = flatgeom::UnionDim(m->m, sigma);
  });
}

fg_status fg_check_flat(const fg_matroid* m, int max_sigma, int exhaustive,
                        char** out) {
  return Guard([&] {
    Require(m && out, "null argument");
    flatgeom::FlatnessOptions options;
    if (max_sigma > 0) options.max_collection_size = max_sigma;
    options.exhaustive = exhaustive != 0;
    *out = Emit(flatgeom::ToJson(flatgeom::CheckFlat(m->m, options)));
  });
}

fg_status fg_pps_run(const fg_matroid* m, const int* net, size_t net_count,
                     int a1, int a2, int t1, int strategy, int budget,
                     char** out) {
  return Guard([&] {
    Require(m && out, "null argument");
    Require(strategy == 0 || strategy == 1, "strategy must be 0 or 1");
    Require(budget >= 1, "budget must be >= 1");
    const flatgeom::PpsConfig config{Ids(net, net_count, m->m.size()), a1, a2, t1};
    const flatgeom::PpsRunResult r = flatgeom::PpsRunSearch(
        m->m, config,
        strategy == 0 ? flatgeom::PpsStrategy::kLeast
                      : flatgeom::PpsStrategy::kAllBranches,
        budget);
    Json j = flatgeom::ToJson(r);
    Json reports = Json::array();
    for (const auto& run : r.runs) {
      reports.push_back(flatgeom::ToJson(flatgeom::PpsVerify(m->m, run.sequence)));
    }
    j["reports"] = reports;
    *out = Emit(std::move(j));
  });
}

fg_status fg_pps_find_cycle(const fg_matroid* m, int budget, char** out) {
  return Guard([&] {
    Require(m && out, "null argument");
    Require(budget >= 1, "budget must be >= 1");
    *out = Emit(flatgeom::ToJson(flatgeom::PpsFindCycle(m->m, budget)));
  });
}

fg_status fg_structure_from_json(const char* json, fg_structure** out) {
  return Guard([&] {
    Require(json && out, "null argument");
    *out = new fg_structure{flatgeom::StructureFromJson(flatgeom::ParseJson(json))};
  });
}

void fg_structure_free(fg_structure* g) { delete g; }

fg_status fg_lambda_closure(const fg_structure* g, const int* x, size_t count,
                            int budget, char** out) {
  return Guard([&] {
    Require(g && out, "null argument");
    const ElementSet seed = Ids(x, count, g->g.universe_size());
    *out = Emit(flatgeom::ToJson(
        flatgeom::LambdaClosure(g->g, seed, budget > 0 ? budget : 0)));
  });
}

fg_status fg_lambda_scenario_from_json(const char* json,
                                       fg_lambda_scenario** out) {
  return Guard([&] {
    Require(json && out, "null argument");
    *out = new fg_lambda_scenario{
        flatgeom::LambdaScenarioFromJson(flatgeom::ParseJson(json))};
  });
}

void fg_lambda_scenario_free(fg_lambda_scenario* s) { delete s; }

fg_status fg_lambda_scenario_stages(const fg_lambda_scenario* s, int* out) {
  return Guard([&] {
    Require(s && out, "null argument");
    *out = s->s.structure.stage_count();
  });
}

fg_status fg_acl_enumerate(const fg_lambda_scenario* s, const int* bbar,
                           size_t count, int budget, char** out) {
  return Guard([&] {
    Require(s && out, "null argument");
    const int n = s->s.structure.limit().universe_size();
    ElementSet b;
    if (bbar != nullptr) {
      b = Ids(bbar, count, n);
    } else {
      Require(s->s.bbar.has_value(), "scenario names no bbar");
      b = *s->s.bbar;
    }
    *out = Emit(flatgeom::ToJson(
        flatgeom::AclEnumerateViaLambda(s->s.structure, b, budget)));
  });
}

fg_status fg_ild_estimate(const fg_lambda_scenario* s, int budget, char** out) {
  return Guard([&] {
    Require(s && out, "null argument");
    *out = Emit(flatgeom::ToJson(flatgeom::IldEstimateOf(s->s.structure, budget)));
  });
}

fg_status fg_going_down_from_json(const char* json, fg_going_down** out) {
  return Guard([&] {
    Require(json && out, "null argument");
    *out = new fg_going_down{
        flatgeom::GoingDownScenarioFromJson(flatgeom::ParseJson(json))};
  });
}

void fg_going_down_free(fg_going_down* s) { delete s; }

fg_status fg_going_down_run(const fg_going_down* s, char** trace,
                            char** report) {
  return Guard([&] {
    Require(s && trace && report, "null argument");
    const auto& sc = s->s;
    const flatgeom::ConstructionTrace t =
        flatgeom::GoingDownRun(sc.presentation, sc.schedule, sc.enumeration,
                               sc.horizon);
    const flatgeom::TraceReport r = flatgeom::TraceVerify(
        t, sc.presentation, sc.schedule.target(), sc.enumeration);
    Json rj = flatgeom::ToJson(r);
    rj["status"] = flatgeom::TraceStatusName(t.status);
    rj["outcome1_count"] = t.outcome1_count;
    rj["outcome2_count"] = t.outcome2_count;
    rj["corrections"] = t.corrections;
    char* tj = Emit(flatgeom::ToJson(t, sc.presentation));
    try {
      *report = Emit(std::move(rj));
    } catch (...) {
      std::free(tj);
      throw;
    }
    *trace = tj;
  });
}

fg_status fg_acl_schedule(const fg_matroid* m, const int* bbar, size_t count,
                          const char* script, char** out) {
  return Guard([&] {
    Require(m && out, "null argument");
    const int n = m->m.size();
    std::vector<flatgeom::DelayEntry> delays;
    if (script != nullptr) {
      const Json j = flatgeom::ParseJson(script);
      if (!j.is_array()) throw Error(ErrorCode::kParse, "script must be an array");
      for (const Json& d : j) {
        if (!d.is_object() || !d.contains("element") || !d.contains("toggles")) {
          throw Error(ErrorCode::kParse,
                      "script entries need 'element' and 'toggles'");
        }
        delays.push_back({d.at("element").get<int>(), d.value("stage", 1),
                          d.at("toggles").get<int>()});
      }
    }
    flatgeom::RelationalStructure rs;
    rs.size = n;
    auto p = flatgeom::StagewisePresentation::Create(std::move(rs), {}, m->m);
    *out = Emit(flatgeom::ToJson(
        flatgeom::Delta2AclSchedule(p, Ids(bbar, count, n), delays)));
  });
}

fg_status fg_validate_profile(int n, int p, int ild, char** out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    flatgeom::TheoryProfile tp{n, {}, {}};
    if (p >= 0) tp.p = p;
    if (ild >= 0) tp.ild = ild;
    *out = Emit(flatgeom::ToJson(flatgeom::ValidateProfile(tp)));
  });
}

fg_status fg_spectrum_classify(int n, int p, const char* set, char** out) {
  return Guard([&] {
    Require(set && out, "null argument");
    flatgeom::TheoryProfile tp{n, {}, {}};
    if (p >= 0) tp.p = p;
    const auto s = flatgeom::SpectrumSet::Parse(set);
    Json j = flatgeom::ToJson(flatgeom::Classify(s, tp));
    j["set"] = s.ToString();
    *out = Emit(std::move(j));
  });
}

fg_status fg_spectrum_cases(int n, char** out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    *out = Emit(flatgeom::ToJson(
        flatgeom::EnumerateCaseAnalysis(flatgeom::TheoryProfile{n, {}, {}})));
  });
}

fg_status fg_corpus_list(char** out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    Json list = Json::array();
    for (const auto& e : flatgeom::Corpus()) {
      list.push_back({{"name", e.name},
                      {"kind", flatgeom::CorpusKindName(e.kind)},
                      {"description", e.description}});
    }
    *out = Emit({{"entries", list}});
  });
}

fg_status fg_corpus_entry(const char* name, char** out) {
  return Guard([&] {
    Require(name && out, "null argument");
    const flatgeom::CorpusEntry& e = flatgeom::CorpusEntryNamed(name);
    *out = Emit(e.json);
  });
}

fg_status fg_corpus_check(char** out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    Json rows = Json::array();
    bool all = true;
    for (const auto& c : flatgeom::CheckCorpus()) {
      rows.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
      all = all && c.ok;
    }
    *out = Emit({{"entries", rows}, {"passed", all}});
  });
}

}  // extern "C"
