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

// Command-line front end over the C interface. Prints one JSON document per
// invocation. Exit codes: 0 success, 1 negative verdict, 2 bad input,
// 3 internal failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "flatgeom/flatgeom.h"

namespace {

using Json = nlohmann::json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kBadInput = 2;
constexpr int kInternal = 3;

// Thrown to unwind with a failed C call.
struct CallFailed {
  fg_status status;
  std::string message;
};

struct InputError {
  std::string message;
};

void Check(fg_status status) {
  if (status != FG_OK) throw CallFailed{status, fg_last_error()};
}

// Owns a string handed out by the library.
std::string Take(char* s) {
  std::string out(s);
  fg_string_free(s);
  return out;
}

// "path/to/file.json" or "corpus:NAME".
std::string ReadInput(const std::string& where) {
  if (where.rfind("corpus:", 0) == 0) {
    char* out = nullptr;
    Check(fg_corpus_entry(where.substr(7).c_str(), &out));
    return Take(out);
  }
  std::ifstream in(where, std::ios::binary);
  if (!in) throw InputError{"cannot read " + where};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Prefixes parse diagnostics with the file they came from.
template <typename F>
void Load(const std::string& where, F&& load) {
  try {
    Check(load(ReadInput(where).c_str()));
  } catch (CallFailed& e) {
    e.message = where + ": " + e.message;
    throw;
  }
}

std::vector<int> ParseIds(const std::string& text) {
  std::vector<int> ids;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || v < 0) {
      throw InputError{"'" + token + "' is not an element id"};
    }
    ids.push_back(v);
  }
  return ids;
}

int Budget(int given, int fallback) {
  if (given > 0) return given;
  if (const char* env = std::getenv("FLATGEOM_BUDGET")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return fallback;
}

void Print(const std::string& json) { std::cout << json << "\n"; }

Json Parsed(const std::string& json) { return Json::parse(json); }

struct Matroid {
  fg_matroid* m = nullptr;
  explicit Matroid(const std::string& where) {
    Load(where, [&](const char* text) { return fg_matroid_from_json(text, &m); });
  }
  ~Matroid() { fg_matroid_free(m); }
};

struct LambdaScenario {
  fg_lambda_scenario* s = nullptr;
  explicit LambdaScenario(const std::string& where) {
    Load(where, [&](const char* text) {
      return fg_lambda_scenario_from_json(text, &s);
    });
  }
  ~LambdaScenario() { fg_lambda_scenario_free(s); }
  int stages() const {
    int n = 0;
    Check(fg_lambda_scenario_stages(s, &n));
    return n;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite pregeometries, flatness, closures and stagewise "
               "constructions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fg_version()));
  std::function<int()> action;
  const auto on = [&](CLI::App* sub, std::function<int()> f) {
    sub->callback([&action, f] { action = f; });
  };

  std::string matroid_path, structure_path, scenario_path;
  int budget = 0;

  // pregeom verify
  auto* pregeom = app.add_subcommand("pregeom", "pregeometry axioms");
  pregeom->require_subcommand(1);
  auto* verify = pregeom->add_subcommand("verify", "check every closure axiom");
  int bound = 0;
  bool sample = false;
  uint64_t seed = 0x5eed;
  verify->add_option("--matroid", matroid_path, "matroid JSON or corpus:NAME")->required();
  verify->add_option("--bound", bound, "largest ground set checked exhaustively");
  verify->add_flag("--sample", sample, "check random subsets instead");
  verify->add_option("--seed", seed, "sampling seed");
  on(verify, [&] {
    Matroid m(matroid_path);
    char* out = nullptr;
    Check(fg_verify_pregeometry(m.m, bound, sample ? 1 : 0, seed, &out));
    const std::string text = Take(out);
    Print(text);
    return Parsed(text)["passed"].get<bool>() ? kOk : kNegative;
  });

  // flatness
  auto* flatness = app.add_subcommand("flatness", "search for a flatness violation");
  int max_sigma = 4;
  bool exhaustive = false, expect_flat = false;
  flatness->add_option("--matroid", matroid_path)->required();
  flatness->add_option("--max-sigma", max_sigma, "largest collection size")
      ->check(CLI::Range(1, 24));
  flatness->add_flag("--exhaustive", exhaustive, "search every collection");
  flatness->add_flag("--expect-flat", expect_flat, "exit 1 unless flat");
  on(flatness, [&] {
    Matroid m(matroid_path);
    char* out = nullptr;
    Check(fg_check_flat(m.m, max_sigma, exhaustive ? 1 : 0, &out));
    const std::string text = Take(out);
    Print(text);
    const std::string status = Parsed(text)["status"].get<std::string>();
    const bool flat = status == "FlatUpTo" || status == "Flat";
    return expect_flat && !flat ? kNegative : kOk;
  });

  // circuits
  auto* circuits = app.add_subcommand("circuits", "list circuits");
  int max_size = 0;
  circuits->add_option("--matroid", matroid_path)->required();
  circuits->add_option("--max-size", max_size, "largest circuit listed");
  on(circuits, [&] {
    Matroid m(matroid_path);
    char* out = nullptr;
    Check(fg_circuits(m.m, max_size, &out));
    Print(Take(out));
    return kOk;
  });

  // pps run | search-cycle
  auto* pps = app.add_subcommand("pps", "ping-pong sequences");
  pps->require_subcommand(1);
  auto* pps_run = pps->add_subcommand("run", "generate sequences from one configuration");
  std::string net_text, strategy = "least";
  int a1 = -1, a2 = -1, t1 = -1;
  pps_run->add_option("--matroid", matroid_path)->required();
  pps_run->add_option("--x", net_text, "net X as comma-separated ids");
  pps_run->add_option("--a1", a1)->required();
  pps_run->add_option("--a2", a2)->required();
  pps_run->add_option("--t1", t1)->required();
  pps_run->add_option("--budget", budget, "longest sequence");
  pps_run->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"least", "all-branches"}));
  on(pps_run, [&] {
    Matroid m(matroid_path);
    const std::vector<int> net = ParseIds(net_text);
    char* out = nullptr;
    Check(fg_pps_run(m.m, net.data(), net.size(), a1, a2, t1,
                     strategy == "least" ? 0 : 1, Budget(budget, 64), &out));
    Print(Take(out));
    return kOk;
  });
  auto* pps_cycle = pps->add_subcommand("search-cycle", "look for a repeating sequence");
  pps_cycle->add_option("--matroid", matroid_path)->required();
  pps_cycle->add_option("--budget", budget, "longest sequence");
  on(pps_cycle, [&] {
    Matroid m(matroid_path);
    char* out = nullptr;
    Check(fg_pps_find_cycle(m.m, Budget(budget, 16), &out));
    Print(Take(out));
    return kOk;
  });

  // lambda closure | acl
  auto* lambda = app.add_subcommand("lambda", "formula closures");
  lambda->require_subcommand(1);
  auto* closure = lambda->add_subcommand("closure", "iterate the closure step");
  std::string x_text, bbar_text;
  closure->add_option("--structure", structure_path)->required();
  closure->add_option("--x", x_text, "seed set as comma-separated ids");
  closure->add_option("--budget", budget, "most rounds");
  on(closure, [&] {
    fg_structure* g = nullptr;
    Load(structure_path,
         [&](const char* text) { return fg_structure_from_json(text, &g); });
    const std::vector<int> x = ParseIds(x_text);
    char* out = nullptr;
    const fg_status status = fg_lambda_closure(g, x.data(), x.size(), Budget(budget, 0), &out);
    fg_structure_free(g);
    Check(status);
    const std::string text = Take(out);
    Print(text);
    return Parsed(text)["status"] == "Fixpoint" ? kOk : kNegative;
  });
  auto* acl = lambda->add_subcommand("acl", "enumerate the set with finite closure over bbar");
  acl->add_option("--scenario", scenario_path)->required();
  acl->add_option("--bbar", bbar_text, "defaults to the scenario's bbar");
  acl->add_option("--budget", budget, "stages to run");
  on(acl, [&] {
    LambdaScenario s(scenario_path);
    const std::vector<int> b = ParseIds(bbar_text);
    char* out = nullptr;
    Check(fg_acl_enumerate(s.s, bbar_text.empty() ? nullptr : b.data(), b.size(),
                           Budget(budget, s.stages()), &out));
    const std::string text = Take(out);
    Print(text);
    return Parsed(text)["status"] == "Complete" ? kOk : kNegative;
  });

  // ild
  auto* ild = app.add_subcommand("ild", "least dimension with an infinite closure");
  ild->add_option("--scenario", scenario_path)->required();
  ild->add_option("--budget", budget, "stages to run");
  on(ild, [&] {
    LambdaScenario s(scenario_path);
    char* out = nullptr;
    Check(fg_ild_estimate(s.s, Budget(budget, s.stages()), &out));
    Print(Take(out));
    return kOk;
  });

  // effective going-down | acl-schedule
  auto* effective = app.add_subcommand("effective", "stagewise constructions");
  effective->require_subcommand(1);
  auto* going_down = effective->add_subcommand("going-down", "build a copy stage by stage");
  std::string trace_path, script_path;
  going_down->add_option("--scenario", scenario_path)->required();
  going_down->add_option("--trace", trace_path, "write the full trace here");
  on(going_down, [&] {
    fg_going_down* s = nullptr;
    Load(scenario_path,
         [&](const char* text) { return fg_going_down_from_json(text, &s); });
    char* trace = nullptr;
    char* report = nullptr;
    const fg_status status = fg_going_down_run(s, &trace, &report);
    fg_going_down_free(s);
    Check(status);
    const std::string trace_text = Take(trace);
    const std::string report_text = Take(report);
    if (!trace_path.empty()) {
      std::ofstream out(trace_path, std::ios::binary);
      out << trace_text << "\n";
      if (!out) throw InputError{"cannot write " + trace_path};
    }
    Print(report_text);
    return Parsed(report_text)["passed"].get<bool>() ? kOk : kNegative;
  });
  auto* acl_schedule = effective->add_subcommand("acl-schedule", "guesses converging to cl(bbar)");
  acl_schedule->add_option("--matroid", matroid_path)->required();
  acl_schedule->add_option("--bbar", bbar_text)->required();
  acl_schedule->add_option("--script", script_path, "delay script JSON");
  on(acl_schedule, [&] {
    Matroid m(matroid_path);
    const std::vector<int> b = ParseIds(bbar_text);
    std::optional<std::string> script;
    if (!script_path.empty()) script = ReadInput(script_path);
    char* out = nullptr;
    Check(fg_acl_schedule(m.m, b.data(), b.size(), script ? script->c_str() : nullptr, &out));
    Print(Take(out));
    return kOk;
  });

  // spectrum check | cases | profile
  auto* spectrum = app.add_subcommand("spectrum", "which dimensions can be recursive");
  spectrum->require_subcommand(1);
  int n = 2, p = -1, ild_value = -1;
  std::string set_text;
  auto* check = spectrum->add_subcommand("check", "classify one set");
  check->add_option("--n", n)->required();
  check->add_option("--set", set_text, "e.g. 0,1,3+,omega")->required();
  check->add_option("--p", p);
  on(check, [&] {
    char* out = nullptr;
    Check(fg_spectrum_classify(n, p, set_text.c_str(), &out));
    Print(Take(out));
    return kOk;
  });
  auto* cases = spectrum->add_subcommand("cases", "classify every subset of {0,1,2,omega}");
  cases->add_option("--n", n)->required();
  on(cases, [&] {
    char* out = nullptr;
    Check(fg_spectrum_cases(n, &out));
    Print(Take(out));
    return kOk;
  });
  auto* profile = spectrum->add_subcommand("profile", "validate n, p and the least infinite dimension");
  profile->add_option("--n", n)->required();
  profile->add_option("--p", p);
  profile->add_option("--ild", ild_value);
  on(profile, [&] {
    char* out = nullptr;
    Check(fg_validate_profile(n, p, ild_value, &out));
    const std::string text = Take(out);
    Print(text);
    return Parsed(text)["valid"].get<bool>() ? kOk : kNegative;
  });

  // corpus list | check | export
  auto* corpus = app.add_subcommand("corpus", "bundled examples");
  corpus->require_subcommand(1);
  on(corpus->add_subcommand("list", "names and kinds"), [&] {
    char* out = nullptr;
    Check(fg_corpus_list(&out));
    Print(Take(out));
    return kOk;
  });
  on(corpus->add_subcommand("check", "load and validate every entry"), [&] {
    char* out = nullptr;
    Check(fg_corpus_check(&out));
    const std::string text = Take(out);
    Print(text);
    return Parsed(text)["passed"].get<bool>() ? kOk : kNegative;
  });
  auto* exporter = corpus->add_subcommand("export", "write entries as JSON files");
  std::string name, dir;
  exporter->add_option("--name", name, "one entry to print");
  exporter->add_option("--dir", dir, "write every entry to DIR/NAME.json");
  on(exporter, [&] {
    if (name.empty() == dir.empty()) throw InputError{"give exactly one of --name, --dir"};
    if (!name.empty()) {
      Print(ReadInput("corpus:" + name));
      return kOk;
    }
    char* out = nullptr;
    Check(fg_corpus_list(&out));
    std::filesystem::create_directories(dir);
    for (const Json& e : Parsed(Take(out))["entries"]) {
      const std::string entry = e["name"].get<std::string>();
      std::ofstream file(std::filesystem::path(dir) / (entry + ".json"));
      file << ReadInput("corpus:" + entry) << "\n";
      if (!file) throw InputError{"cannot write into " + dir};
    }
    return kOk;
  });

  const auto fail = [](const std::string& code, const std::string& message) {
    std::cerr << Json{{"v", FG_SCHEMA_VERSION},
                      {"error", {{"code", code}, {"message", message}}}}
                     .dump()
              << "\n";
  };
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail("InvalidArgument", e.what());
    return kBadInput;
  }
  try {
    return action ? action() : kBadInput;
  } catch (const CallFailed& e) {
    fail(fg_status_name(e.status), e.message);
    return e.status == FG_INTERNAL ? kInternal : kBadInput;
  } catch (const InputError& e) {
    fail("InvalidArgument", e.message);
    return kBadInput;
  } catch (const std::exception& e) {
    fail("Internal", e.what());
    return kInternal;
  }
}
