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

#include "flatgeom/corpus.h"

#include <algorithm>
#include <numeric>

#include "flatgeom/error.h"

namespace flatgeom {

namespace {

// Modulo keeps streams identical across standard libraries, unlike the
// <random> distributions.
int Below(std::mt19937_64& rng, int n) {
  return n <= 1 ? 0 : static_cast<int>(rng() % static_cast<uint64_t>(n));
}

bool Coin(std::mt19937_64& rng, int num, int den) { return Below(rng, den) < num; }

template <typename T>
void Shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
    std::swap(v[i], v[Below(rng, i + 1)]);
  }
}

// Every k-subset of {0..n-1}, in canonical order.
std::vector<ElementSet> Subsets(int n, int k) {
  std::vector<ElementSet> out;
  if (k < 0 || k > n) return out;
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    out.push_back(ElementSet::FromIds(pick));
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

}  // namespace

Matroid PavingMatroid(int size, int rank,
                      const std::vector<ElementSet>& hyperplanes,
                      std::vector<std::string> labels) {
  if (rank < 1 || rank > size) {
    throw Error(ErrorCode::kInvalidArgument, "paving rank must be in [1, size]");
  }
  const ElementSet ground = ElementSet::Range(size);
  for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
    if (!hyperplanes[i].IsSubsetOf(ground) || hyperplanes[i].size() < rank - 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "hyperplane " + std::to_string(i) + " is too small");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((hyperplanes[i] & hyperplanes[j]).size() >= rank - 1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "hyperplanes " + std::to_string(j) + " and " +
                        std::to_string(i) + " share too much");
      }
    }
  }
  std::vector<ClosureEntry> entries;
  for (int k = 0; k < rank - 1; ++k) {
    for (ElementSet s : Subsets(size, k)) entries.push_back({s, s});
  }
  for (ElementSet s : Subsets(size, rank - 1)) {
    const bool covered =
        std::any_of(hyperplanes.begin(), hyperplanes.end(),
                    [&](ElementSet h) { return s.IsSubsetOf(h); });
    if (!covered) entries.push_back({s, s});
  }
  for (ElementSet h : hyperplanes) entries.push_back({h, h});
  entries.push_back({ground, ground});
  return Matroid::ClosureTable(size, std::move(entries), std::move(labels));
}

const char* CorpusKindName(CorpusKind kind) {
  switch (kind) {
    case CorpusKind::kMatroid:
      return "matroid";
    case CorpusKind::kStructure:
      return "structure";
    case CorpusKind::kLambdaScenario:
      return "lambda-scenario";
    case CorpusKind::kGoingDown:
      return "going-down";
  }
  return "unknown";
}

namespace {

// All nonzero vectors of GF(q)^d whose first nonzero coordinate is 1 when
// `projective`, else all nonzero vectors; ordered by value in base q.
Matroid VectorSpace(int q, int d, bool projective) {
  std::vector<std::vector<int>> columns;
  std::vector<std::string> labels;
  int total = 1;
  for (int i = 0; i < d; ++i) total *= q;
  for (int value = 1; value < total; ++value) {
    std::vector<int> v(d);
    int rest = value;
    for (int i = 0; i < d; ++i) {
      v[i] = rest % q;
      rest /= q;
    }
    if (projective) {
      int lead = 0;
      while (v[lead] == 0) ++lead;
      if (v[lead] != 1) continue;
    }
    std::string label;
    for (int i = 0; i < d; ++i) {
      if (v[i] == 0) continue;
      if (!label.empty()) label += "+";
      if (v[i] != 1) label += std::to_string(v[i]);
      label += "e" + std::to_string(i + 1);
    }
    columns.push_back(v);
    labels.push_back(label);
  }
  return Matroid::Linear(q, std::move(columns), std::move(labels));
}

// Rank-3 paving structure in which the closure of any core flat is finite,
// but the core itself reaches an escaping fiber along a chain of lines
// alternating between two paddles.
struct Chain {
  std::vector<ElementSet> lines;
  std::vector<std::vector<int>> tuples;
  FiberKey escape;
};

Chain BuildChain(int p1, int p2, const std::vector<int>& ts) {
  Chain c;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const int paddle = i % 2 == 0 ? p1 : p2;
    c.lines.push_back(ElementSet{paddle, ts[i], ts[i + 1]});
    c.tuples.push_back({paddle, ts[i], ts[i + 1]});
  }
  // The next paddle in line would extend the chain past the horizon.
  const int next = ts.size() % 2 == 0 ? p2 : p1;
  c.escape = FiberKey{2, {next, ts.back()}};
  return c;
}

Json StagesJson(const std::vector<std::vector<int>>& tuples,
                const std::vector<int>& stage) {
  int last = 0;
  for (int s : stage) last = std::max(last, s);
  Json stages = Json::array();
  for (int s = 1; s <= last; ++s) {
    Json reveal = Json::array();
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      if (stage[i] == s) reveal.push_back(tuples[i]);
    }
    stages.push_back({{"reveal", reveal}});
  }
  return stages;
}

std::string KeyText(const FiberKey& k) {
  std::string s = std::to_string(k.position) + ":";
  for (std::size_t i = 0; i < k.rest.size(); ++i) {
    s += (i ? "," : "") + std::to_string(k.rest[i]);
  }
  return s;
}

// a1 = 0, a2 = 1, t1..t5 = 2..6; t5 stays outside the core.
Json IldChainScenario() {
  const std::vector<int> ts = {2, 3, 4, 5, 6};
  const Chain c = BuildChain(0, 1, ts);
  std::vector<int> stage(c.tuples.size());
  std::iota(stage.begin(), stage.end(), 1);
  Json j;
  j["universe"] = 7;
  j["matroid"] = MatroidToJson(PavingMatroid(7, 3, c.lines));
  j["phi"] = {{"arity", 3}, {"tuples", c.tuples}};
  j["K"] = 2;
  j["stages"] = StagesJson(c.tuples, stage);
  j["counts"] = {{KeyText(c.escape), 1}};
  j["core"] = {0, 1, 2, 3, 4, 5};
  j["expected_ild"] = 3;
  return j;
}

// The line X = {b1, b2, x1, x2} = {0, 1, 2, 3}; the points 4..8 hang off it
// on a chain of lines through b1 and b2 that escapes at 8.
Json AclLineScenario() {
  const std::vector<int> ts = {4, 5, 6, 7, 8};
  const Chain c = BuildChain(0, 1, ts);
  std::vector<ElementSet> lines = c.lines;
  lines.push_back(ElementSet{0, 1, 2, 3});
  std::vector<std::vector<int>> tuples = {{0, 1, 2}, {0, 1, 3}};
  std::vector<int> stage = {1, 3};
  for (std::size_t i = 0; i < c.tuples.size(); ++i) {
    tuples.push_back(c.tuples[i]);
    stage.push_back(static_cast<int>(i) + 1);
  }
  Json j;
  j["universe"] = 9;
  j["matroid"] = MatroidToJson(PavingMatroid(9, 3, lines));
  j["phi"] = {{"arity", 3}, {"tuples", tuples}};
  j["K"] = 3;
  j["stages"] = StagesJson(tuples, stage);
  j["counts"] = {{KeyText(c.escape), 1}};
  j["core"] = {0, 1, 2, 3, 4, 5, 6, 7};
  j["bbar"] = {0, 1};
  j["expected_acl"] = {0, 1, 2, 3};
  return j;
}

// Element 0 looks like a member until stage 5, by which point it already
// has a preimage; the construction must move that preimage onto an even
// element of A.
Json DecoyGoingDown() {
  Json evens = Json::array();
  for (int x = 0; x < 12; x += 2) evens.push_back({x});
  return {{"structure",
           {{"universe", 12},
            {"relations", {{{"name", "P"}, {"arity", 1}, {"tuples", evens}}}}}},
          {"signature_order", {"P"}},
          {"M", {1, 2, 3, 4, 5, 6, 7, 8}},
          {"flips", {{{"elem", 0}, {"stage", 5}, {"in", false}}}},
          {"flip_budget", 1},
          {"A", {5, 6, 7, 8}},
          {"A_stages", {{"5", 2}, {"6", 3}, {"7", 4}, {"8", 5}}},
          {"horizon", 30}};
}

std::vector<CorpusEntry> BuildCorpus() {
  std::vector<CorpusEntry> c;
  const auto matroid = [&](std::string name, std::string what, const Matroid& m) {
    c.push_back({std::move(name), CorpusKind::kMatroid, std::move(what),
                 MatroidToJson(m)});
  };
  matroid("gf2_3", "GF(2)^3: the Fano plane, element i is the vector i+1",
          VectorSpace(2, 3, false));
  matroid("gf3_plane", "projective plane over GF(3), 13 points",
          VectorSpace(3, 3, true));
  matroid("gf3_3", "all 26 nonzero vectors of GF(3)^3", VectorSpace(3, 3, false));
  matroid("uniform_2_3", "U(2,3)", Matroid::Uniform(2, 3));
  matroid("uniform_2_4", "U(2,4)", Matroid::Uniform(2, 4));
  matroid("uniform_3_5", "U(3,5)", Matroid::Uniform(3, 5));
  matroid("uniform_3_6", "U(3,6)", Matroid::Uniform(3, 6));
  matroid("free_4", "four independent points", Matroid::Free(4));
  matroid("u23_plus_free2", "U(2,3) with two free points added",
          Matroid::Linear(3, {{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0},
                              {0, 0, 1, 0}, {0, 0, 0, 1}}));
  matroid("two_lines_rank3", "rank 3, lines {0,1,2} and {0,3,4} through 0",
          PavingMatroid(5, 3, {ElementSet{0, 1, 2}, ElementSet{0, 3, 4}}));
  matroid("sparse_paving_6", "six vectors over GF(5) in rank 4",
          Matroid::Linear(5, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0},
                              {1, 1, 1, 0}, {1, 0, 0, 1}, {2, 1, 0, 1}},
                          {"a", "b", "c", "d", "e", "f"}));
  matroid("three_planes_rank4",
          "rank 4 on a..f with planes abcd, abef, cdef meeting pairwise in "
          "lines and all three in nothing",
          PavingMatroid(6, 4,
                        {ElementSet{0, 1, 2, 3}, ElementSet{0, 1, 4, 5},
                         ElementSet{2, 3, 4, 5}},
                        {"a", "b", "c", "d", "e", "f"}));

  c.push_back({"lambda_example", CorpusKind::kStructure,
               "U(2,4) with phi {(0,1,2),(1,2,3)}; {0,1} closes to everything",
               StructureToJson(GeometricStructure::Create(
                   Matroid::Uniform(2, 4), PhiRelation{3, {{0, 1, 2}, {1, 2, 3}}},
                   2))});
  c.push_back({"ild_chain", CorpusKind::kLambdaScenario,
               "closures of lines stay finite, the plane escapes: value 3",
               IldChainScenario()});
  c.push_back({"acl_line", CorpusKind::kLambdaScenario,
               "a four point line is exactly the set with finite closure over "
               "two of its points",
               AclLineScenario()});
  c.push_back({"going_down_decoy", CorpusKind::kGoingDown,
               "one early guess is withdrawn after it has a preimage",
               DecoyGoingDown()});
  for (uint64_t seed : {11u, 12u, 13u}) {
    std::mt19937_64 rng(seed);
    c.push_back({"going_down_random_" + std::to_string(seed),
                 CorpusKind::kGoingDown, "generated with seed " + std::to_string(seed),
                 GoingDownScenarioToJson(RandomGoingDownScenario(rng))});
  }
  return c;
}

}  // namespace

const std::vector<CorpusEntry>& Corpus() {
  static const std::vector<CorpusEntry>* corpus =
      new std::vector<CorpusEntry>(BuildCorpus());
  return *corpus;
}

const CorpusEntry& CorpusEntryNamed(const std::string& name) {
  for (const CorpusEntry& e : Corpus()) {
    if (e.name == name) return e;
  }
  throw Error(ErrorCode::kInvalidArgument, "no corpus entry named '" + name + "'");
}

std::vector<Matroid> CorpusMatroids(std::vector<std::string>* names) {
  std::vector<Matroid> out;
  for (const CorpusEntry& e : Corpus()) {
    if (e.kind != CorpusKind::kMatroid) continue;
    out.push_back(MatroidFromJson(e.json));
    if (names) names->push_back(e.name);
  }
  return out;
}

namespace {

std::string CheckMatroid(const Matroid& m) {
  VerifyOptions options;
  options.sample = m.size() > options.bound;
  // Closures are not tabulated above 16 elements, so keep the sample small.
  if (options.sample) options.samples = 1000;
  const PregeometryReport r = VerifyPregeometry(m, options);
  if (r.passed()) return "";
  return std::string("pregeometry axiom fails: ") +
         AxiomKindName(r.violation->kind);
}

std::string CheckEntry(const CorpusEntry& e) {
  switch (e.kind) {
    case CorpusKind::kMatroid:
      return CheckMatroid(MatroidFromJson(e.json));
    case CorpusKind::kStructure:
      return CheckMatroid(StructureFromJson(e.json).matroid());
    case CorpusKind::kLambdaScenario: {
      const LambdaScenario s = LambdaScenarioFromJson(e.json);
      const std::string axioms = CheckMatroid(s.structure.limit().matroid());
      if (!axioms.empty()) return axioms;
      const int budget = s.structure.stage_count();
      if (s.bbar && s.expected_acl) {
        const AclEnumeration acl = AclEnumerateViaLambda(s.structure, *s.bbar, budget);
        if (acl.emitted != *s.expected_acl) {
          return "enumeration gives " + Dump(SetToJson(acl.emitted));
        }
      }
      if (s.expected_ild) {
        const IldEstimate ild = IldEstimateOf(s.structure, budget);
        const int want = s.expected_ild->value_or(IldEstimate::kInfinite);
        if (ild.value != want || !ild.certified) {
          return "estimate is " + Dump(ToJson(ild));
        }
      }
      return "";
    }
    case CorpusKind::kGoingDown: {
      const GoingDownScenario s = GoingDownScenarioFromJson(e.json);
      const ConstructionTrace t =
          GoingDownRun(s.presentation, s.schedule, s.enumeration, s.horizon);
      const TraceReport r =
          TraceVerify(t, s.presentation, s.schedule.target(), s.enumeration);
      return r.passed() ? "" : r.detail;
    }
  }
  return "unknown kind";
}

}  // namespace

std::vector<CorpusCheck> CheckCorpus() {
  std::vector<CorpusCheck> out;
  for (const CorpusEntry& e : Corpus()) {
    CorpusCheck check{e.name, true, ""};
    try {
      check.detail = CheckEntry(e);
    } catch (const Error& err) {
      check.detail = err.what();
    }
    check.ok = check.detail.empty();
    out.push_back(std::move(check));
  }
  return out;
}

GeometricStructure RandomStructure(std::mt19937_64& rng, int max_universe) {
  max_universe = std::clamp(max_universe, 3, 16);
  while (true) {
    const int n = 3 + Below(rng, max_universe - 2);
    std::optional<Matroid> m;
    switch (Below(rng, 3)) {
      case 0:
        m = Matroid::Uniform(2, n);
        break;
      case 1: {
        const int q = Coin(rng, 1, 2) ? 2 : 3;
        std::vector<std::vector<int>> columns;
        for (int i = 0; i < n; ++i) {
          std::vector<int> v(3, 0);
          while (v == std::vector<int>(3, 0)) {
            for (int& x : v) x = Below(rng, q);
          }
          columns.push_back(v);
        }
        m = Matroid::Linear(q, std::move(columns));
        break;
      }
      default: {
        std::vector<ElementSet> lines;
        for (int tries = 0; tries < 3 * n; ++tries) {
          ElementSet line;
          const int k = 3 + Below(rng, 2);
          while (line.size() < std::min(k, n)) line = line.With(Below(rng, n));
          const bool fits = std::all_of(lines.begin(), lines.end(), [&](ElementSet l) {
            return (l & line).size() < 2;
          });
          if (fits) lines.push_back(line);
        }
        m = PavingMatroid(n, std::min(3, n), lines);
        break;
      }
    }
    std::vector<std::vector<int>> tuples;
    for (const Circuit& c : Circuits(*m, 3)) {
      if (c.size() != 3 || !Coin(rng, 1, 2)) continue;
      std::vector<int> t = c.elements.ToVector();
      for (int copies = 1 + Below(rng, 2); copies > 0; --copies) {
        Shuffle(t, rng);
        tuples.push_back(t);
      }
    }
    if (tuples.empty()) continue;
    const GeometricStructure loose =
        GeometricStructure::Create(*m, PhiRelation{3, tuples}, n + 1);
    int widest = 0;
    for (const auto& [key, size] : loose.fiber_sizes()) widest = std::max(widest, size);
    return GeometricStructure::Create(std::move(*m), PhiRelation{3, std::move(tuples)},
                                      widest + 1 + Below(rng, 2));
  }
}

CarouselInput RandomCarouselInput(const Matroid& m, std::mt19937_64& rng) {
  for (int attempt = 0;; ++attempt) {
    CarouselInput in;
    if (attempt < 8) {
      for (int x = 0; x < m.size(); ++x) {
        if (Coin(rng, 1, 4)) in.abar = in.abar.With(x);
      }
    }
    std::vector<int> order = (m.ground() - in.abar).ToVector();
    Shuffle(order, rng);
    const int want = 1 + Below(rng, std::max(m.size(), 1));
    ElementSet span = in.abar;
    for (int x : order) {
      if (static_cast<int>(in.bs.size()) == want) break;
      if (m.ClosureOf(span).contains(x)) continue;
      in.bs.push_back(x);
      span = span.With(x);
    }
    if (!in.bs.empty() || attempt >= 8) return in;
  }
}

GoingDownScenario RandomGoingDownScenario(std::mt19937_64& rng, int max_universe,
                                          int max_flips) {
  max_universe = std::clamp(max_universe, 4, 16);
  while (true) {
    const int n = 4 + Below(rng, max_universe - 3);
    const int classes = 1 + Below(rng, 3);
    std::vector<int> cls(n);
    for (int& c : cls) c = Below(rng, classes);
    ElementSet target;
    for (int x = 0; x < n; ++x) {
      if (Coin(rng, 2, 3)) target = target.With(x);
    }
    ElementSet a;
    for (int x : target) {
      if (Coin(rng, 2, 3)) a = a.With(x);
    }
    std::vector<int> a_count(classes, 0);
    for (int x : a) ++a_count[cls[x]];
    // Flipping elements may only sit in classes with spare A elements.
    std::vector<int> flippers;
    int last_stage = n;
    for (int x = 0; x < n; ++x) {
      if (a.contains(x) || a_count[cls[x]] < 2 || !Coin(rng, 1, 2)) continue;
      flippers.push_back(x);
      last_stage = std::min(last_stage, a_count[cls[x]] - 1);
    }
    if (target.empty() || flippers.empty()) continue;
    std::vector<Flip> flips;
    for (int x : flippers) {
      const int k = 1 + Below(rng, std::min(max_flips, last_stage));
      std::vector<int> stages(last_stage);
      std::iota(stages.begin(), stages.end(), 1);
      Shuffle(stages, rng);
      stages.resize(k);
      std::sort(stages.begin(), stages.end());
      bool value = target.contains(x) == (k % 2 == 1);
      for (int s : stages) {
        flips.push_back(Flip{x, s, value});
        value = !value;
      }
    }
    RelationalStructure rs;
    rs.size = n;
    Relation p{"P", 1, {}};
    Relation e{"E", 2, {}};
    const int p_classes = Below(rng, 1 << classes);
    std::vector<std::vector<bool>> e_classes(classes, std::vector<bool>(classes));
    for (auto& row : e_classes) {
      for (std::size_t c = 0; c < row.size(); ++c) row[c] = Coin(rng, 1, 2);
    }
    for (int x = 0; x < n; ++x) {
      if ((p_classes >> cls[x]) & 1) p.tuples.insert({x});
      for (int y = 0; y < n; ++y) {
        if (x != y && e_classes[cls[x]][cls[y]]) e.tuples.insert({x, y});
      }
    }
    rs.relations = {p, e};
    std::vector<std::string> order = {"P", "E"};
    if (Coin(rng, 1, 2)) std::swap(order[0], order[1]);
    std::vector<int> a_order = a.ToVector();
    Shuffle(a_order, rng);
    std::map<int, int> a_stages;
    int latest = 1;
    for (int x : a_order) {
      a_stages[x] = 1 + Below(rng, last_stage + 2);
      latest = std::max(latest, a_stages[x]);
    }
    const int horizon = last_stage + latest + 3 * n + 10;
    return GoingDownScenario{
        StagewisePresentation::Create(std::move(rs), std::move(order)),
        Delta2Schedule::Create(n, target, std::move(flips), max_flips),
        Sigma1Schedule::Create(n, std::move(a_order), std::move(a_stages)),
        horizon};
  }
}

}  // namespace flatgeom
