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

#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "flatgeom/corpus.h"
#include "flatgeom/effective.h"
#include "flatgeom/error.h"

namespace flatgeom {
namespace {

GoingDownScenario Scenario(const std::string& name) {
  return GoingDownScenarioFromJson(CorpusEntryNamed(name).json);
}

// N = {0..4} with one unary relation on the evens.
StagewisePresentation Evens() {
  RelationalStructure n{5, {Relation{"P", 1, {{0}, {2}, {4}}}}};
  return StagewisePresentation::Create(n, {"P"});
}

ErrorCode CodeOf(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

// Every tuple over {0..b-1} of length `arity`.
std::vector<std::vector<int>> Tuples(int b, int arity) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(arity, 0);
  if (b == 0) return out;
  while (true) {
    out.push_back(t);
    int i = arity - 1;
    while (i >= 0 && ++t[i] == b) t[i--] = 0;
    if (i < 0) return out;
  }
}

// Checks the trace against N directly: the final map is a bijection onto
// the target, each revealed relation on B is exactly the pullback, and an
// image never moves once it lies in A.
std::string CheckByHand(const ConstructionTrace& t, const GoingDownScenario& s) {
  const RelationalStructure& n = s.presentation.structure();
  const ElementSet target = s.schedule.target();
  if (t.status != ConstructionTrace::Status::kComplete) return "stuck";
  ElementSet image;
  for (int y : t.limit_map) {
    if (image.contains(y)) return "map repeats an image";
    image = image.With(y);
  }
  if (image != target) return "map is not onto the target";
  if (t.symbols.size() != n.relations.size()) return "missing symbols";
  for (std::size_t i = 0; i < t.symbols.size(); ++i) {
    const Relation& rel = n.relations[t.symbols[i]];
    std::set<std::vector<int>> pullback;
    for (const auto& b : Tuples(static_cast<int>(t.limit_map.size()),
                                rel.arity)) {
      std::vector<int> fb;
      for (int x : b) fb.push_back(t.limit_map[x]);
      if (rel.tuples.contains(fb)) pullback.insert(b);
    }
    if (pullback != t.diagram[i]) return "diagram differs for " + rel.name;
  }
  for (std::size_t k = 0; k < t.stages.size(); ++k) {
    const StageRecord& r = t.stages[k];
    for (std::size_t x = 0; x < r.map.size(); ++x) {
      if (!s.enumeration.InAt(r.map[x], r.stage)) continue;
      for (std::size_t j = k + 1; j < t.stages.size(); ++j) {
        if (t.stages[j].map[x] != r.map[x]) return "an image left A";
      }
      if (t.limit_map[x] != r.map[x]) return "an image left A";
    }
  }
  return "";
}

TEST_CASE("guess schedules") {
  Delta2Schedule m = Delta2Schedule::Create(
      5, {0, 1, 2, 3}, {{0, 4, false}, {0, 6, true}}, 3);
  CHECK(m.FlipCount(0) == 2);
  CHECK(m.LastFlipStage() == 6);
  CHECK(m.InAt(0, 3));
  CHECK_FALSE(m.InAt(0, 4));
  CHECK_FALSE(m.InAt(0, 5));
  CHECK(m.InAt(0, 6));
  CHECK(m.At(5) == ElementSet{1, 2, 3});
  CHECK_FALSE(m.InAt(4, 100));

  CHECK(CodeOf([] {
          Delta2Schedule::Create(5, {1}, {{0, 2, false}, {0, 3, false}}, 3);
        }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] {
          Delta2Schedule::Create(5, {0}, {{0, 2, true}, {0, 3, false},
                                          {0, 4, true}}, 2);
        }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] {
          Delta2Schedule::Create(5, {0}, {{0, 2, false}}, 3);
        }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("coherence with the enumeration") {
  Delta2Schedule m = Delta2Schedule::Create(
      5, {0, 1, 2, 3}, {{0, 4, false}, {0, 6, true}, {1, 2, true}}, 3);
  Sigma1Schedule a = Sigma1Schedule::Create(5, {0, 1}, {{0, 3}, {1, 1}});
  int corrections = 0;
  Delta2Schedule c = m.CorrectedFor(a, &corrections);
  CHECK(corrections >= 1);
  for (int s = 1; s <= 10; ++s) CHECK(a.At(s).IsSubsetOf(c.At(s)));
  CHECK(c.target() == m.target());

  Sigma1Schedule outside = Sigma1Schedule::Create(5, {4});
  CHECK(CodeOf([&] {
          int k = 0;
          m.CorrectedFor(outside, &k);
        }) == ErrorCode::kIncoherentSchedule);
}

TEST_CASE("a decoy forces a swap into A") {
  GoingDownScenario s = Scenario("going_down_decoy");
  ConstructionTrace t =
      GoingDownRun(s.presentation, s.schedule, s.enumeration, s.horizon);
  CHECK(t.status == ConstructionTrace::Status::kComplete);
  CHECK(t.outcome2_count == 1);
  bool found = false;
  for (const StageRecord& r : t.stages) {
    if (r.event != EventKind::kOutcome2) continue;
    found = true;
    CHECK(r.stage == 5);
    CHECK(r.z == 0);
    // 6 is the least even A element present at stage 5.
    CHECK(r.a == 6);
  }
  CHECK(found);
  CHECK(t.limit_map == std::vector<int>{6, 1, 2, 3, 4, 5, 7, 8});
  CHECK(CheckByHand(t, s) == "");
  TraceReport rep = TraceVerify(t, s.presentation, s.schedule.target(),
                                s.enumeration);
  CHECK(rep.passed());
}

TEST_CASE("a returning element is waited for") {
  StagewisePresentation p = Evens();
  Delta2Schedule m = Delta2Schedule::Create(
      5, {0, 1, 2, 3}, {{0, 4, false}, {0, 6, true}}, 3);
  Sigma1Schedule a = Sigma1Schedule::Create(5, {});
  ConstructionTrace t = GoingDownRun(p, m, a, 20);
  CHECK(t.status == ConstructionTrace::Status::kComplete);
  CHECK(t.outcome1_count == 1);
  CHECK(t.outcome2_count == 0);
  CHECK(t.longest_wait == 2);
  CHECK(TraceVerify(t, p, m.target(), a).passed());
}

TEST_CASE("a departed element with no A to fall back on is stuck") {
  StagewisePresentation p = Evens();
  Delta2Schedule m =
      Delta2Schedule::Create(5, {1, 2, 3}, {{0, 4, false}}, 3);
  Sigma1Schedule a = Sigma1Schedule::Create(5, {});
  ConstructionTrace t = GoingDownRun(p, m, a, 20);
  CHECK(t.status == ConstructionTrace::Status::kStuck);
  CHECK(t.stuck_since == 4);
  CHECK_FALSE(TraceVerify(t, p, m.target(), a).passed());
}

TEST_CASE("run arguments are checked") {
  StagewisePresentation p = Evens();
  Delta2Schedule m =
      Delta2Schedule::Create(5, {0, 1, 2, 3}, {{0, 4, false}, {0, 6, true}}, 3);
  Sigma1Schedule a = Sigma1Schedule::Create(5, {});
  CHECK(CodeOf([&] { GoingDownRun(p, m, a, 5); }) ==
        ErrorCode::kInvalidArgument);
  Delta2Schedule wrong = Delta2Schedule::Create(4, {0}, {}, 1);
  CHECK(CodeOf([&] { GoingDownRun(p, wrong, a, 20); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] {
          RelationalStructure n{3, {Relation{"P", 1, {{5}}}}};
          StagewisePresentation::Create(n, {"P"});
        }) == ErrorCode::kInvalidElement);
  CHECK(CodeOf([] {
          RelationalStructure n{3, {Relation{"P", 2, {{0}}}}};
          StagewisePresentation::Create(n, {"P"});
        }) == ErrorCode::kInvalidStructure);
  CHECK(CodeOf([] {
          RelationalStructure n{3, {Relation{"P", 1, {{0}}}}};
          StagewisePresentation::Create(n, {"Q"});
        }) == ErrorCode::kInvalidStructure);
}

TEST_CASE("generated scenarios build isomorphic copies") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    GoingDownScenario s = RandomGoingDownScenario(rng);
    ConstructionTrace t =
        GoingDownRun(s.presentation, s.schedule, s.enumeration, s.horizon);
    CAPTURE(trial);
    CHECK(CheckByHand(t, s) == "");
    CHECK(TraceVerify(t, s.presentation, s.schedule.target(), s.enumeration)
              .passed());
  }
  for (const char* name : {"going_down_random_11", "going_down_random_12",
                           "going_down_random_13"}) {
    GoingDownScenario s = Scenario(name);
    ConstructionTrace t =
        GoingDownRun(s.presentation, s.schedule, s.enumeration, s.horizon);
    CHECK(CheckByHand(t, s) == "");
  }
}

TEST_CASE("closure schedules converge to the closure") {
  Matroid fano = MatroidFromJson(CorpusEntryNamed("gf2_3").json);
  RelationalStructure n{7, {Relation{"P", 1, {{0}}}}};
  StagewisePresentation p =
      StagewisePresentation::Create(n, {"P"}, fano);
  Delta2Schedule plain = Delta2AclSchedule(p, {0, 1}, {});
  CHECK(plain.target() == ElementSet{0, 1, 2});
  CHECK(plain.flips().empty());
  Delta2Schedule delayed = Delta2AclSchedule(p, {0, 1}, {{2, 3, 2}, {5, 1, 1}});
  CHECK(delayed.target() == ElementSet{0, 1, 2});
  CHECK(delayed.FlipCount(2) == 2);
  CHECK(delayed.FlipCount(5) == 1);
  CHECK(delayed.At(delayed.LastFlipStage()) == ElementSet{0, 1, 2});
  CHECK(CodeOf([&] { Delta2AclSchedule(p, {0, 1, 2}, {}); }) ==
        ErrorCode::kNotExtendable);
  CHECK(CodeOf([] { Delta2AclSchedule(Evens(), {0}, {}); }) ==
        ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace flatgeom
