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

#include <string>
#include <vector>

#include "doctest.h"
#include "flatgeom/corpus.h"
#include "flatgeom/error.h"
#include "flatgeom/flatness.h"
#include "flatgeom/pingpong.h"

namespace flatgeom {
namespace {

Matroid Named(const std::string& name) {
  return MatroidFromJson(CorpusEntryNamed(name).json);
}

// Legal successors written with ranks instead of closures.
std::vector<int> CandidatesByRank(const Matroid& m, const PpsConfig& c,
                                  const std::vector<int>& ts) {
  const int t = ts.back();
  const int a = PaddleFor(c, ts.size() - 1);
  const ElementSet xa = c.net.With(a);
  std::vector<int> out;
  for (int y : m.ground()) {
    if (y == t) continue;
    const bool in_span = Rank(m, xa.With(t).With(y)) == Rank(m, xa.With(t));
    const bool off_paddle = Rank(m, xa.With(y)) > Rank(m, xa);
    if (in_span && off_paddle) out.push_back(y);
  }
  return out;
}

// Every valid configuration with a flat net.
std::vector<PpsConfig> Configs(const Matroid& m) {
  std::vector<PpsConfig> out;
  for (const Flat& f : AllFlats(m)) {
    for (int a1 : m.ground()) {
      for (int a2 : m.ground()) {
        if (a1 == a2 || !IsIndependentOver(m, {a1, a2}, f.elements)) continue;
        ElementSet span = m.ClosureOf(f.elements.With(a1).With(a2));
        for (int t1 : m.ground() - span) {
          out.push_back(PpsConfig{f.elements, a1, a2, t1});
        }
      }
    }
  }
  return out;
}

TEST_CASE("forced run in GF(2)^3") {
  Matroid m = Named("gf2_3");
  // e1, e2, e3 are ids 0, 1, 3.
  PpsConfig c{{}, 0, 1, 3};
  CHECK(PpsCandidates(m, PpsSequence{c, {3}}) == std::vector<int>{4});
  PpsRunResult r = PpsRunSearch(m, c, PpsStrategy::kLeast, 10);
  REQUIRE(r.runs.size() == 1);
  CHECK(r.runs[0].sequence.ts == std::vector<int>{3, 4, 6, 5, 3});
  CHECK(r.runs[0].status == PpsStatus::kCycle);
  CHECK(r.runs[0].repeat_of == 0);
  CHECK(r.runs[0].CycleLength() == 4);
  // GF(2) leaves one choice per step, so all branches agree.
  PpsRunResult all = PpsRunSearch(m, c, PpsStrategy::kAllBranches, 10);
  REQUIRE(all.runs.size() == 1);
  CHECK(all.runs[0].sequence.ts == r.runs[0].sequence.ts);

  PpsReport rep = PpsVerify(m, r.runs[0].sequence);
  CHECK(rep.step_valid);
  CHECK(rep.outside_closure);
  CHECK_FALSE(rep.injective);
  CHECK(rep.repeat_first == 0);
  CHECK(rep.repeat_second == 4);

  PpsRunResult cut = PpsRunSearch(m, c, PpsStrategy::kLeast, 2);
  CHECK(cut.runs[0].sequence.ts == std::vector<int>{3, 4});
  CHECK(cut.runs[0].status == PpsStatus::kBudgetExceeded);
}

TEST_CASE("uniform geometries") {
  Matroid u36 = Matroid::Uniform(3, 6);
  PpsConfig c{{}, 0, 1, 2};
  PpsRunResult r = PpsRunSearch(u36, c, PpsStrategy::kAllBranches, 10);
  REQUIRE(r.runs.size() == 1);
  CHECK(r.runs[0].sequence.ts == std::vector<int>{2});
  CHECK(r.runs[0].status == PpsStatus::kTerminated);
  PpsReport rep = PpsVerify(u36, r.runs[0].sequence);
  CHECK(rep.step_valid);
  CHECK(rep.outside_closure);
  CHECK(rep.injective);

  // Two points already span U(2,3).
  CHECK(Configs(Matroid::Uniform(2, 3)).empty());
  CHECK(PpsFindCycle(Matroid::Uniform(2, 3), 16).status ==
        CycleSearchResult::Status::kNone);
}

TEST_CASE("configurations are validated") {
  Matroid m = Named("gf2_3");
  auto code_of = [&](const PpsConfig& c) {
    try {
      ValidateConfig(m, c);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  CHECK(code_of({{}, 0, 0, 3}) == ErrorCode::kInvalidConfig);
  CHECK(code_of({{}, 0, 1, 2}) == ErrorCode::kInvalidConfig);
  CHECK(code_of({{0}, 0, 1, 3}) == ErrorCode::kInvalidConfig);
  CHECK_NOTHROW(ValidateConfig(m, {{}, 0, 1, 3}));
  try {
    PpsCandidates(m, PpsSequence{{{}, 0, 1, 3}, {3, 5}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidSequence);
  }
}

TEST_CASE("candidates agree with the rank description") {
  for (const char* name : {"gf2_3", "u23_plus_free2", "two_lines_rank3",
                           "uniform_3_5", "sparse_paving_6"}) {
    CAPTURE(name);
    Matroid m = Named(name);
    for (const PpsConfig& c : Configs(m)) {
      PpsRunResult r = PpsRunSearch(m, c, PpsStrategy::kAllBranches, 6);
      for (const PpsRun& run : r.runs) {
        const std::vector<int>& ts = run.sequence.ts;
        for (std::size_t len = 1; len <= ts.size(); ++len) {
          if (len == ts.size() && run.status == PpsStatus::kCycle) break;
          PpsSequence prefix{c, {ts.begin(), ts.begin() + len}};
          CHECK(PpsCandidates(m, prefix) == CandidatesByRank(m, c, prefix.ts));
        }
      }
    }
  }
}

TEST_CASE("every element stays outside the paddle span") {
  for (const char* name : {"gf2_3", "gf3_plane", "u23_plus_free2",
                           "three_planes_rank4"}) {
    CAPTURE(name);
    Matroid m = Named(name);
    for (const PpsConfig& c : Configs(m)) {
      for (const PpsRun& run :
           PpsRunSearch(m, c, PpsStrategy::kAllBranches, 8).runs) {
        PpsReport rep = PpsVerify(m, run.sequence);
        CHECK(rep.step_valid);
        CHECK(rep.outside_closure);
        // A consecutive piece, re-based on its own first element, is valid.
        const std::vector<int>& ts = run.sequence.ts;
        if (ts.size() >= 3) {
          PpsConfig shifted{c.net, c.a2, c.a1, ts[1]};
          PpsSequence tail{shifted, {ts.begin() + 1, ts.end()}};
          CHECK(PpsVerify(m, tail).step_valid);
        }
      }
    }
  }
}

TEST_CASE("cycle search") {
  CycleSearchResult fano = PpsFindCycle(Named("gf2_3"), 16);
  REQUIRE(fano.status == CycleSearchResult::Status::kFound);
  CHECK(fano.witness->CycleLength() == 4);
  CHECK(fano.witness->sequence.ts == std::vector<int>{3, 4, 6, 5, 3});
  CHECK(PpsFindCycle(Named("gf3_plane"), 16).status ==
        CycleSearchResult::Status::kFound);
  for (const char* name : {"uniform_2_4", "uniform_3_6", "two_lines_rank3",
                           "free_4"}) {
    CAPTURE(name);
    CHECK(PpsFindCycle(Named(name), 16).status ==
          CycleSearchResult::Status::kNone);
  }
}

TEST_CASE("a point on a three-point line bounces between its neighbours") {
  // With the net on the line, the other two line points are interdependent
  // over the net alone, so either free paddle sends each to the other.
  Matroid m = Named("u23_plus_free2");
  CycleSearchResult r = PpsFindCycle(m, 16);
  REQUIRE(r.status == CycleSearchResult::Status::kFound);
  CHECK(r.witness->sequence.config == PpsConfig{{0}, 3, 4, 1});
  CHECK(r.witness->sequence.ts == std::vector<int>{1, 2, 1});
  CHECK(r.witness->CycleLength() == 2);
  FlatnessOptions all;
  all.exhaustive = true;
  CHECK(CheckFlat(m, all).status == FlatnessVerdict::Status::kFlatExhaustive);
}

TEST_CASE("short budgets are reported as such") {
  CycleSearchResult r = PpsFindCycle(Named("gf2_3"), 3);
  CHECK(r.status == CycleSearchResult::Status::kBudgetExceeded);
}

}  // namespace
}  // namespace flatgeom
