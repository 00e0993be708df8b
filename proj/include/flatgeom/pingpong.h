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

#ifndef FLATGEOM_PINGPONG_H_
#define FLATGEOM_PINGPONG_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "flatgeom/matroid.h"

namespace flatgeom {

// Ping-pong sequences. Write cl_X(Y) for cl(X + Y). Starting from
// t1 outside cl_X(a1, a2), each next element is chosen in
// cl_X(a, t) - cl_X(a), distinct from t, where the paddle a alternates
// a1, a2, a1, ... (the step leaving t_i uses a1 for odd i).

struct PpsConfig {
  ElementSet net;  // X
  int a1 = -1;
  int a2 = -1;
  int t1 = -1;

  bool operator==(const PpsConfig&) const = default;
};

struct PpsSequence {
  PpsConfig config;
  std::vector<int> ts;  // t1, t2, ...; ts.front() == config.t1
};

// Paddle used for the step leaving ts[index] (0-based).
int PaddleFor(const PpsConfig& config, std::size_t index);

// Throws Error(kInvalidConfig) unless a1, a2 are distinct and independent
// over the net and t1 lies outside cl_X(a1, a2).
void ValidateConfig(const Matroid& m, const PpsConfig& config);

// Legal next elements, increasing. Empty means the sequence terminates.
// Throws Error(kInvalidSequence) if `seq` is not a valid sequence.
std::vector<int> PpsCandidates(const Matroid& m, const PpsSequence& seq);

enum class PpsStrategy { kLeast, kAllBranches };

enum class PpsStatus {
  kTerminated,      // no candidate left
  kCycle,           // the last element repeats an earlier one
  kBudgetExceeded,  // length reached the budget with candidates left
};
const char* PpsStatusName(PpsStatus status);

struct PpsRun {
  PpsSequence sequence;
  PpsStatus status = PpsStatus::kTerminated;
  int repeat_of = -1;  // index of the earlier copy when status is kCycle

  int CycleLength() const {
    return repeat_of < 0
               ? 0
               : static_cast<int>(sequence.ts.size()) - 1 - repeat_of;
  }
};

struct PpsRunResult {
  std::vector<PpsRun> runs;  // DFS order == lexicographic on ts
  bool truncated = false;    // max_runs reached before the tree was done
};

// `least` follows the least candidate at every step; `all-branches` returns
// every maximal sequence. A sequence stops when it cycles, terminates, or
// reaches `budget` elements.
PpsRunResult PpsRunSearch(const Matroid& m, const PpsConfig& config,
                          PpsStrategy strategy, int budget,
                          int64_t max_runs = int64_t{1} << 20);

struct PpsReport {
  bool config_valid = true;
  bool step_valid = true;
  int first_bad_step = -1;  // index i whose successor ts[i+1] is illegal
  bool outside_closure = true;
  int first_inside = -1;  // index of an element inside cl_X(a1, a2)
  bool injective = true;
  int repeat_first = -1;
  int repeat_second = -1;
};

// Checks step validity, that every element avoids cl_X(a1, a2), and
// injectivity; never throws for well-formed element ids.
PpsReport PpsVerify(const Matroid& m, const PpsSequence& seq);

struct CycleSearchResult {
  enum class Status { kFound, kNone, kBudgetExceeded };

  Status status = Status::kNone;
  std::optional<PpsRun> witness;
  int64_t configs = 0;
  int64_t sequences = 0;
};
const char* CycleSearchStatusName(CycleSearchResult::Status status);

// Searches every configuration (nets range over flats, since only cl(X)
// matters) and every branch up to `budget` elements for a sequence that
// repeats. Returns the first cycle in search order: net in canonical flat
// order, then a1, a2, t1, then lexicographic branch order. kNone means the
// search was exhaustive; kBudgetExceeded means some branch was cut off.
CycleSearchResult PpsFindCycle(const Matroid& m, int budget);

}  // namespace flatgeom

#endif  // FLATGEOM_PINGPONG_H_
