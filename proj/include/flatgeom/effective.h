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

#ifndef FLATGEOM_EFFECTIVE_H_
#define FLATGEOM_EFFECTIVE_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flatgeom/matroid.h"

namespace flatgeom {

struct Relation {
  std::string name;
  int arity = 1;
  std::set<std::vector<int>> tuples;
};

// A finite relational structure on {0, ..., size-1}.
struct RelationalStructure {
  int size = 0;
  std::vector<Relation> relations;

  bool Holds(int relation, const std::vector<int>& tuple) const {
    return relations[relation].tuples.contains(tuple);
  }
};

// A structure whose symbols become visible one at a time, in
// `signature_order`. The matroid is only needed for closure schedules.
class StagewisePresentation {
 public:
  // Throws Error(kInvalidStructure) on malformed relations or an order that
  // is not a permutation of the relation names, Error(kInvalidElement) on a
  // tuple naming an element outside the universe.
  static StagewisePresentation Create(RelationalStructure structure,
                                      std::vector<std::string> signature_order,
                                      std::optional<Matroid> matroid = {});

  const RelationalStructure& structure() const { return structure_; }
  int size() const { return structure_.size; }
  // Relation indices in reveal order.
  const std::vector<int>& order() const { return order_; }
  const std::optional<Matroid>& matroid() const { return matroid_; }

 private:
  StagewisePresentation() = default;

  RelationalStructure structure_;
  std::vector<int> order_;
  std::optional<Matroid> matroid_;
};

// Monotone stagewise enumeration: x is in A_s once s >= stage_of(x).
class Sigma1Schedule {
 public:
  // `order` is the enumeration order; missing stages default to 1.
  static Sigma1Schedule Create(int universe, std::vector<int> order,
                               std::map<int, int> stage_of = {});

  const std::vector<int>& order() const { return order_; }
  int StageOf(int x) const;  // -1 when x is never enumerated
  bool InAt(int x, int stage) const;
  ElementSet At(int stage) const;
  ElementSet Limit() const;

 private:
  std::vector<int> order_;
  std::map<int, int> stage_of_;
};

struct Flip {
  int element = 0;
  int stage = 1;
  bool in = true;

  bool operator==(const Flip&) const = default;
};

// Stagewise membership guesses M_0, M_1, ... converging to `target`.
// Each element's flips alternate; its value before the first flip is the
// opposite of that flip, and an element that never flips sits at its limit.
class Delta2Schedule {
 public:
  // Throws Error(kInvalidArgument) when flips do not alternate, exceed the
  // per-element budget, or end away from the target.
  static Delta2Schedule Create(int universe, ElementSet target,
                               std::vector<Flip> flips, int flip_budget);

  int universe() const { return universe_; }
  ElementSet target() const { return target_; }
  int flip_budget() const { return flip_budget_; }
  // Sorted by (stage, element).
  const std::vector<Flip>& flips() const { return flips_; }
  int FlipCount(int x) const;
  int LastFlipStage() const;

  bool InAt(int x, int stage) const;
  ElementSet At(int stage) const;

  // Forces x into M_s whenever x is in A_s by dropping x's later flips and
  // flipping it in at its enumeration stage. Throws
  // Error(kIncoherentSchedule) unless A is contained in the target.
  Delta2Schedule CorrectedFor(const Sigma1Schedule& a, int* corrections) const;

 private:
  Delta2Schedule() = default;
  void Index();

  int universe_ = 0;
  ElementSet target_;
  int flip_budget_ = 0;
  std::vector<Flip> flips_;
  std::vector<bool> initial_;
  std::vector<std::vector<int>> stages_;  // per element, increasing
};

enum class EventKind { kExtend, kWait, kOutcome1, kOutcome2, kIdle };
const char* EventKindName(EventKind kind);

struct StageRecord {
  int stage = 0;
  EventKind event = EventKind::kIdle;
  int symbol = -1;  // relation revealed at this stage, if any
  // Extend: new B element and its image. Wait/Outcome2: z.
  int element = -1;
  int image = -1;
  int z = -1;
  int a = -1;
  std::vector<int> ybar;        // images moved away from, increasing
  std::vector<int> ybar_prime;  // their new images
  std::vector<int> map;         // f after this stage; map[x] = f(x)
};

struct ConstructionTrace {
  enum class Status { kComplete, kStuck };

  Status status = Status::kComplete;
  int stuck_since = -1;  // detection stage of the unresolved wait
  int horizon = 0;
  int corrections = 0;  // coherence corrections applied to M_s
  std::vector<StageRecord> stages;
  std::vector<int> limit_map;
  std::vector<int> settled_at;  // stage of each element's last move
  std::vector<int> symbols;     // revealed relations, in order
  // diagram[i]: B-tuples satisfying symbols[i].
  std::vector<std::set<std::vector<int>>> diagram;
  int outcome1_count = 0;
  int outcome2_count = 0;
  int longest_wait = 0;
};

const char* TraceStatusName(ConstructionTrace::Status status);

// Builds a copy B of the part of N picked out by the schedules, one stage
// at a time up to `horizon`. The schedule is first made coherent with A.
// Throws Error(kInvalidArgument) when the horizon does not pass the last
// flip or the schedules are over a different universe.
ConstructionTrace GoingDownRun(const StagewisePresentation& p,
                               const Delta2Schedule& m,
                               const Sigma1Schedule& a, int horizon);

struct TraceReport {
  bool stabilized = false;
  bool permanent = false;
  bool isomorphism = false;
  bool surjective = false;
  std::string detail;  // first failure, if any

  bool passed() const {
    return stabilized && permanent && isomorphism && surjective;
  }
};

// Checks that the final map has settled into M with nothing left to do,
// that no image moves after entering A, that B's diagram is the pullback of
// N restricted to M relation by relation, and that the map is onto M.
TraceReport TraceVerify(const ConstructionTrace& trace,
                        const StagewisePresentation& p, ElementSet target,
                        const Sigma1Schedule& a);

// Delayed guesses for one element: it toggles `toggles` times at stages
// stage, stage+1, ... and then stays at its true value.
struct DelayEntry {
  int element = 0;
  int stage = 1;
  int toggles = 0;
};

// A schedule converging to cl(bbar). Membership is decided both by rank
// and by the basis-exchange conjunction over a completion of bbar to a
// basis; the script only controls when the guesses flip.
// Throws Error(kNotExtendable) if bbar is dependent, Error(kInvalidArgument)
// if the presentation has no matroid.
Delta2Schedule Delta2AclSchedule(const StagewisePresentation& p,
                                 ElementSet bbar,
                                 const std::vector<DelayEntry>& script);

}  // namespace flatgeom

#endif  // FLATGEOM_EFFECTIVE_H_
