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

#ifndef FLATGEOM_LAMBDA_H_
#define FLATGEOM_LAMBDA_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "flatgeom/matroid.h"

namespace flatgeom {

// The extension of the designated circuit relation, as ordered tuples.
struct PhiRelation {
  int arity = 0;
  std::vector<std::vector<int>> tuples;
};

// A fiber query: the tuple with coordinate `position` removed.
struct FiberKey {
  int position = 0;
  std::vector<int> rest;

  auto operator<=>(const FiberKey&) const = default;
};

FiberKey KeyOf(const std::vector<int>& tuple, int position);

// Finite structure carrying a compatible matroid and a circuit relation.
// Invariants, checked by Create: every tuple is a circuit of size `arity`,
// every fiber has fewer than `fiber_bound` elements, and phi is non-empty.
class GeometricStructure {
 public:
  // Throws Error(kInvalidStructure) when an invariant fails.
  static GeometricStructure Create(Matroid matroid, PhiRelation phi,
                                   int fiber_bound);

  int universe_size() const { return matroid_.size(); }
  ElementSet universe() const { return matroid_.ground(); }
  const Matroid& matroid() const { return matroid_; }
  const PhiRelation& phi() const { return phi_; }
  int fiber_bound() const { return fiber_bound_; }

  // Exact fiber sizes, keyed by query.
  const std::map<FiberKey, int>& fiber_sizes() const { return fiber_sizes_; }

 private:
  GeometricStructure(Matroid matroid, PhiRelation phi, int fiber_bound);

  Matroid matroid_;
  PhiRelation phi_;
  int fiber_bound_;
  std::map<FiberKey, int> fiber_sizes_;
};

// One closure round: `xi` plus every element that completes a phi tuple
// whose other coordinates all lie in `xi`.
ElementSet LambdaStep(const GeometricStructure& g, ElementSet xi);

struct LambdaResult {
  enum class Status { kFixpoint, kDiverging };

  Status status = Status::kFixpoint;
  // X^0 = X, X^1, ...; for kFixpoint the last entry is X^i = X^(i+1).
  std::vector<ElementSet> iterates;
  int fixpoint_index = -1;

  ElementSet closure() const { return iterates.back(); }
};

// Iterates LambdaStep until X^i = X^(i+1) or `budget` rounds have run.
// The chain is increasing and bounded by the universe, so a budget of
// universe_size() + 1 rounds always reaches the fixpoint (the default when
// budget <= 0).
LambdaResult LambdaClosure(const GeometricStructure& g, ElementSet x,
                           int budget = 0);

// A structure revealed in stages, viewed through a finite horizon of the
// universe. Tuples appear at their reveal stage and are never retracted.
// The count oracle returns the exact fiber size in the limit structure; a
// count above the number of horizon tuples with that key means the fiber
// continues outside the horizon.
//
// Seeds are drawn from a core inside the horizon. The scenario guarantees
// that every finite closure of a core tuple lies in the horizon, so a
// closure that reaches an escaping fiber is infinite. (No horizon can
// contain every finite closure of its own elements: the pair that feeds
// the last escaping fiber always has a finite closure reaching outside.)
class EnumeratedStructure {
 public:
  // `reveal_stage[i]` is the 1-based stage of tuple i of `limit.phi()`.
  // `declared_counts` override the horizon count for selected keys and may
  // only raise it. An empty `core` means the whole universe.
  // Throws Error(kInvalidStructure) on inconsistent input.
  static EnumeratedStructure Create(GeometricStructure limit,
                                    std::vector<int> reveal_stage,
                                    std::map<FiberKey, int> declared_counts,
                                    ElementSet core = {});
  // Every fact revealed at stage 1, counts equal to the horizon counts.
  static EnumeratedStructure Complete(GeometricStructure limit);

  const GeometricStructure& limit() const { return limit_; }
  ElementSet core() const { return core_; }
  int stage_count() const { return stage_count_; }
  const std::vector<int>& reveal_stage() const { return reveal_stage_; }
  const std::map<FiberKey, int>& declared_counts() const {
    return declared_counts_;
  }

  int Count(const FiberKey& key) const;
  bool Escapes(const FiberKey& key) const;

  struct KeyInfo {
    int count = 0;
    bool escapes = false;
    std::vector<int> tuple_indices;
  };
  const std::map<FiberKey, KeyInfo>& keys() const { return keys_; }

 private:
  EnumeratedStructure(GeometricStructure limit, std::vector<int> reveal_stage,
                      std::map<FiberKey, int> declared_counts);

  GeometricStructure limit_;
  std::vector<int> reveal_stage_;
  std::map<FiberKey, int> declared_counts_;
  std::map<FiberKey, KeyInfo> keys_;
  ElementSet core_;
  int stage_count_ = 1;
};

struct StagedLambda {
  enum class Status {
    kFixpoint,  // every needed fiber fully revealed and X^i = X^(i+1)
    kEscapes,   // a needed fiber leaves the horizon: certified infinite
    kPending,   // some needed fiber is not fully revealed yet
  };

  Status status = Status::kPending;
  // Lower approximations of X^0, X^1, ... from revealed facts.
  std::vector<ElementSet> iterates;
  std::optional<FiberKey> escape_key;
};

const char* StagedStatusName(StagedLambda::Status status);

// The closure of `seed` as far as facts revealed by `stage` determine it.
StagedLambda LambdaAtStage(const EnumeratedStructure& e, ElementSet seed,
                           int stage);

struct AclEnumeration {
  struct Emission {
    int element;
    int stage;
  };
  std::vector<Emission> emissions;
  ElementSet emitted;
  int stages_run = 0;
  bool complete = false;  // false: budget ended before the last stage
};

// Emits a core element a at the first stage where the closure of bbar + a
// is certified finite. Requires bbar inside the core, independent, with
// |bbar| = n for the matroid's smallest large circuit; throws
// Error(kInvalidArgument) otherwise.
AclEnumeration AclEnumerateViaLambda(const EnumeratedStructure& e,
                                     ElementSet bbar, int budget);

struct IldEstimate {
  static constexpr int kInfinite = -1;

  int value = kInfinite;  // kInfinite: every closure is finite
  bool certified = false;
  std::optional<ElementSet> witness;  // flat whose closure escapes
  int stage = 0;
};

// Least dimension of a core set whose closure is infinite. A core set S
// lies in cl(S) & core, which has the same dimension, and closures are
// monotone, so those sets suffice. Uncertified results are lower bounds.
IldEstimate IldEstimateOf(const EnumeratedStructure& e, int budget);

// An explicit two-sorted witness relation psi(u, v) with a declared fiber
// bound and a declared isolation property.
struct WitnessRelation {
  int u_arity = 0;
  int v_arity = 0;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;
  int declared_bound = 1;
  bool declared_isolating = false;
};

struct PsiReport {
  bool totality = true;  // every u-tuple has a witness
  std::vector<int> first_unwitnessed;
  bool bounded = true;  // every fiber below the declared bound
  std::vector<int> first_overfull;
  bool dependent = true;  // every witness lies in the closure of its u
  bool isolation_declared = false;
  bool holds_on_x = false;  // psi(xbar0, xbar1)
};

// Finite-scale check of the witness conditions over every u-tuple of
// universe elements (repetitions allowed).
PsiReport PsiWitnessCheck(const GeometricStructure& g,
                          const WitnessRelation& psi,
                          const std::vector<int>& xbar0,
                          const std::vector<int>& xbar1);

// psi(u, v) := (psi0 has exactly M witnesses at u and psi0(u, v)) or
//              (it does not and every v_i = u_0).
WitnessRelation FallbackWitness(const WitnessRelation& psi0, int exact_count,
                                int universe_size);

}  // namespace flatgeom

#endif  // FLATGEOM_LAMBDA_H_
