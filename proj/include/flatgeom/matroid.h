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

#ifndef FLATGEOM_MATROID_H_
#define FLATGEOM_MATROID_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "flatgeom/element_set.h"

namespace flatgeom {

// Column vectors over the prime field GF(field); one column per element.
struct LinearOracle {
  int field = 2;
  std::vector<std::vector<int>> columns;
};

// Uniform matroid U(rank, size): every set of at most `rank` elements is
// independent.
struct UniformOracle {
  int rank = 0;
};

struct ClosureEntry {
  ElementSet set;
  ElementSet closure;
};

// Explicit closure table. Listed sets close to their listed value verbatim.
// Every listed value is treated as a flat, and an unlisted set closes to the
// intersection of the ground set with all listed values containing it.
struct ClosureTableOracle {
  std::vector<ClosureEntry> entries;
};

using Oracle = std::variant<LinearOracle, UniformOracle, ClosureTableOracle>;

// A finite pregeometry on the ground set {0, ..., size-1} given by a rank
// or closure oracle. Immutable; copies share their lookup tables.
//
// Rank of a closure-table matroid is computed greedily in increasing id
// order: an element counts when it is outside the closure of the elements
// counted before it. On a valid pregeometry this is the usual rank.
class Matroid {
 public:
  static Matroid Linear(int field, std::vector<std::vector<int>> columns,
                        std::vector<std::string> labels = {});
  static Matroid Uniform(int rank, int size);
  static Matroid Free(int size) { return Uniform(size, size); }
  static Matroid ClosureTable(int size, std::vector<ClosureEntry> entries,
                              std::vector<std::string> labels = {});

  int size() const { return size_; }
  ElementSet ground() const { return ElementSet::Range(size_); }
  const Oracle& oracle() const { return oracle_; }
  const std::vector<std::string>& labels() const { return labels_; }
  // Display name for an element: its label if any, else its id.
  std::string Label(int id) const;

  // Throws Error(kInvalidElement) unless `set` is a subset of the ground.
  void CheckSubset(ElementSet set) const;

  // Unchecked primitives; callers validate with CheckSubset first.
  ElementSet ClosureOf(ElementSet set) const;
  int RankOf(ElementSet set) const;

  // Ground sets up to this size get precomputed closure and rank tables.
  static constexpr int kTableLimit = 16;

 private:
  struct Tables;

  Matroid(int size, Oracle oracle, std::vector<std::string> labels);
  ElementSet ComputeClosure(ElementSet set) const;
  int ComputeRank(ElementSet set) const;
  void BuildTables();

  int size_ = 0;
  Oracle oracle_;
  std::vector<std::string> labels_;
  std::shared_ptr<const Tables> tables_;
};

struct Flat {
  ElementSet elements;
  int dim = 0;

  bool operator==(const Flat&) const = default;
};

struct Circuit {
  ElementSet elements;

  int size() const { return elements.size(); }
  bool operator==(const Circuit&) const = default;
};

// The least flat containing `set`.
Flat Closure(const Matroid& m, ElementSet set);
int Rank(const Matroid& m, ElementSet set);
bool IsIndependent(const Matroid& m, ElementSet set);
// True when every element of `set` lies outside the closure of `base` and
// the rest of `set`.
bool IsIndependentOver(const Matroid& m, ElementSet set, ElementSet base);

// Every flat of `m` in canonical order, each with its dimension.
std::vector<Flat> AllFlats(const Matroid& m);

struct VerifyOptions {
  int bound = 12;
  bool sample = false;
  int samples = 20000;
  uint64_t seed = 0x5eedULL;
};

enum class AxiomKind { kExtensive, kMonotone, kIdempotent, kExchange, kRank };
const char* AxiomKindName(AxiomKind kind);

struct AxiomViolation {
  AxiomKind kind;
  int a = -1;
  int b = -1;
  ElementSet set;
};

struct PregeometryReport {
  bool exhaustive = true;
  int64_t checks = 0;
  std::optional<AxiomViolation> violation;

  bool passed() const { return !violation.has_value(); }
};

// Checks extensivity, monotonicity, idempotence, exchange and rank/closure
// consistency over every subset (canonical order) and reports the first
// violation. Ground sets above options.bound need options.sample, in which
// case random subsets are checked instead; otherwise throws GroundTooLarge.
PregeometryReport VerifyPregeometry(const Matroid& m,
                                    const VerifyOptions& options = {});

// All circuits with at most max_size elements, in canonical order.
std::vector<Circuit> Circuits(const Matroid& m, int max_size);

struct CircuitParam {
  int circuit_size = 0;  // size of the smallest circuit with > 2 elements
  int n = 0;             // circuit_size - 1
};
// Throws Error(kNoLargeCircuit) when every circuit has at most 2 elements.
CircuitParam SmallestCircuitParam(const Matroid& m);

// Whether the closures cl(abar + bs - b_i) intersect exactly in cl(abar).
// Throws Error(kNotIndependent) unless bs is a non-empty tuple of distinct
// elements independent over abar.
bool CarouselCheck(const Matroid& m, ElementSet abar, std::span<const int> bs);

}  // namespace flatgeom

#endif  // FLATGEOM_MATROID_H_
