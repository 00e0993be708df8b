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

#ifndef FLATGEOM_FLATNESS_H_
#define FLATGEOM_FLATNESS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "flatgeom/matroid.h"

namespace flatgeom {

// A set of distinct flats of one matroid, stored in canonical order.
class FlatCollection {
 public:
  FlatCollection() = default;

  // Validates that every member is a flat of `m`; removes duplicates.
  static FlatCollection Of(const Matroid& m, std::vector<ElementSet> sets);

  const std::vector<Flat>& flats() const { return flats_; }
  int size() const { return static_cast<int>(flats_.size()); }
  bool empty() const { return flats_.empty(); }
  ElementSet Union() const;

 private:
  std::vector<Flat> flats_;
};

// Inclusion-exclusion with dimension in place of cardinality:
//   sum over non-empty s of (-1)^(|s|+1) * dim(intersection of s).
// Evaluated term by term over all 2^k - 1 index sets (k <= 24).
// Throws Error(kEmptyCollection) on an empty collection.
int64_t Delta(const Matroid& m, const FlatCollection& sigma);

// dim of the union of the members.
int UnionDim(const Matroid& m, const FlatCollection& sigma);

// cl(A) equals the union of cl(a), a in A, together with cl(empty), for every
// A; cross-checked against "no circuit has 3 or more elements".
// Throws GroundTooLarge above `bound`, kInternal if the two tests disagree.
bool IsDisintegrated(const Matroid& m, int bound = 12);

struct FlatnessOptions {
  int max_collection_size = 4;
  // Search every collection of every flat; certifies Flat(exhaustive).
  bool exhaustive = false;
  int disintegration_bound = 12;
  // Exhaustive search is refused above this many flats.
  int max_exhaustive_flats = 24;
};

struct FlatnessWitness {
  FlatCollection sigma;
  int64_t delta = 0;
  int union_dim = 0;
};

struct FlatnessVerdict {
  enum class Status { kFlatUpTo, kFlatExhaustive, kNotFlat, kDisintegrated };

  Status status = Status::kFlatUpTo;
  int bound = 0;
  int flat_count = 0;
  int64_t collections_checked = 0;
  std::optional<FlatnessWitness> witness;
};

const char* FlatnessStatusName(FlatnessVerdict::Status status);

// Searches collections of at most max_collection_size distinct flats for one
// with Delta < dim(union). The reported witness is least by (size, then
// lexicographic on canonical flat indices).
FlatnessVerdict CheckFlat(const Matroid& m, const FlatnessOptions& options = {});

}  // namespace flatgeom

#endif  // FLATGEOM_FLATNESS_H_
