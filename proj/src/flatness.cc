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

#include "flatgeom/flatness.h"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "flatgeom/error.h"

namespace flatgeom {

FlatCollection FlatCollection::Of(const Matroid& m,
                                  std::vector<ElementSet> sets) {
  std::sort(sets.begin(), sets.end(), CanonicalLess);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  FlatCollection out;
  for (ElementSet set : sets) {
    m.CheckSubset(set);
    if (m.ClosureOf(set) != set) {
      throw Error(ErrorCode::kInvalidArgument,
                  "collection member is not a flat");
    }
    out.flats_.push_back(Flat{set, m.RankOf(set)});
  }
  return out;
}

ElementSet FlatCollection::Union() const {
  ElementSet out;
  for (const Flat& f : flats_) out |= f.elements;
  return out;
}

int64_t Delta(const Matroid& m, const FlatCollection& sigma) {
  if (sigma.empty()) {
    throw Error(ErrorCode::kEmptyCollection, "Delta of an empty collection");
  }
  const int k = sigma.size();
  if (k > 24) {
    throw Error(ErrorCode::kInvalidArgument,
                "collections above 24 flats are not supported");
  }
  int64_t total = 0;
  for (uint32_t s = 1; s < (uint32_t{1} << k); ++s) {
    ElementSet meet = m.ground();
    for (int i = 0; i < k; ++i) {
      if (s & (uint32_t{1} << i)) meet &= sigma.flats()[i].elements;
    }
    const int dim = m.RankOf(meet);
    total += (std::popcount(s) % 2 == 1) ? dim : -dim;
  }
  return total;
}

int UnionDim(const Matroid& m, const FlatCollection& sigma) {
  return m.RankOf(sigma.Union());
}

bool IsDisintegrated(const Matroid& m, int bound) {
  if (m.size() > bound) {
    throw Error(ErrorCode::kGroundTooLarge,
                "disintegration check bound is " + std::to_string(bound) +
                    " elements, ground has " + std::to_string(m.size()));
  }
  const ElementSet base = m.ClosureOf(ElementSet());
  bool by_closure = true;
  for (uint64_t bits = 0; bits < (uint64_t{1} << m.size()) && by_closure;
       ++bits) {
    const ElementSet set(bits);
    ElementSet pieces = base;
    for (int id : set) pieces |= m.ClosureOf(ElementSet::Single(id));
    by_closure = m.ClosureOf(set) == pieces;
  }
  bool by_circuits = true;
  try {
    SmallestCircuitParam(m);
    by_circuits = false;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoLargeCircuit) throw;
  }
  if (by_closure != by_circuits) {
    throw Error(ErrorCode::kInternal,
                "closure and circuit disintegration tests disagree; the "
                "input is not a pregeometry");
  }
  return by_closure;
}

const char* FlatnessStatusName(FlatnessVerdict::Status status) {
  switch (status) {
    case FlatnessVerdict::Status::kFlatUpTo:
      return "FlatUpTo";
    case FlatnessVerdict::Status::kFlatExhaustive:
      return "Flat";
    case FlatnessVerdict::Status::kNotFlat:
      return "NotFlat";
    case FlatnessVerdict::Status::kDisintegrated:
      return "Disintegrated";
  }
  return "Unknown";
}

namespace {

// Depth-first search over index-increasing flat collections. Each node
// carries the signed count of index subsets per intersection flat, which
// gives Delta of a one-larger collection in O(#flats):
//   Delta(S + E) = Delta(S) + dim(E) - Delta({F & E : F in S}).
class CollectionSearch {
 public:
  CollectionSearch(const Matroid& m, std::vector<Flat> flats, int limit)
      : m_(m), flats_(std::move(flats)), limit_(limit) {
    const int count = static_cast<int>(flats_.size());
    std::unordered_map<uint64_t, int> index;
    for (int i = 0; i < count; ++i) index[flats_[i].elements.bits()] = i;
    meet_.assign(count, std::vector<int>(count));
    for (int i = 0; i < count; ++i) {
      for (int j = 0; j < count; ++j) {
        const auto it =
            index.find((flats_[i].elements & flats_[j].elements).bits());
        if (it == index.end()) {
          throw Error(ErrorCode::kInvalidStructure,
                      "intersection of two flats is not a flat");
        }
        meet_[i][j] = it->second;
      }
    }
  }

  void Run() {
    std::vector<int> coef(flats_.size(), 0);
    Visit(0, coef, 0, ElementSet());
  }

  int64_t checked() const { return checked_; }
  const std::vector<int>& best() const { return best_; }
  int64_t best_delta() const { return best_delta_; }
  int best_union_dim() const { return best_union_dim_; }

 private:
  void Visit(int start, const std::vector<int>& coef, int64_t delta,
             ElementSet uni) {
    const int count = static_cast<int>(flats_.size());
    const int size = static_cast<int>(chosen_.size()) + 1;
    if (size > limit_) return;
    if (!best_.empty() && size >= static_cast<int>(best_.size())) return;
    std::vector<int> next(coef.size());
    for (int i = start; i < count; ++i) {
      int64_t next_delta = delta + flats_[i].dim;
      for (int g = 0; g < count; ++g) {
        if (coef[g] != 0) next_delta -= int64_t{coef[g]} * flats_[meet_[g][i]].dim;
      }
      const ElementSet next_union = uni | flats_[i].elements;
      ++checked_;
      chosen_.push_back(i);
      const int union_dim = m_.RankOf(next_union);
      if (next_delta < union_dim) {
        if (best_.empty() || chosen_.size() < best_.size()) {
          best_ = chosen_;
          best_delta_ = next_delta;
          best_union_dim_ = union_dim;
        }
        chosen_.pop_back();
        continue;
      }
      next = coef;
      for (int g = 0; g < count; ++g) {
        if (coef[g] != 0) next[meet_[g][i]] -= coef[g];
      }
      next[i] += 1;
      Visit(i + 1, next, next_delta, next_union);
      chosen_.pop_back();
      if (!best_.empty() && size >= static_cast<int>(best_.size())) return;
    }
  }

  const Matroid& m_;
  std::vector<Flat> flats_;
  int limit_;
  std::vector<std::vector<int>> meet_;
  std::vector<int> chosen_;
  std::vector<int> best_;
  int64_t best_delta_ = 0;
  int best_union_dim_ = 0;
  int64_t checked_ = 0;
};

bool DisintegratedForFlatness(const Matroid& m, int bound) {
  if (m.size() <= bound) return IsDisintegrated(m, bound);
  try {
    SmallestCircuitParam(m);
    return false;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoLargeCircuit) throw;
  }
  return true;
}

}  // namespace

FlatnessVerdict CheckFlat(const Matroid& m, const FlatnessOptions& options) {
  if (options.max_collection_size < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "max_collection_size must be >= 1");
  }
  FlatnessVerdict verdict;
  verdict.bound = options.max_collection_size;
  if (DisintegratedForFlatness(m, options.disintegration_bound)) {
    verdict.status = FlatnessVerdict::Status::kDisintegrated;
    return verdict;
  }
  std::vector<Flat> flats = AllFlats(m);
  verdict.flat_count = static_cast<int>(flats.size());
  int limit = options.max_collection_size;
  if (options.exhaustive) {
    if (verdict.flat_count > options.max_exhaustive_flats) {
      throw Error(ErrorCode::kGroundTooLarge,
                  std::to_string(verdict.flat_count) +
                      " flats is too many for an exhaustive search (limit " +
                      std::to_string(options.max_exhaustive_flats) + ")");
    }
    limit = verdict.flat_count;
    verdict.bound = limit;
  }
  CollectionSearch search(m, flats, limit);
  search.Run();
  verdict.collections_checked = search.checked();
  if (!search.best().empty()) {
    std::vector<ElementSet> members;
    for (int i : search.best()) members.push_back(flats[i].elements);
    verdict.status = FlatnessVerdict::Status::kNotFlat;
    verdict.witness = FlatnessWitness{FlatCollection::Of(m, members),
                                      search.best_delta(),
                                      search.best_union_dim()};
    return verdict;
  }
  verdict.status = limit >= verdict.flat_count
                       ? FlatnessVerdict::Status::kFlatExhaustive
                       : FlatnessVerdict::Status::kFlatUpTo;
  return verdict;
}

}  // namespace flatgeom
