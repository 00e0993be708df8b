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

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "flatgeom/corpus.h"
#include "flatgeom/error.h"
#include "flatgeom/flatness.h"

namespace flatgeom {
namespace {

Matroid Named(const std::string& name) {
  return MatroidFromJson(CorpusEntryNamed(name).json);
}

// Inclusion-exclusion written out with explicit intersections.
int64_t DeltaByHand(const Matroid& m, const std::vector<ElementSet>& sets) {
  int64_t total = 0;
  const int k = static_cast<int>(sets.size());
  for (uint32_t pick = 1; pick < (1u << k); ++pick) {
    ElementSet inter = m.ground();
    int count = 0;
    for (int i = 0; i < k; ++i) {
      if ((pick >> i) & 1) {
        inter &= sets[i];
        ++count;
      }
    }
    total += (count % 2 == 1 ? 1 : -1) * Rank(m, inter);
  }
  return total;
}

std::vector<ElementSet> FlatsByBruteForce(const Matroid& m) {
  std::vector<ElementSet> out;
  for (uint64_t bits = 0; bits < (uint64_t{1} << m.size()); ++bits) {
    ElementSet s(bits);
    bool closed = true;
    for (int x : m.ground() - s) {
      if (Rank(m, s.With(x)) == Rank(m, s)) {
        closed = false;
        break;
      }
    }
    if (closed) out.push_back(s);
  }
  return out;
}

TEST_CASE("four planes of GF(2)^3") {
  Matroid m = Named("gf2_3");
  FlatCollection sigma =
      FlatCollection::Of(m, {{0, 1, 2}, {1, 3, 5}, {0, 5, 6}, {2, 3, 6}});
  CHECK(Delta(m, sigma) == 2);
  CHECK(UnionDim(m, sigma) == 3);
  // -6 pairs of dim 1, +4 planes of dim 2.
  CHECK(DeltaByHand(m, {{0, 1, 2}, {1, 3, 5}, {0, 5, 6}, {2, 3, 6}}) == 2);
}

TEST_CASE("three planes meeting pairwise in lines") {
  Matroid m = Named("three_planes_rank4");
  FlatCollection sigma =
      FlatCollection::Of(m, {{0, 1, 2, 3}, {0, 1, 4, 5}, {2, 3, 4, 5}});
  for (const Flat& f : sigma.flats()) CHECK(f.dim == 3);
  CHECK(Rank(m, {0, 1}) == 2);
  CHECK(Rank(m, {}) == 0);
  CHECK(Delta(m, sigma) == 3);
}

TEST_CASE("delta agrees with explicit inclusion-exclusion") {
  std::mt19937_64 rng(11);
  for (const Matroid& m : CorpusMatroids()) {
    if (m.size() > 13) continue;
    std::vector<Flat> flats = AllFlats(m);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<ElementSet> sets;
      const int k = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < k; ++i) {
        sets.push_back(flats[rng() % flats.size()].elements);
      }
      FlatCollection sigma = FlatCollection::Of(m, sets);
      std::vector<ElementSet> distinct;
      for (const Flat& f : sigma.flats()) distinct.push_back(f.elements);
      CHECK(Delta(m, sigma) == DeltaByHand(m, distinct));
      if (sigma.size() == 1) CHECK(Delta(m, sigma) == sigma.flats()[0].dim);
      // Two flats never violate: this is submodularity.
      if (sigma.size() == 2) CHECK(Delta(m, sigma) >= UnionDim(m, sigma));
    }
  }
}

TEST_CASE("collections validate their members") {
  Matroid m = Named("gf2_3");
  CHECK_THROWS_AS(FlatCollection::Of(m, {{0, 1}}), Error);
  try {
    Delta(m, FlatCollection());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyCollection);
  }
  CHECK(FlatCollection::Of(m, {{0, 1, 2}, {0, 1, 2}}).size() == 1);
}

TEST_CASE("flat enumeration matches brute force") {
  for (const Matroid& m : CorpusMatroids()) {
    if (m.size() > 10) continue;
    std::vector<ElementSet> expect = FlatsByBruteForce(m);
    std::sort(expect.begin(), expect.end(), CanonicalLess);
    std::vector<ElementSet> got;
    for (const Flat& f : AllFlats(m)) got.push_back(f.elements);
    CHECK(got == expect);
  }
}

TEST_CASE("disintegration") {
  CHECK(IsDisintegrated(Matroid::Free(4)));
  CHECK_FALSE(IsDisintegrated(Matroid::Uniform(2, 3)));
  CHECK_FALSE(IsDisintegrated(Named("gf2_3")));
  // Oracle: closures of sets are the union of closures of points.
  for (const Matroid& m : CorpusMatroids()) {
    if (m.size() > 10) continue;
    bool expect = true;
    for (uint64_t bits = 0; bits < (uint64_t{1} << m.size()); ++bits) {
      ElementSet s(bits), joined = m.ClosureOf({});
      for (int x : s) joined |= m.ClosureOf(ElementSet::Single(x));
      if (m.ClosureOf(s) != joined) expect = false;
    }
    CHECK(IsDisintegrated(m) == expect);
  }
}

TEST_CASE("flatness verdicts") {
  FlatnessVerdict fano = CheckFlat(Named("gf2_3"));
  CHECK(fano.status == FlatnessVerdict::Status::kNotFlat);
  REQUIRE(fano.witness.has_value());
  CHECK(fano.witness->sigma.size() == 4);
  CHECK(fano.witness->delta == 2);
  CHECK(fano.witness->union_dim == 3);
  // The reported witness re-evaluates to the same numbers.
  CHECK(Delta(Named("gf2_3"), fano.witness->sigma) == 2);

  CHECK(CheckFlat(Matroid::Uniform(2, 3)).status ==
        FlatnessVerdict::Status::kFlatUpTo);
  CHECK(CheckFlat(Matroid::Free(4)).status ==
        FlatnessVerdict::Status::kDisintegrated);

  FlatnessOptions all;
  all.exhaustive = true;
  for (const char* name : {"uniform_2_3", "uniform_2_4", "uniform_3_5",
                           "u23_plus_free2", "two_lines_rank3"}) {
    CAPTURE(name);
    CHECK(CheckFlat(Named(name), all).status ==
          FlatnessVerdict::Status::kFlatExhaustive);
  }
  CHECK(CheckFlat(Named("gf2_3"), all).status ==
        FlatnessVerdict::Status::kNotFlat);
  try {
    CheckFlat(Named("gf3_plane"), all);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kGroundTooLarge);
  }
  for (const char* name : {"gf3_plane", "gf3_3"}) {
    CAPTURE(name);
    CHECK(CheckFlat(Named(name)).status == FlatnessVerdict::Status::kNotFlat);
  }
}

TEST_CASE("every reported witness violates the inequality") {
  for (const Matroid& m : CorpusMatroids()) {
    if (m.size() > 13) continue;
    FlatnessVerdict v = CheckFlat(m);
    if (!v.witness) continue;
    CHECK(Delta(m, v.witness->sigma) == v.witness->delta);
    CHECK(UnionDim(m, v.witness->sigma) == v.witness->union_dim);
    CHECK(v.witness->delta < v.witness->union_dim);
  }
}

}  // namespace
}  // namespace flatgeom
