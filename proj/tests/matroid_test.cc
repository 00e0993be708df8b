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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "flatgeom/corpus.h"
#include "flatgeom/error.h"
#include "flatgeom/matroid.h"

namespace flatgeom {
namespace {

Matroid Named(const std::string& name) {
  return MatroidFromJson(CorpusEntryNamed(name).json);
}

// Element i of the GF(2)^3 corpus matroid is the vector i+1.
uint32_t Fano(int id) { return static_cast<uint32_t>(id + 1); }

// Everything reachable by XOR-ing members of `set`.
ElementSet SpanClosure(ElementSet set) {
  std::vector<uint32_t> vs;
  for (int x : set) vs.push_back(Fano(x));
  std::vector<bool> reach(8, false);
  for (uint32_t pick = 0; pick < (1u << vs.size()); ++pick) {
    uint32_t v = 0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if ((pick >> i) & 1) v ^= vs[i];
    }
    reach[v] = true;
  }
  ElementSet out;
  for (int id = 0; id < 7; ++id) {
    if (reach[Fano(id)]) out = out.With(id);
  }
  return out;
}

int SpanRank(ElementSet set) {
  int count = 0;
  for (uint32_t v = 1; v < 8; ++v) {
    if (SpanClosure(set).contains(static_cast<int>(v) - 1)) ++count;
  }
  // |span| = 2^rank, and the zero vector is not an element.
  int rank = 0;
  while ((1 << rank) < count + 1) ++rank;
  return rank;
}

bool IsCircuitByRank(const Matroid& m, ElementSet s) {
  if (Rank(m, s) == s.size()) return false;
  for (int x : s) {
    if (Rank(m, s.Without(x)) != s.size() - 1) return false;
  }
  return true;
}

TEST_CASE("closure over GF(2) matches span enumeration") {
  Matroid m = Named("gf2_3");
  for (uint64_t bits = 0; bits < 128; ++bits) {
    ElementSet s(bits);
    CHECK(Closure(m, s).elements == SpanClosure(s));
    CHECK(Rank(m, s) == SpanRank(s));
  }
  CHECK(Closure(m, {0, 1}).elements == ElementSet{0, 1, 2});
  CHECK(Rank(m, m.ground()) == 3);
  CHECK_FALSE(IsIndependent(m, {0, 1, 2}));
  CHECK(IsIndependent(m, {0, 1, 3}));
  CHECK(IsIndependent(m, {}));
}

TEST_CASE("uniform rank is min of size and rank") {
  for (int k = 1; k <= 4; ++k) {
    for (int n = k; n <= 7; ++n) {
      Matroid m = Matroid::Uniform(k, n);
      for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
        ElementSet s(bits);
        CHECK(Rank(m, s) == std::min(s.size(), k));
        ElementSet expect = s.size() < k ? s : m.ground();
        CHECK(Closure(m, s).elements == expect);
      }
    }
  }
  CHECK(Closure(Matroid::Uniform(2, 3), {1}).elements == ElementSet{1});
}

TEST_CASE("corpus matroids satisfy the axioms and submodularity") {
  std::vector<std::string> names;
  std::vector<Matroid> ms = CorpusMatroids(&names);
  REQUIRE(ms.size() == names.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const Matroid& m = ms[i];
    CAPTURE(names[i]);
    VerifyOptions opt;
    opt.sample = m.size() > opt.bound;
    opt.samples = 2000;
    CHECK(VerifyPregeometry(m, opt).passed());
    if (m.size() > 7) continue;
    const uint64_t n = uint64_t{1} << m.size();
    for (uint64_t a = 0; a < n; ++a) {
      for (uint64_t b = 0; b < n; ++b) {
        ElementSet x(a), y(b);
        CHECK(Rank(m, x | y) + Rank(m, x & y) <= Rank(m, x) + Rank(m, y));
      }
    }
  }
}

TEST_CASE("verification reports a broken closure table") {
  // cl{0} = cl{1} = {0,1} but cl{0,1} = {0,1,2}: closing twice changes the
  // result. Points 0 and 1 span each other, so exchange holds at the empty
  // set and idempotence is the first axiom to fail.
  Matroid m = Matroid::ClosureTable(
      3, {{ElementSet{}, ElementSet{}},
          {ElementSet{0}, ElementSet{0, 1}},
          {ElementSet{1}, ElementSet{0, 1}},
          {ElementSet{0, 1}, ElementSet{0, 1, 2}},
          {ElementSet{2}, ElementSet{2}}});
  PregeometryReport r = VerifyPregeometry(m);
  REQUIRE_FALSE(r.passed());
  CHECK(r.violation->kind == AxiomKind::kIdempotent);
  CHECK(VerifyPregeometry(Matroid::Uniform(2, 4)).passed());
}

TEST_CASE("large grounds need sampling") {
  Matroid m = Named("gf3_3");
  CHECK_THROWS_AS(VerifyPregeometry(m), Error);
  try {
    VerifyPregeometry(m);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kGroundTooLarge);
  }
  VerifyOptions opt;
  opt.sample = true;
  opt.samples = 500;
  PregeometryReport r = VerifyPregeometry(m, opt);
  CHECK(r.passed());
  CHECK_FALSE(r.exhaustive);
}

TEST_CASE("circuits match minimal dependent sets") {
  std::vector<std::string> names;
  std::vector<Matroid> ms = CorpusMatroids(&names);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const Matroid& m = ms[i];
    if (m.size() > 9) continue;
    CAPTURE(names[i]);
    std::vector<Circuit> expect;
    for (int k = 1; k <= 4; ++k) {
      for (ElementSet s : SubsetsOfSize(m.ground(), k)) {
        if (IsCircuitByRank(m, s)) expect.push_back(Circuit{s});
      }
    }
    CHECK(Circuits(m, 4) == expect);
  }
  CHECK(Circuits(Named("gf2_3"), 3).size() == 7);
  CHECK(Circuits(Matroid::Uniform(3, 5), 3).empty());
  CHECK(Circuits(Matroid::Uniform(2, 3), 3) ==
        std::vector<Circuit>{Circuit{ElementSet{0, 1, 2}}});
}

TEST_CASE("smallest large circuit") {
  CircuitParam fano = SmallestCircuitParam(Named("gf2_3"));
  CHECK(fano.circuit_size == 3);
  CHECK(fano.n == 2);
  CircuitParam u23 = SmallestCircuitParam(Matroid::Uniform(2, 3));
  CHECK(u23.circuit_size == 3);
  CHECK(SmallestCircuitParam(Matroid::Uniform(3, 5)).circuit_size == 4);
  try {
    SmallestCircuitParam(Matroid::Free(4));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoLargeCircuit);
  }
}

TEST_CASE("carousel examples") {
  Matroid fano = Named("gf2_3");
  std::vector<int> e123 = {0, 1, 3};
  CHECK(CarouselCheck(fano, {}, e123));
  std::vector<int> one = {3};
  CHECK(CarouselCheck(fano, {0}, one));
  std::vector<int> yz = {1, 2};
  CHECK(CarouselCheck(Matroid::Uniform(3, 6), {0}, yz));
  std::vector<int> dependent = {0, 1, 2};
  try {
    CarouselCheck(fano, {}, dependent);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotIndependent);
  }
  std::vector<int> over_abar = {1};
  CHECK_THROWS_AS(CarouselCheck(fano, {0, 2}, over_abar), Error);
}

TEST_CASE("carousel holds on random inputs") {
  std::mt19937_64 rng(7);
  for (const Matroid& m : CorpusMatroids()) {
    for (int i = 0; i < 20; ++i) {
      CarouselInput in = RandomCarouselInput(m, rng);
      CHECK(CarouselCheck(m, in.abar, in.bs));
    }
  }
}

TEST_CASE("factories reject bad input") {
  CHECK_THROWS_AS(Matroid::Uniform(3, 2), Error);
  CHECK_THROWS_AS(Matroid::Uniform(1, 65), Error);
  CHECK_THROWS_AS(Matroid::Linear(4, {{1, 0}}), Error);
  CHECK_THROWS_AS(Matroid::Linear(2, {{1, 0}, {1}}), Error);
  Matroid m = Matroid::Uniform(2, 3);
  try {
    m.CheckSubset({5});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidElement);
  }
  CHECK_THROWS_AS(ElementSet::FromIds(std::vector<int>{64}), Error);
}

TEST_CASE("flats are closed and carry their rank") {
  for (const Matroid& m : CorpusMatroids()) {
    if (m.size() > 12) continue;
    for (const Flat& f : AllFlats(m)) {
      CHECK(m.ClosureOf(f.elements) == f.elements);
      CHECK(f.dim == Rank(m, f.elements));
    }
  }
  CHECK(AllFlats(Named("gf2_3")).size() == 16);
}

}  // namespace
}  // namespace flatgeom
