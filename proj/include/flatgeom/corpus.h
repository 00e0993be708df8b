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

#ifndef FLATGEOM_CORPUS_H_
#define FLATGEOM_CORPUS_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "flatgeom/io.h"

namespace flatgeom {

// Rank-`rank` paving matroid: every set of fewer than rank-1 elements is
// closed, and the given hyperplanes (at least rank-1 elements each, any two
// meeting in fewer than rank-1) close their (rank-1)-subsets.
Matroid PavingMatroid(int size, int rank, const std::vector<ElementSet>& hyperplanes,
                      std::vector<std::string> labels = {});

enum class CorpusKind { kMatroid, kStructure, kLambdaScenario, kGoingDown };
const char* CorpusKindName(CorpusKind kind);

struct CorpusEntry {
  std::string name;
  CorpusKind kind;
  std::string description;
  Json json;
};

// Built once, in a fixed order.
const std::vector<CorpusEntry>& Corpus();
// Throws Error(kInvalidArgument) for an unknown name.
const CorpusEntry& CorpusEntryNamed(const std::string& name);

std::vector<Matroid> CorpusMatroids(std::vector<std::string>* names = nullptr);

struct CorpusCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};

// Loads every entry through its parser and runs the module validation that
// applies (pregeometry axioms, structure invariants, scenario coherence).
std::vector<CorpusCheck> CheckCorpus();

// Generators used by the property suites. All are deterministic given rng.

// A structure with arity-3 phi over a random matroid on 3..max_universe
// elements that has at least one 3-element circuit.
GeometricStructure RandomStructure(std::mt19937_64& rng, int max_universe = 10);

// An ordered tuple of distinct elements independent over a random abar.
struct CarouselInput {
  ElementSet abar;
  std::vector<int> bs;
};
CarouselInput RandomCarouselInput(const Matroid& m, std::mt19937_64& rng);

// A coherent scenario whose relations only depend on a hidden class of each
// element, A never flips, and each class holding a flipping element has
// more A elements than the last flip stage.
GoingDownScenario RandomGoingDownScenario(std::mt19937_64& rng,
                                          int max_universe = 16,
                                          int max_flips = 3);

}  // namespace flatgeom

#endif  // FLATGEOM_CORPUS_H_
