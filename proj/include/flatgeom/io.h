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

#ifndef FLATGEOM_IO_H_
#define FLATGEOM_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "flatgeom/effective.h"
#include "flatgeom/flatness.h"
#include "flatgeom/lambda.h"
#include "flatgeom/matroid.h"
#include "flatgeom/pingpong.h"
#include "flatgeom/spectrum.h"

namespace flatgeom {

// Object keys are kept sorted, so dumps are canonical.
using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Throws Error(kParse) with the line and column of a syntax error.
Json ParseJson(std::string_view text);
// Reads a whole file and parses it; Error(kParse) if unreadable.
Json ReadJsonFile(const std::string& path);
// Canonical single-line text.
std::string Dump(const Json& j);

Json SetToJson(ElementSet set);
// Throws Error(kParse) on a non-array and Error(kInvalidElement) on ids
// outside [0, size).
ElementSet SetFromJson(const Json& j, int size);

// {"type":"linear","field":q,"columns":[[...],...],"labels":[...]}
// {"type":"uniform","rank":k,"size":n}
// {"type":"closure-table","ground":n,"closure":[{"set":[...],"cl":[...]}]}
Matroid MatroidFromJson(const Json& j);
Json MatroidToJson(const Matroid& m);

// {"universe":n,"matroid":{...},"phi":{"arity":m,"tuples":[...]},"K":k}
GeometricStructure StructureFromJson(const Json& j);
Json StructureToJson(const GeometricStructure& g);

// A structure plus "stages":[{"reveal":[tuple,...]},...] and
// "counts":{"pos:k1,k2,...":count}. Tuples named only in phi are revealed
// at stage 1, tuples named only in stages join phi. Optional ground truth:
// "core", "bbar", "expected_acl", "expected_ild" (null for infinite).
struct LambdaScenario {
  EnumeratedStructure structure;
  std::optional<ElementSet> bbar;
  std::optional<ElementSet> expected_acl;
  std::optional<std::optional<int>> expected_ild;
};
LambdaScenario LambdaScenarioFromJson(const Json& j);
Json LambdaScenarioToJson(const LambdaScenario& s);

// {"structure":{"universe":n,"relations":[{"name","arity","tuples"}],
//   "matroid":{...}}, "signature_order":[...], "M":[...],
//  "flips":[{"elem","stage","in"}], "flip_budget":k, "A":[...],
//  "A_stages":{"x":s}, "horizon":h}
struct GoingDownScenario {
  StagewisePresentation presentation;
  Delta2Schedule schedule;
  Sigma1Schedule enumeration;
  int horizon = 0;
};
GoingDownScenario GoingDownScenarioFromJson(const Json& j);
Json GoingDownScenarioToJson(const GoingDownScenario& s);
StagewisePresentation PresentationFromJson(const Json& j);

Json ToJson(const PregeometryReport& r);
Json ToJson(const std::vector<Circuit>& circuits);
Json ToJson(const FlatnessVerdict& v);
Json ToJson(const PpsConfig& c);
Json ToJson(const PpsRun& run);
Json ToJson(const PpsRunResult& r);
Json ToJson(const PpsReport& r);
Json ToJson(const CycleSearchResult& r);
Json ToJson(const LambdaResult& r);
Json ToJson(const StagedLambda& r);
Json ToJson(const AclEnumeration& r);
Json ToJson(const IldEstimate& r);
Json ToJson(const PsiReport& r);
Json ToJson(const ConstructionTrace& t, const StagewisePresentation& p);
Json ToJson(const TraceReport& r);
Json ToJson(const Delta2Schedule& m);
Json ToJson(const ProfileReport& r);
Json ToJson(const Verdict& v);
Json ToJson(const std::vector<CaseRow>& rows);

}  // namespace flatgeom

#endif  // FLATGEOM_IO_H_
