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

#include <string>

#include "doctest.h"
#include "flatgeom/corpus.h"
#include "flatgeom/error.h"
#include "flatgeom/io.h"

namespace flatgeom {
namespace {

std::string ParseMessage(const std::string& text) {
  try {
    ParseJson(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    return e.what();
  }
  return "";
}

std::string MatroidMessage(const std::string& text) {
  try {
    MatroidFromJson(ParseJson(text));
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

bool SameClosures(const Matroid& a, const Matroid& b) {
  if (a.size() != b.size()) return false;
  if (a.size() > 12) {
    for (int x : a.ground()) {
      for (int y : a.ground()) {
        if (a.ClosureOf({x, y}) != b.ClosureOf({x, y})) return false;
      }
    }
    return true;
  }
  for (uint64_t bits = 0; bits < (uint64_t{1} << a.size()); ++bits) {
    if (a.ClosureOf(ElementSet(bits)) != b.ClosureOf(ElementSet(bits))) {
      return false;
    }
  }
  return true;
}

TEST_CASE("syntax errors carry a position") {
  std::string m = ParseMessage("{\"a\": 1,\n  \"b\": ]\n}");
  CHECK(m.find("line 2") != std::string::npos);
  CHECK(m.find("column 8") != std::string::npos);
  CHECK(ParseMessage("[1, 2").find("line 1") != std::string::npos);
  CHECK(ParseMessage("").find("malformed JSON") != std::string::npos);
  CHECK_THROWS_AS(ReadJsonFile("/nonexistent/file.json"), Error);
}

TEST_CASE("schema errors name the field") {
  CHECK(MatroidMessage("{\"type\":\"uniform\",\"size\":3}").find("rank") !=
        std::string::npos);
  CHECK(MatroidMessage("{\"type\":\"cube\"}").find("cube") != std::string::npos);
  CHECK(MatroidMessage("{\"type\":\"uniform\",\"rank\":\"2\",\"size\":3}")
            .find("rank") != std::string::npos);
  CHECK(MatroidMessage("[]") != "");
  try {
    SetFromJson(ParseJson("[0, 9]"), 4);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidElement);
  }
  CHECK_THROWS_AS(SetFromJson(ParseJson("{}"), 4), Error);
}

TEST_CASE("corpus entries round trip") {
  for (const CorpusEntry& e : Corpus()) {
    CAPTURE(e.name);
    switch (e.kind) {
      case CorpusKind::kMatroid: {
        Matroid m = MatroidFromJson(e.json);
        Json again = MatroidToJson(m);
        CHECK(SameClosures(m, MatroidFromJson(again)));
        CHECK(MatroidToJson(MatroidFromJson(again)) == again);
        break;
      }
      case CorpusKind::kStructure: {
        Json again = StructureToJson(StructureFromJson(e.json));
        CHECK(StructureToJson(StructureFromJson(again)) == again);
        break;
      }
      case CorpusKind::kLambdaScenario: {
        Json again = LambdaScenarioToJson(LambdaScenarioFromJson(e.json));
        CHECK(LambdaScenarioToJson(LambdaScenarioFromJson(again)) == again);
        break;
      }
      case CorpusKind::kGoingDown: {
        Json again = GoingDownScenarioToJson(GoingDownScenarioFromJson(e.json));
        CHECK(GoingDownScenarioToJson(GoingDownScenarioFromJson(again)) ==
              again);
        break;
      }
    }
  }
}

TEST_CASE("reports re-parse to the same text") {
  Matroid fano = MatroidFromJson(CorpusEntryNamed("gf2_3").json);
  const Json docs[] = {
      ToJson(VerifyPregeometry(fano)),
      ToJson(Circuits(fano, 3)),
      ToJson(CheckFlat(fano)),
      ToJson(PpsFindCycle(fano, 8)),
      ToJson(EnumerateCaseAnalysis(TheoryProfile{2, {}, {}})),
      ToJson(ValidateProfile(TheoryProfile{5, 2, {}})),
  };
  for (const Json& j : docs) {
    const std::string text = Dump(j);
    CHECK(Dump(ParseJson(text)) == text);
    CHECK(text.find('\n') == std::string::npos);
  }
}

TEST_CASE("stages default to the first") {
  // Tuples named only in phi appear at stage 1; a tuple revealed twice is
  // rejected.
  Json j = ParseJson(R"({"universe":4,"matroid":{"type":"uniform","rank":2,"size":4},
    "phi":{"arity":3,"tuples":[[0,1,2],[1,2,3]]},"K":2,
    "stages":[{"reveal":[]},{"reveal":[[1,2,3]]}]})");
  LambdaScenario s = LambdaScenarioFromJson(j);
  CHECK(s.structure.stage_count() == 2);
  CHECK(s.structure.reveal_stage() == std::vector<int>{1, 2});
  j["stages"][0]["reveal"] = Json::array({Json::array({1, 2, 3})});
  CHECK_THROWS_AS(LambdaScenarioFromJson(j), Error);
}

}  // namespace
}  // namespace flatgeom
