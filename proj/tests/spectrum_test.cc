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
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "flatgeom/error.h"
#include "flatgeom/spectrum.h"

namespace flatgeom {
namespace {

std::vector<std::string> RuleIds(const ProfileReport& r) {
  std::vector<std::string> out;
  for (const RuleViolation& v : r.violations) out.push_back(v.rule);
  return out;
}

bool Has(const std::vector<std::string>& ids, const std::string& id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

TheoryProfile N(int n) { return TheoryProfile{n, {}, {}}; }

TEST_CASE("set text") {
  SpectrumSet s = SpectrumSet::Parse("{0, 1, 3+, omega}");
  CHECK(s.Contains(0));
  CHECK(s.Contains(1));
  CHECK_FALSE(s.Contains(2));
  CHECK(s.Contains(3));
  CHECK(s.Contains(100));
  CHECK(s.omega());
  CHECK(s.ToString() == "{0,1,3+,omega}");
  CHECK(SpectrumSet::Parse("0,1,w") == SpectrumSet::Parse("{1,0,ω}"));
  CHECK(SpectrumSet::Parse("").ToString() == "{}");
  CHECK(SpectrumSet::Parse(SpectrumSet::Parse("2,5,6").ToString()) ==
        SpectrumSet::Parse("2,5,6"));
  CHECK(SpectrumSet::FromMask(0b1011) == SpectrumSet::Parse("0,1,omega"));
  CHECK(SpectrumSet::FromMask(0b0100) == SpectrumSet::Parse("2"));
  for (const char* bad : {"x", "7", "-1", "1,,2", "3++"}) {
    CAPTURE(bad);
    try {
      SpectrumSet::Parse(bad);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParse);
    }
  }
}

TEST_CASE("profile rules") {
  ProfileReport five_two = ValidateProfile({5, 2, {}});
  CHECK_FALSE(five_two.valid());
  CHECK(Has(RuleIds(five_two), "p-at-least-n-for-n-above-3"));
  ProfileReport four_six = ValidateProfile({4, 6, {}});
  CHECK_FALSE(four_six.valid());
  CHECK(Has(RuleIds(four_six), "p-at-most-n-plus-1"));
  CHECK(ValidateProfile({3, 3, {}}).valid());
  CHECK(ValidateProfile({3, 4, {}}).valid());
  CHECK(ValidateProfile({2, 0, {}}).valid());
  CHECK(Has(RuleIds(ValidateProfile({3, 2, {}})), "p-at-least-3-for-n-3"));
  CHECK(Has(RuleIds(ValidateProfile({1, {}, {}})), "n-at-least-2"));
  CHECK(Has(RuleIds(ValidateProfile({2, -1, {}})), "p-nonnegative"));
  CHECK(Has(RuleIds(ValidateProfile({2, {}, 4})), "ild-at-most-n-plus-1"));
  CHECK(ValidateProfile({2, {}, 3}).valid());
  // Every violated rule is reported.
  CHECK(ValidateProfile({5, 2, 9}).violations.size() == 2);
}

TEST_CASE("classification examples") {
  Verdict v = Classify(SpectrumSet::Parse("0,1,2"), N(2));
  CHECK(v.kind == Verdict::Kind::kAllowed);
  CHECK(v.instance == "[0,3)");
  CHECK(Classify(SpectrumSet::Parse("0,1,2"), N(5)).instance == "[0,3)");

  Verdict one_omega = Classify(SpectrumSet::Parse("1,omega"), N(2));
  CHECK(one_omega.kind == Verdict::Kind::kExcluded);
  REQUIRE_FALSE(one_omega.rules.empty());
  CHECK(one_omega.rules[0].rule == "omega-forces-below");

  Verdict gap = Classify(SpectrumSet::Parse("0,2"), N(5));
  CHECK(gap.kind == Verdict::Kind::kExcluded);
  CHECK(gap.rules[0].rule == "initial-segment");

  CHECK(Classify(SpectrumSet::Parse("2"), N(2)).kind ==
        Verdict::Kind::kOpenUnknown);
  Verdict lower = Classify(SpectrumSet::Parse("0,1,omega"), N(2));
  CHECK(lower.kind == Verdict::Kind::kAllowed);
  CHECK(lower.shape == "[0,n]∪{ω}");
  CHECK(Classify(SpectrumSet::Parse("omega"), N(2)).shape == "{ω}");
  // Something at 3 or above forces 0 and 1 when n = 2.
  Verdict high = Classify(SpectrumSet::Parse("3"), N(2));
  CHECK(high.kind == Verdict::Kind::kExcluded);

  try {
    Classify(SpectrumSet::Parse("0"), {5, 2, {}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kProfileInvalid);
  }
}

TEST_CASE("the sixteen subsets for n = 2") {
  const std::set<std::string> covered = {
      "{}", "{0}", "{0,1}", "{0,omega}", "{0,1,2}", "{0,1,omega}",
      "{0,1,2,omega}", "{omega}"};
  const std::set<std::string> open = {"{1}", "{2}", "{0,2}", "{1,2}"};
  const std::set<std::string> excluded = {"{1,omega}", "{2,omega}",
                                          "{0,2,omega}", "{1,2,omega}"};
  std::vector<CaseRow> rows = EnumerateCaseAnalysis(N(2));
  REQUIRE(rows.size() == 16);
  std::set<std::string> got[3];
  for (const CaseRow& row : rows) {
    got[static_cast<int>(row.category)].insert(row.set.ToString());
    Verdict v = Classify(row.set, N(2));
    CHECK(v.kind == row.verdict.kind);
    switch (row.category) {
      case CaseRow::Category::kShapeCovered:
        CHECK(v.kind == Verdict::Kind::kAllowed);
        break;
      case CaseRow::Category::kOpen:
        CHECK(v.kind == Verdict::Kind::kOpenUnknown);
        break;
      case CaseRow::Category::kExcluded:
        CHECK(v.kind == Verdict::Kind::kExcluded);
        break;
    }
  }
  CHECK(got[0] == covered);
  CHECK(got[1] == open);
  CHECK(got[2] == excluded);
  CHECK_THROWS_AS(EnumerateCaseAnalysis(N(3)), Error);
}

TEST_CASE("for n other than 2 exactly initial segments are allowed") {
  const int h = SpectrumSet::kDefaultHorizon;
  for (int n : {3, 4, 5, 7}) {
    for (unsigned bits = 0; bits < (1u << (h + 1)); ++bits) {
      for (int tail = 0; tail < 2; ++tail) {
        for (int omega = 0; omega < 2; ++omega) {
          SpectrumSet s(h);
          for (int k = 0; k <= h; ++k) {
            if ((bits >> k) & 1) s.Add(k);
          }
          if (tail) s.AddFrom(h);
          if (omega) s.AddOmega();
          // Initial: no member above a non-member.
          bool initial = true, gap = false;
          for (int k = 0; k <= h + 1; ++k) {
            if (!s.Contains(k)) gap = true;
            else if (gap) initial = false;
          }
          CAPTURE(s.ToString());
          Verdict v = Classify(s, N(n));
          CHECK(v.kind != Verdict::Kind::kOpenUnknown);
          CHECK((v.kind == Verdict::Kind::kAllowed) == initial);
          if (v.kind == Verdict::Kind::kExcluded) CHECK_FALSE(v.rules.empty());
        }
      }
    }
  }
}

}  // namespace
}  // namespace flatgeom
