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

#ifndef FLATGEOM_SPECTRUM_H_
#define FLATGEOM_SPECTRUM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flatgeom {

// A subset of omega + 1: a finite part inside {0, ..., horizon}, a tail
// flag meaning every integer above the horizon, and omega itself.
class SpectrumSet {
 public:
  static constexpr int kDefaultHorizon = 6;

  explicit SpectrumSet(int horizon = kDefaultHorizon);

  // Comma-separated tokens: integers, "k+" for every integer >= k, and
  // "omega" (also "w" or "ω"). Braces and spaces are ignored.
  // Throws Error(kParse) on bad tokens or integers above the horizon.
  static SpectrumSet Parse(std::string_view text,
                           int horizon = kDefaultHorizon);
  // Bit i of `bits` selects i for i < 3; bit 3 selects omega.
  static SpectrumSet FromMask(unsigned bits, int horizon = kDefaultHorizon);

  int horizon() const { return horizon_; }
  bool omega() const { return omega_; }
  bool tail() const { return tail_; }
  bool Contains(int k) const;
  bool HasFinite() const;

  void Add(int k);
  void AddFrom(int k);
  void AddOmega() { omega_ = true; }

  // "{0,1,3+,omega}"-style canonical text.
  std::string ToString() const;

  bool operator==(const SpectrumSet&) const = default;

 private:
  int horizon_;
  uint64_t bits_ = 0;
  bool tail_ = false;
  bool omega_ = false;
};

struct TheoryProfile {
  int n = 2;
  std::optional<int> p;
  std::optional<int> ild;
};

struct RuleViolation {
  std::string rule;
  std::string message;
};

struct ProfileReport {
  std::vector<RuleViolation> violations;

  bool valid() const { return violations.empty(); }
};

// Rule ids: n-at-least-2, p-nonnegative, p-at-most-n-plus-1,
// p-at-least-n-for-n-above-3, p-at-least-3-for-n-3, ild-at-most-n-plus-1.
ProfileReport ValidateProfile(const TheoryProfile& tp);

struct Verdict {
  enum class Kind { kAllowed, kOpenUnknown, kExcluded };

  Kind kind = Kind::kAllowed;
  std::string shape;     // Allowed: "[0,α)", "[0,n]∪{ω}" or "{ω}"
  std::string instance;  // Allowed: e.g. "[0,3)"; OpenUnknown: the set
  std::vector<RuleViolation> rules;  // Excluded: every violated rule
};

const char* VerdictKindName(Verdict::Kind kind);

// Rule ids: initial-segment (n != 2), initial-above-2 (n = 2),
// three-forces-zero-one (n = 2), omega-forces-below.
// Throws Error(kProfileInvalid) if the profile fails validation.
Verdict Classify(const SpectrumSet& s, const TheoryProfile& tp);

struct CaseRow {
  enum class Category { kShapeCovered, kOpen, kExcluded };

  SpectrumSet set;
  Category category = Category::kShapeCovered;
  Verdict verdict;  // what Classify says for the same set
};

const char* CaseCategoryName(CaseRow::Category category);

// The 16 subsets of {0, 1, 2, omega}, sorted by the listed schema instances
// directly rather than by the rule engine, then cross-checked against
// Classify. Requires n = 2 (Error(kProfileInvalid) otherwise); throws
// Error(kInternal) if the two routes disagree.
std::vector<CaseRow> EnumerateCaseAnalysis(const TheoryProfile& tp);

}  // namespace flatgeom

#endif  // FLATGEOM_SPECTRUM_H_
