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

#include "flatgeom/spectrum.h"

#include <algorithm>
#include <bit>
#include <charconv>

#include "flatgeom/error.h"

namespace flatgeom {

SpectrumSet::SpectrumSet(int horizon) : horizon_(horizon) {
  if (horizon < 3 || horizon > 62) {
    throw Error(ErrorCode::kInvalidArgument,
                "spectrum horizon must be in [3, 62]");
  }
}

SpectrumSet SpectrumSet::Parse(std::string_view text, int horizon) {
  SpectrumSet s(horizon);
  std::string cleaned;
  for (char c : text) {
    if (c != ' ' && c != '{' && c != '}') cleaned += c;
  }
  std::size_t start = 0;
  while (start <= cleaned.size() && !cleaned.empty()) {
    std::size_t end = cleaned.find(',', start);
    if (end == std::string::npos) end = cleaned.size();
    const std::string token = cleaned.substr(start, end - start);
    const auto bad = [&](const std::string& why) {
      return Error(ErrorCode::kParse,
                   "token '" + token + "' at offset " + std::to_string(start) +
                       ": " + why);
    };
    if (token == "omega" || token == "w" || token == "\xcf\x89") {
      s.AddOmega();
    } else {
      const bool from = !token.empty() && token.back() == '+';
      const std::string digits = from ? token.substr(0, token.size() - 1) : token;
      int k = 0;
      const auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), k);
      if (digits.empty() || ec != std::errc() ||
          ptr != digits.data() + digits.size() || k < 0) {
        throw bad("expected an index, 'k+' or 'omega'");
      }
      if (k > horizon) throw bad("index above the horizon");
      if (from) {
        s.AddFrom(k);
      } else {
        s.Add(k);
      }
    }
    start = end + 1;
    if (end == cleaned.size()) break;
  }
  return s;
}

SpectrumSet SpectrumSet::FromMask(unsigned bits, int horizon) {
  SpectrumSet s(horizon);
  for (int k = 0; k < 3; ++k) {
    if (bits & (1u << k)) s.Add(k);
  }
  if (bits & 8u) s.AddOmega();
  return s;
}

bool SpectrumSet::Contains(int k) const {
  if (k < 0) return false;
  if (k > horizon_) return tail_;
  return (bits_ >> k) & 1;
}

bool SpectrumSet::HasFinite() const { return bits_ != 0 || tail_; }

void SpectrumSet::Add(int k) {
  if (k < 0 || k > horizon_) {
    throw Error(ErrorCode::kInvalidArgument, "index outside the horizon");
  }
  bits_ |= uint64_t{1} << k;
}

void SpectrumSet::AddFrom(int k) {
  for (int i = std::max(k, 0); i <= horizon_; ++i) Add(i);
  tail_ = true;
}

std::string SpectrumSet::ToString() const {
  std::vector<std::string> parts;
  int run_start = horizon_ + 1;
  if (tail_) {
    while (run_start > 0 && Contains(run_start - 1)) --run_start;
  }
  for (int k = 0; k < run_start && k <= horizon_; ++k) {
    if (Contains(k)) parts.push_back(std::to_string(k));
  }
  if (tail_) parts.push_back(std::to_string(run_start) + "+");
  if (omega_) parts.push_back("omega");
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += parts[i];
  }
  return out + "}";
}

ProfileReport ValidateProfile(const TheoryProfile& tp) {
  ProfileReport report;
  const auto add = [&](const char* rule, std::string message) {
    report.violations.push_back({rule, std::move(message)});
  };
  const std::string n = std::to_string(tp.n);
  if (tp.n < 2) add("n-at-least-2", "n = " + n + " but n must be >= 2");
  if (tp.p) {
    const std::string p = std::to_string(*tp.p);
    if (*tp.p < 0) add("p-nonnegative", "p = " + p + " is negative");
    if (*tp.p > tp.n + 1) {
      add("p-at-most-n-plus-1", "p <= n+1 fails: p = " + p + ", n = " + n);
    }
    if (tp.n > 3 && *tp.p < tp.n) {
      add("p-at-least-n-for-n-above-3",
          "if n > 3 then p >= n fails: p = " + p + ", n = " + n);
    }
    if (tp.n == 3 && *tp.p < 3) {
      add("p-at-least-3-for-n-3", "if n = 3 then p >= 3 fails: p = " + p);
    }
  }
  if (tp.ild && (*tp.ild < 0 || *tp.ild > tp.n + 1)) {
    add("ild-at-most-n-plus-1", "ILD <= n+1 fails: ILD = " +
                                    std::to_string(*tp.ild) + ", n = " + n);
  }
  return report;
}

const char* VerdictKindName(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::kAllowed:
      return "Allowed";
    case Verdict::Kind::kOpenUnknown:
      return "OpenUnknown";
    case Verdict::Kind::kExcluded:
      return "Excluded";
  }
  return "Unknown";
}

namespace {

// Length of the initial segment [0, len) of the finite part; -1 when the
// finite part is all of omega.
int InitialRun(const SpectrumSet& s) {
  int k = 0;
  while (k <= s.horizon() && s.Contains(k)) ++k;
  if (k > s.horizon() && s.tail()) return -1;
  return k;
}

bool FiniteIsInitial(const SpectrumSet& s) {
  const int run = InitialRun(s);
  if (run < 0) return true;
  for (int k = run; k <= s.horizon() + 1; ++k) {
    if (s.Contains(k)) return false;
  }
  return true;
}

// Matches the schemas in the order they are listed.
bool MatchShape(const SpectrumSet& s, Verdict& v) {
  if (!FiniteIsInitial(s)) return false;
  const int run = InitialRun(s);
  if (run < 0) {
    v.shape = "[0,α)";
    v.instance = s.omega() ? "[0,ω]" : "[0,ω)";
    return true;
  }
  if (!s.omega()) {
    v.shape = "[0,α)";
    v.instance = "[0," + std::to_string(run) + ")";
    return true;
  }
  if (run > 0) {
    v.shape = "[0,n]∪{ω}";
    v.instance = "[0," + std::to_string(run - 1) + "]∪{ω}";
    return true;
  }
  v.shape = "{ω}";
  v.instance = "{ω}";
  return true;
}

std::vector<RuleViolation> Violations(const SpectrumSet& s, int n) {
  std::vector<RuleViolation> out;
  const int top = s.horizon() + 1;  // Contains(top) stands for the tail
  if (n != 2) {
    if (!FiniteIsInitial(s)) {
      out.push_back({"initial-segment",
                     "for n != 2 a recursive model of finite dimension k "
                     "makes every smaller dimension recursive, so the finite "
                     "part must be an initial segment"});
    }
  } else {
    bool gap = false;
    for (int k = 3; k <= top && !gap; ++k) {
      if (s.Contains(k) && !s.Contains(k - 1)) gap = true;
    }
    if (gap) {
      out.push_back({"initial-above-2",
                     "for n = 2 the finite part must be downward closed "
                     "among indices >= 2"});
    }
    bool high = false;
    for (int k = 3; k <= top; ++k) high = high || s.Contains(k);
    if (high && !(s.Contains(0) && s.Contains(1))) {
      out.push_back({"three-forces-zero-one",
                     "for n = 2 a recursive model at index >= 3 makes "
                     "indices 0 and 1 recursive"});
    }
  }
  if (s.omega()) {
    int largest = -1;
    for (int k = 1; k <= top; ++k) {
      if (s.Contains(k)) largest = k;
    }
    bool missing = false;
    for (int k = 0; k < largest && !missing; ++k) missing = !s.Contains(k);
    if (missing) {
      out.push_back({"omega-forces-below",
                     "a recursive omega-dimensional model together with a "
                     "recursive model at index m >= 1 makes every index "
                     "below m recursive"});
    }
  }
  return out;
}

}  // namespace

Verdict Classify(const SpectrumSet& s, const TheoryProfile& tp) {
  const ProfileReport profile = ValidateProfile(tp);
  if (!profile.valid()) {
    throw Error(ErrorCode::kProfileInvalid, profile.violations[0].message);
  }
  Verdict v;
  v.rules = Violations(s, tp.n);
  if (!v.rules.empty()) {
    v.kind = Verdict::Kind::kExcluded;
    return v;
  }
  if (MatchShape(s, v)) {
    v.kind = Verdict::Kind::kAllowed;
    return v;
  }
  if (tp.n != 2) {
    throw Error(ErrorCode::kInternal,
                "set passes every rule but matches no schema");
  }
  v.kind = Verdict::Kind::kOpenUnknown;
  v.instance = s.ToString();
  return v;
}

const char* CaseCategoryName(CaseRow::Category category) {
  switch (category) {
    case CaseRow::Category::kShapeCovered:
      return "shape-covered";
    case CaseRow::Category::kOpen:
      return "open";
    case CaseRow::Category::kExcluded:
      return "excluded";
  }
  return "unknown";
}

std::vector<CaseRow> EnumerateCaseAnalysis(const TheoryProfile& tp) {
  if (tp.n != 2) {
    throw Error(ErrorCode::kProfileInvalid, "case analysis requires n = 2");
  }
  const ProfileReport profile = ValidateProfile(tp);
  if (!profile.valid()) {
    throw Error(ErrorCode::kProfileInvalid, profile.violations[0].message);
  }
  // Masks over {0, 1, 2, omega}; bit 3 is omega.
  std::vector<unsigned> covered;
  for (unsigned alpha = 0; alpha <= 3; ++alpha) covered.push_back((1u << alpha) - 1);
  for (unsigned top = 0; top <= 2; ++top) covered.push_back(((2u << top) - 1) | 8u);
  covered.push_back(8u);

  std::vector<unsigned> masks(16);
  for (unsigned i = 0; i < 16; ++i) masks[i] = i;
  std::sort(masks.begin(), masks.end(), [](unsigned l, unsigned r) {
    if (std::popcount(l) != std::popcount(r)) {
      return std::popcount(l) < std::popcount(r);
    }
    // Lexicographic on increasing members: the lowest differing bit decides.
    const unsigned diff = l ^ r;
    return (l & (diff & -diff)) != 0;
  });

  std::vector<CaseRow> rows;
  for (unsigned mask : masks) {
    CaseRow row{SpectrumSet::FromMask(mask), CaseRow::Category::kOpen, {}};
    const bool omega = mask & 8u;
    bool excluded = false;
    for (unsigned m = 1; m <= 2 && omega; ++m) {
      const unsigned below = (1u << m) - 1;
      if ((mask & (1u << m)) && (mask & below) != below) excluded = true;
    }
    if (std::find(covered.begin(), covered.end(), mask) != covered.end()) {
      row.category = CaseRow::Category::kShapeCovered;
    } else if (excluded) {
      row.category = CaseRow::Category::kExcluded;
    }
    row.verdict = Classify(row.set, tp);
    const Verdict::Kind expected =
        row.category == CaseRow::Category::kShapeCovered ? Verdict::Kind::kAllowed
        : row.category == CaseRow::Category::kOpen      ? Verdict::Kind::kOpenUnknown
                                                          : Verdict::Kind::kExcluded;
    if (row.verdict.kind != expected) {
      throw Error(ErrorCode::kInternal,
                  "case analysis and rule engine disagree on " +
                      row.set.ToString());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace flatgeom
