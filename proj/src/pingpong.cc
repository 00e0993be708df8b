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

#include "flatgeom/pingpong.h"

#include <algorithm>
#include <string>

#include "flatgeom/error.h"

namespace flatgeom {

int PaddleFor(const PpsConfig& config, std::size_t index) {
  return index % 2 == 0 ? config.a1 : config.a2;
}

namespace {

bool InGround(const Matroid& m, int id) { return id >= 0 && id < m.size(); }

std::string ConfigProblem(const Matroid& m, const PpsConfig& c) {
  if (!InGround(m, c.a1) || !InGround(m, c.a2) || !InGround(m, c.t1)) {
    return "paddles and t1 must be ground elements";
  }
  if (!c.net.IsSubsetOf(m.ground())) return "net is not a ground subset";
  if (c.a1 == c.a2) return "paddles must be distinct";
  const ElementSet paddles{c.a1, c.a2};
  if (!(paddles & c.net).empty() || !IsIndependentOver(m, paddles, c.net)) {
    return "paddles are not independent over the net";
  }
  if (m.ClosureOf(c.net | paddles).contains(c.t1)) {
    return "t1 lies in cl_X(a1, a2)";
  }
  return {};
}

// Legal successors of ts.back(), without validating the prefix.
std::vector<int> Successors(const Matroid& m, const PpsConfig& c,
                            const std::vector<int>& ts) {
  const int t = ts.back();
  const int paddle = PaddleFor(c, ts.size() - 1);
  const ElementSet with_paddle = c.net.With(paddle);
  const ElementSet options = m.ClosureOf(with_paddle.With(t)) -
                             m.ClosureOf(with_paddle) - ElementSet::Single(t);
  return options.ToVector();
}

// Index of the first step i with an illegal ts[i+1], or -1.
int FirstBadStep(const Matroid& m, const PpsSequence& seq) {
  for (std::size_t i = 0; i + 1 < seq.ts.size(); ++i) {
    const int paddle = PaddleFor(seq.config, i);
    const ElementSet with_paddle = seq.config.net.With(paddle);
    const int next = seq.ts[i + 1];
    if (next == seq.ts[i] ||
        !m.ClosureOf(with_paddle.With(seq.ts[i])).contains(next) ||
        m.ClosureOf(with_paddle).contains(next)) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

}  // namespace

void ValidateConfig(const Matroid& m, const PpsConfig& config) {
  const std::string problem = ConfigProblem(m, config);
  if (!problem.empty()) throw Error(ErrorCode::kInvalidConfig, problem);
}

std::vector<int> PpsCandidates(const Matroid& m, const PpsSequence& seq) {
  if (seq.ts.empty() || seq.ts.front() != seq.config.t1) {
    throw Error(ErrorCode::kInvalidSequence,
                "sequence must start with the configured t1");
  }
  for (int t : seq.ts) {
    if (!InGround(m, t)) {
      throw Error(ErrorCode::kInvalidElement,
                  "sequence element " + std::to_string(t) +
                      " is not in the ground set");
    }
  }
  const std::string problem = ConfigProblem(m, seq.config);
  if (!problem.empty()) throw Error(ErrorCode::kInvalidSequence, problem);
  const int bad = FirstBadStep(m, seq);
  if (bad >= 0) {
    throw Error(ErrorCode::kInvalidSequence,
                "illegal step after index " + std::to_string(bad));
  }
  return Successors(m, seq.config, seq.ts);
}

const char* PpsStatusName(PpsStatus status) {
  switch (status) {
    case PpsStatus::kTerminated:
      return "Terminated";
    case PpsStatus::kCycle:
      return "Cycle";
    case PpsStatus::kBudgetExceeded:
      return "BudgetExceeded";
  }
  return "Unknown";
}

namespace {

class BranchWalker {
 public:
  BranchWalker(const Matroid& m, const PpsConfig& config, int budget,
               bool least_only, int64_t max_runs)
      : m_(m),
        config_(config),
        budget_(budget),
        least_only_(least_only),
        max_runs_(max_runs) {}

  // Visits every maximal sequence; `emit` returns false to stop the walk.
  template <typename Emit>
  bool Walk(std::vector<int>& ts, Emit&& emit) {
    const int last = ts.back();
    const auto earlier = std::find(ts.begin(), ts.end() - 1, last);
    if (earlier != ts.end() - 1) {
      return Leaf(ts, PpsStatus::kCycle,
                  static_cast<int>(earlier - ts.begin()), emit);
    }
    const std::vector<int> next = Successors(m_, config_, ts);
    if (next.empty()) return Leaf(ts, PpsStatus::kTerminated, -1, emit);
    if (static_cast<int>(ts.size()) >= budget_) {
      return Leaf(ts, PpsStatus::kBudgetExceeded, -1, emit);
    }
    for (int t : next) {
      ts.push_back(t);
      const bool go_on = Walk(ts, emit);
      ts.pop_back();
      if (!go_on) return false;
      if (least_only_) break;
    }
    return true;
  }

  bool truncated() const { return truncated_; }
  int64_t leaves() const { return leaves_; }

 private:
  template <typename Emit>
  bool Leaf(const std::vector<int>& ts, PpsStatus status, int repeat_of,
            Emit&& emit) {
    if (leaves_ >= max_runs_) {
      truncated_ = true;
      return false;
    }
    ++leaves_;
    return emit(PpsRun{PpsSequence{config_, ts}, status, repeat_of});
  }

  const Matroid& m_;
  PpsConfig config_;
  int budget_;
  bool least_only_;
  int64_t max_runs_;
  int64_t leaves_ = 0;
  bool truncated_ = false;
};

}  // namespace

PpsRunResult PpsRunSearch(const Matroid& m, const PpsConfig& config,
                          PpsStrategy strategy, int budget, int64_t max_runs) {
  if (budget < 1) throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
  ValidateConfig(m, config);
  PpsRunResult result;
  BranchWalker walker(m, config, budget, strategy == PpsStrategy::kLeast,
                      max_runs);
  std::vector<int> ts{config.t1};
  walker.Walk(ts, [&](PpsRun run) {
    result.runs.push_back(std::move(run));
    return true;
  });
  result.truncated = walker.truncated();
  return result;
}

PpsReport PpsVerify(const Matroid& m, const PpsSequence& seq) {
  PpsReport report;
  for (int t : seq.ts) {
    if (!InGround(m, t)) {
      throw Error(ErrorCode::kInvalidElement,
                  "sequence element " + std::to_string(t) +
                      " is not in the ground set");
    }
  }
  report.config_valid = ConfigProblem(m, seq.config).empty() &&
                        !seq.ts.empty() && seq.ts.front() == seq.config.t1;
  if (!InGround(m, seq.config.a1) || !InGround(m, seq.config.a2) ||
      !seq.config.net.IsSubsetOf(m.ground())) {
    report.step_valid = false;
    report.outside_closure = false;
    return report;
  }
  report.first_bad_step = FirstBadStep(m, seq);
  report.step_valid = report.first_bad_step < 0;
  const ElementSet span =
      m.ClosureOf(seq.config.net | ElementSet{seq.config.a1, seq.config.a2});
  for (std::size_t i = 0; i < seq.ts.size(); ++i) {
    if (span.contains(seq.ts[i])) {
      report.outside_closure = false;
      report.first_inside = static_cast<int>(i);
      break;
    }
  }
  for (std::size_t j = 1; j < seq.ts.size() && report.injective; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (seq.ts[i] == seq.ts[j]) {
        report.injective = false;
        report.repeat_first = static_cast<int>(i);
        report.repeat_second = static_cast<int>(j);
        break;
      }
    }
  }
  return report;
}

const char* CycleSearchStatusName(CycleSearchResult::Status status) {
  switch (status) {
    case CycleSearchResult::Status::kFound:
      return "Found";
    case CycleSearchResult::Status::kNone:
      return "None";
    case CycleSearchResult::Status::kBudgetExceeded:
      return "BudgetExceeded";
  }
  return "Unknown";
}

CycleSearchResult PpsFindCycle(const Matroid& m, int budget) {
  if (budget < 1) throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
  CycleSearchResult result;
  bool cut_off = false;
  const int full_rank = m.RankOf(m.ground());
  for (const Flat& net : AllFlats(m)) {
    if (net.dim + 3 > full_rank) continue;
    for (int a1 : m.ground() - net.elements) {
      for (int a2 : m.ground() - net.elements) {
        const PpsConfig probe{net.elements, a1, a2, a1};
        if (a1 == a2 ||
            !IsIndependentOver(m, ElementSet{a1, a2}, net.elements)) {
          continue;
        }
        const ElementSet span = m.ClosureOf(net.elements | ElementSet{a1, a2});
        for (int t1 : m.ground() - span) {
          PpsConfig config = probe;
          config.t1 = t1;
          ++result.configs;
          BranchWalker walker(m, config, budget, false, int64_t{1} << 40);
          std::vector<int> ts{t1};
          walker.Walk(ts, [&](PpsRun run) {
            ++result.sequences;
            if (run.status == PpsStatus::kBudgetExceeded) cut_off = true;
            if (run.status != PpsStatus::kCycle) return true;
            result.witness = std::move(run);
            return false;
          });
          if (result.witness) {
            result.status = CycleSearchResult::Status::kFound;
            return result;
          }
        }
      }
    }
  }
  result.status = cut_off ? CycleSearchResult::Status::kBudgetExceeded
                          : CycleSearchResult::Status::kNone;
  return result;
}

}  // namespace flatgeom
