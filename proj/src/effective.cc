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

#include "flatgeom/effective.h"

#include <algorithm>
#include <functional>

#include "flatgeom/error.h"

namespace flatgeom {

namespace {

[[noreturn]] void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

// Calls visit(tuple) for every tuple of `arity` entries from `pool`.
void ForEachTuple(const std::vector<int>& pool, int arity,
                  const std::function<void(const std::vector<int>&)>& visit) {
  if (pool.empty()) return;
  std::vector<int> pos(arity, 0);
  std::vector<int> tuple(arity, pool[0]);
  while (true) {
    visit(tuple);
    int i = arity - 1;
    while (i >= 0 && pos[i] + 1 == static_cast<int>(pool.size())) {
      pos[i] = 0;
      tuple[i] = pool[0];
      --i;
    }
    if (i < 0) return;
    tuple[i] = pool[++pos[i]];
  }
}

}  // namespace

StagewisePresentation StagewisePresentation::Create(
    RelationalStructure structure, std::vector<std::string> signature_order,
    std::optional<Matroid> matroid) {
  if (structure.size < 0 || structure.size > 64) {
    Fail(ErrorCode::kInvalidStructure, "universe size must be in [0, 64]");
  }
  if (matroid && matroid->size() != structure.size) {
    Fail(ErrorCode::kInvalidStructure,
         "matroid and structure have different universes");
  }
  std::map<std::string, int> by_name;
  for (int i = 0; i < static_cast<int>(structure.relations.size()); ++i) {
    const Relation& r = structure.relations[i];
    if (r.arity < 1 || r.arity > 4) {
      Fail(ErrorCode::kInvalidStructure,
           "relation " + r.name + " must have arity 1 to 4");
    }
    if (!by_name.emplace(r.name, i).second) {
      Fail(ErrorCode::kInvalidStructure, "duplicate relation " + r.name);
    }
    for (const auto& t : r.tuples) {
      if (static_cast<int>(t.size()) != r.arity) {
        Fail(ErrorCode::kInvalidStructure,
             "relation " + r.name + " has a tuple of the wrong arity");
      }
      for (int id : t) {
        if (id < 0 || id >= structure.size) {
          Fail(ErrorCode::kInvalidElement,
               "relation " + r.name + " mentions element " +
                   std::to_string(id));
        }
      }
    }
  }
  StagewisePresentation p;
  std::set<int> seen;
  for (const std::string& name : signature_order) {
    const auto it = by_name.find(name);
    if (it == by_name.end()) {
      Fail(ErrorCode::kInvalidStructure, "unknown symbol " + name);
    }
    if (!seen.insert(it->second).second) {
      Fail(ErrorCode::kInvalidStructure, "symbol " + name + " listed twice");
    }
    p.order_.push_back(it->second);
  }
  if (p.order_.size() != structure.relations.size()) {
    Fail(ErrorCode::kInvalidStructure,
         "signature order must list every relation once");
  }
  p.structure_ = std::move(structure);
  p.matroid_ = std::move(matroid);
  return p;
}

Sigma1Schedule Sigma1Schedule::Create(int universe, std::vector<int> order,
                                      std::map<int, int> stage_of) {
  Sigma1Schedule a;
  std::set<int> seen;
  for (int x : order) {
    if (x < 0 || x >= universe) {
      Fail(ErrorCode::kInvalidElement,
           "A mentions element " + std::to_string(x));
    }
    if (!seen.insert(x).second) {
      Fail(ErrorCode::kInvalidArgument,
           "A lists element " + std::to_string(x) + " twice");
    }
  }
  for (const auto& [x, stage] : stage_of) {
    if (!seen.contains(x)) {
      Fail(ErrorCode::kInvalidArgument,
           "A_stages mentions " + std::to_string(x) + " outside A");
    }
    if (stage < 0) Fail(ErrorCode::kInvalidArgument, "A stages must be >= 0");
  }
  for (int x : order) a.stage_of_[x] = stage_of.contains(x) ? stage_of[x] : 1;
  a.order_ = std::move(order);
  return a;
}

int Sigma1Schedule::StageOf(int x) const {
  const auto it = stage_of_.find(x);
  return it == stage_of_.end() ? -1 : it->second;
}

bool Sigma1Schedule::InAt(int x, int stage) const {
  const int s = StageOf(x);
  return s >= 0 && s <= stage;
}

ElementSet Sigma1Schedule::At(int stage) const {
  ElementSet out;
  for (int x : order_) {
    if (InAt(x, stage)) out = out.With(x);
  }
  return out;
}

ElementSet Sigma1Schedule::Limit() const {
  ElementSet out;
  for (int x : order_) out = out.With(x);
  return out;
}

Delta2Schedule Delta2Schedule::Create(int universe, ElementSet target,
                                      std::vector<Flip> flips,
                                      int flip_budget) {
  if (universe < 0 || universe > 64) {
    Fail(ErrorCode::kInvalidArgument, "universe size must be in [0, 64]");
  }
  if (!target.IsSubsetOf(ElementSet::Range(universe))) {
    Fail(ErrorCode::kInvalidElement, "target leaves the universe");
  }
  if (flip_budget < 0) Fail(ErrorCode::kInvalidArgument, "negative budget");
  Delta2Schedule m;
  m.universe_ = universe;
  m.target_ = target;
  m.flip_budget_ = flip_budget;
  std::sort(flips.begin(), flips.end(), [](const Flip& l, const Flip& r) {
    return std::pair(l.stage, l.element) < std::pair(r.stage, r.element);
  });
  m.flips_ = std::move(flips);
  for (const Flip& f : m.flips_) {
    if (f.element < 0 || f.element >= universe) {
      Fail(ErrorCode::kInvalidElement,
           "flip mentions element " + std::to_string(f.element));
    }
    if (f.stage < 1) Fail(ErrorCode::kInvalidArgument, "flip stages start at 1");
  }
  m.Index();
  for (int x = 0; x < universe; ++x) {
    std::vector<bool> values;
    for (const Flip& f : m.flips_) {
      if (f.element == x) values.push_back(f.in);
    }
    const std::string who = "element " + std::to_string(x);
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] == values[i - 1]) {
        Fail(ErrorCode::kInvalidArgument, who + " flips do not alternate");
      }
    }
    for (std::size_t i = 1; i < m.stages_[x].size(); ++i) {
      if (m.stages_[x][i] == m.stages_[x][i - 1]) {
        Fail(ErrorCode::kInvalidArgument, who + " flips twice in one stage");
      }
    }
    if (static_cast<int>(values.size()) > flip_budget) {
      Fail(ErrorCode::kInvalidArgument,
           who + " exceeds the flip budget of " + std::to_string(flip_budget));
    }
    if (!values.empty() && values.back() != target.contains(x)) {
      Fail(ErrorCode::kInvalidArgument, who + " does not settle on its target");
    }
  }
  return m;
}

void Delta2Schedule::Index() {
  stages_.assign(universe_, {});
  initial_.assign(universe_, false);
  for (int x = 0; x < universe_; ++x) initial_[x] = target_.contains(x);
  std::vector<bool> first(universe_, true);
  for (const Flip& f : flips_) {
    if (first[f.element]) initial_[f.element] = !f.in;
    first[f.element] = false;
    stages_[f.element].push_back(f.stage);
  }
}

int Delta2Schedule::FlipCount(int x) const {
  return static_cast<int>(stages_[x].size());
}

int Delta2Schedule::LastFlipStage() const {
  return flips_.empty() ? 0 : flips_.back().stage;
}

bool Delta2Schedule::InAt(int x, int stage) const {
  bool v = initial_[x];
  for (int s : stages_[x]) {
    if (s > stage) break;
    v = !v;
  }
  return v;
}

ElementSet Delta2Schedule::At(int stage) const {
  ElementSet out;
  for (int x = 0; x < universe_; ++x) {
    if (InAt(x, stage)) out = out.With(x);
  }
  return out;
}

Delta2Schedule Delta2Schedule::CorrectedFor(const Sigma1Schedule& a,
                                            int* corrections) const {
  int changed = 0;
  std::vector<Flip> flips;
  std::set<int> in_a;
  for (int x : a.order()) {
    if (x >= universe_ || !target_.contains(x)) {
      Fail(ErrorCode::kIncoherentSchedule,
           "A contains " + std::to_string(x) + ", which is not in M");
    }
    in_a.insert(x);
  }
  for (int x = 0; x < universe_; ++x) {
    std::vector<Flip> own;
    for (const Flip& f : flips_) {
      if (f.element == x) own.push_back(f);
    }
    if (in_a.contains(x)) {
      const int enters = a.StageOf(x);
      std::vector<Flip> kept;
      bool v = initial_[x];
      for (const Flip& f : own) {
        if (f.stage >= enters) break;
        kept.push_back(f);
        v = f.in;
      }
      if (!v && enters >= 1) kept.push_back(Flip{x, enters, true});
      if (kept != own) ++changed;
      own = std::move(kept);
    }
    flips.insert(flips.end(), own.begin(), own.end());
  }
  if (corrections != nullptr) *corrections = changed;
  return Create(universe_, target_, std::move(flips), flip_budget_);
}

const char* EventKindName(EventKind kind) {
  switch (kind) {
    case EventKind::kExtend:
      return "Extend";
    case EventKind::kWait:
      return "Wait";
    case EventKind::kOutcome1:
      return "Outcome1";
    case EventKind::kOutcome2:
      return "Outcome2";
    case EventKind::kIdle:
      return "Idle";
  }
  return "Unknown";
}

const char* TraceStatusName(ConstructionTrace::Status status) {
  return status == ConstructionTrace::Status::kComplete ? "Complete" : "Stuck";
}

namespace {

class Construction {
 public:
  Construction(const StagewisePresentation& p, const Delta2Schedule& m,
               const Sigma1Schedule& a, ConstructionTrace& trace)
      : p_(p), m_(m), a_(a), trace_(trace) {}

  void Run(int horizon) {
    for (int t = 1; t <= horizon; ++t) {
      StageRecord rec;
      rec.stage = t;
      Step(t, rec);
      rec.map = f_;
      trace_.stages.push_back(std::move(rec));
    }
    if (waiting_) {
      trace_.status = ConstructionTrace::Status::kStuck;
      trace_.stuck_since = detected_;
      trace_.longest_wait = std::max(trace_.longest_wait, horizon - detected_);
    }
    trace_.limit_map = f_;
  }

 private:
  ElementSet Range() const {
    ElementSet out;
    for (int y : f_) out = out.With(y);
    return out;
  }

  void Step(int t, StageRecord& rec) {
    if (!waiting_) {
      const ElementSet range = Range();
      const ElementSet mt = m_.At(t);
      if (range.IsSubsetOf(mt)) {
        const ElementSet fresh = mt - range;
        if (fresh.empty()) {
          rec.event = EventKind::kIdle;
        } else {
          rec.event = EventKind::kExtend;
          rec.element = static_cast<int>(f_.size());
          rec.image = fresh.Min();
          f_.push_back(rec.image);
          trace_.settled_at.push_back(t);
          AddElementFacts(rec.element);
        }
        rec.symbol = RevealSymbol();
        return;
      }
      waiting_ = true;
      detected_ = t;
      z_ = (range - mt).Min();
      ybar_ = (range - mt).Without(z_).ToVector();
      snapshot_ = range & mt;
    }
    rec.z = z_;
    rec.ybar = ybar_;
    const ElementSet range = Range();
    if (t > detected_ && (range & m_.At(t)) != snapshot_) {
      rec.event = EventKind::kOutcome1;
      ++trace_.outcome1_count;
      Resolve(t);
      return;
    }
    if (TryReembed(t, rec)) {
      rec.event = EventKind::kOutcome2;
      ++trace_.outcome2_count;
      Resolve(t);
      return;
    }
    rec.event = EventKind::kWait;
  }

  void Resolve(int t) {
    waiting_ = false;
    trace_.longest_wait = std::max(trace_.longest_wait, t - detected_);
  }

  int RevealSymbol() {
    const auto& order = p_.order();
    if (trace_.symbols.size() == order.size()) return -1;
    const int r = order[trace_.symbols.size()];
    trace_.symbols.push_back(r);
    std::set<std::vector<int>> facts;
    std::vector<int> pool(f_.size());
    for (int x = 0; x < static_cast<int>(f_.size()); ++x) pool[x] = x;
    ForEachTuple(pool, p_.structure().relations[r].arity,
                 [&](const std::vector<int>& tuple) {
                   if (HoldsUnder(r, tuple, f_)) facts.insert(tuple);
                 });
    trace_.diagram.push_back(std::move(facts));
    return r;
  }

  void AddElementFacts(int x) {
    std::vector<int> pool(f_.size());
    for (int i = 0; i < static_cast<int>(f_.size()); ++i) pool[i] = i;
    for (std::size_t i = 0; i < trace_.symbols.size(); ++i) {
      const int r = trace_.symbols[i];
      ForEachTuple(pool, p_.structure().relations[r].arity,
                   [&](const std::vector<int>& tuple) {
                     if (std::find(tuple.begin(), tuple.end(), x) ==
                         tuple.end()) {
                       return;
                     }
                     if (HoldsUnder(r, tuple, f_)) trace_.diagram[i].insert(tuple);
                   });
    }
  }

  bool HoldsUnder(int r, const std::vector<int>& tuple,
                  const std::vector<int>& g) const {
    std::vector<int> image(tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i) image[i] = g[tuple[i]];
    return p_.structure().Holds(r, image);
  }

  // Whether the facts of B among assigned elements that mention `x` agree
  // with N under the partial map g (-1 marks unassigned).
  bool Consistent(const std::vector<int>& g, int x) const {
    std::vector<int> pool;
    for (int i = 0; i < static_cast<int>(g.size()); ++i) {
      if (g[i] >= 0) pool.push_back(i);
    }
    for (std::size_t i = 0; i < trace_.symbols.size(); ++i) {
      const int r = trace_.symbols[i];
      bool ok = true;
      ForEachTuple(pool, p_.structure().relations[r].arity,
                   [&](const std::vector<int>& tuple) {
                     if (!ok || std::find(tuple.begin(), tuple.end(), x) ==
                                    tuple.end()) {
                       return;
                     }
                     if (trace_.diagram[i].contains(tuple) !=
                         HoldsUnder(r, tuple, g)) {
                       ok = false;
                     }
                   });
      if (!ok) return false;
    }
    return true;
  }

  // Outcome 2: the least (a in A_t enumeration order, ybar' in lexicographic
  // order) sending z to a and ybar to ybar' with the result an embedding.
  bool TryReembed(int t, StageRecord& rec) {
    std::vector<int> g = f_;
    std::vector<int> movers;
    std::vector<bool> used(p_.size(), false);
    const auto preimage = [&](int y) {
      return static_cast<int>(std::find(f_.begin(), f_.end(), y) - f_.begin());
    };
    movers.push_back(preimage(z_));
    for (int y : ybar_) movers.push_back(preimage(y));
    for (int x : movers) g[x] = -1;
    for (int y : g) {
      if (y >= 0) used[y] = true;
    }
    std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
      if (k == movers.size()) return true;
      const int x = movers[k];
      const auto try_value = [&](int y) {
        if (used[y]) return false;
        g[x] = y;
        used[y] = true;
        if (Consistent(g, x) && assign(k + 1)) return true;
        used[y] = false;
        g[x] = -1;
        return false;
      };
      if (k == 0) {
        for (int y : a_.order()) {
          if (a_.InAt(y, t) && try_value(y)) return true;
        }
        return false;
      }
      for (int y = 0; y < p_.size(); ++y) {
        if (try_value(y)) return true;
      }
      return false;
    };
    if (!assign(0)) return false;
    rec.a = g[movers[0]];
    for (std::size_t k = 1; k < movers.size(); ++k) {
      rec.ybar_prime.push_back(g[movers[k]]);
    }
    for (int x : movers) {
      if (g[x] != f_[x]) trace_.settled_at[x] = t;
    }
    f_ = std::move(g);
    return true;
  }

  const StagewisePresentation& p_;
  const Delta2Schedule& m_;
  const Sigma1Schedule& a_;
  ConstructionTrace& trace_;
  std::vector<int> f_;
  bool waiting_ = false;
  int detected_ = 0;
  int z_ = -1;
  std::vector<int> ybar_;
  ElementSet snapshot_;
};

}  // namespace

ConstructionTrace GoingDownRun(const StagewisePresentation& p,
                               const Delta2Schedule& m,
                               const Sigma1Schedule& a, int horizon) {
  if (m.universe() != p.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "schedule and structure have different universes");
  }
  ConstructionTrace trace;
  const Delta2Schedule coherent = m.CorrectedFor(a, &trace.corrections);
  if (horizon <= coherent.LastFlipStage()) {
    Fail(ErrorCode::kInvalidArgument,
         "horizon " + std::to_string(horizon) + " does not pass the last flip "
         "at stage " + std::to_string(coherent.LastFlipStage()));
  }
  trace.horizon = horizon;
  Construction(p, coherent, a, trace).Run(horizon);
  return trace;
}

TraceReport TraceVerify(const ConstructionTrace& trace,
                        const StagewisePresentation& p, ElementSet target,
                        const Sigma1Schedule& a) {
  TraceReport report;
  std::vector<std::string> problems;
  const auto& limit = trace.limit_map;

  ElementSet image;
  bool injective = true;
  bool inside = true;
  for (int y : limit) {
    if (y < 0 || y >= p.size()) {
      inside = false;
      continue;
    }
    if (image.contains(y)) injective = false;
    image = image.With(y);
    if (!target.contains(y)) inside = false;
  }

  report.stabilized = trace.status == ConstructionTrace::Status::kComplete &&
                      !trace.stages.empty() &&
                      trace.stages.back().event == EventKind::kIdle && inside;
  if (!report.stabilized) {
    problems.push_back(trace.status == ConstructionTrace::Status::kStuck
                           ? "run is stuck in a wait"
                           : "construction has not settled inside M");
  }

  report.permanent = true;
  std::vector<int> prev;
  int prev_stage = 0;
  for (const StageRecord& rec : trace.stages) {
    for (std::size_t x = 0; x < prev.size() && report.permanent; ++x) {
      if (a.InAt(prev[x], prev_stage) &&
          (x >= rec.map.size() || rec.map[x] != prev[x])) {
        report.permanent = false;
        problems.push_back("element " + std::to_string(x) +
                           " moved at stage " + std::to_string(rec.stage) +
                           " after its image entered A");
      }
    }
    prev = rec.map;
    prev_stage = rec.stage;
  }

  report.isomorphism = injective && inside;
  if (trace.symbols.size() != p.structure().relations.size() ||
      trace.diagram.size() != trace.symbols.size()) {
    report.isomorphism = false;
    problems.push_back("not every symbol was revealed by the horizon");
  }
  std::vector<int> pool(limit.size());
  for (int x = 0; x < static_cast<int>(limit.size()); ++x) pool[x] = x;
  for (std::size_t i = 0; i < trace.symbols.size() && report.isomorphism;
       ++i) {
    const int r = trace.symbols[i];
    ForEachTuple(pool, p.structure().relations[r].arity,
                 [&](const std::vector<int>& tuple) {
                   if (!report.isomorphism) return;
                   std::vector<int> img(tuple.size());
                   for (std::size_t k = 0; k < tuple.size(); ++k) {
                     img[k] = limit[tuple[k]];
                   }
                   if (trace.diagram[i].contains(tuple) !=
                       p.structure().Holds(r, img)) {
                     report.isomorphism = false;
                     problems.push_back(
                         "relation " + p.structure().relations[r].name +
                         " differs under the limit map");
                   }
                 });
  }
  if (!injective || !inside) {
    problems.push_back("limit map is not an injection into M");
  }

  report.surjective = image == target && inside;
  if (!report.surjective) problems.push_back("limit map does not cover M");
  if (!problems.empty()) report.detail = problems.front();
  return report;
}

Delta2Schedule Delta2AclSchedule(const StagewisePresentation& p,
                                 ElementSet bbar,
                                 const std::vector<DelayEntry>& script) {
  if (!p.matroid()) {
    Fail(ErrorCode::kInvalidArgument, "presentation carries no matroid");
  }
  const Matroid& m = *p.matroid();
  m.CheckSubset(bbar);
  if (!IsIndependent(m, bbar)) {
    Fail(ErrorCode::kNotExtendable, "bbar is dependent");
  }
  std::vector<int> extension;
  ElementSet basis = bbar;
  for (int x : m.ground()) {
    if (!m.ClosureOf(basis).contains(x)) {
      basis = basis.With(x);
      extension.push_back(x);
    }
  }
  const int base_rank = m.RankOf(bbar);
  ElementSet truth;
  for (int x : m.ground()) {
    const bool by_rank = m.RankOf(bbar.With(x)) == base_rank;
    bool by_exchange = true;
    ElementSet prefix = bbar.With(x);
    for (int c : extension) {
      if (m.ClosureOf(prefix).contains(c)) {
        by_exchange = false;
        break;
      }
      prefix = prefix.With(c);
    }
    if (by_rank != by_exchange) {
      Fail(ErrorCode::kInternal,
           "rank and exchange membership disagree; not a pregeometry");
    }
    if (by_rank) truth = truth.With(x);
  }
  std::vector<Flip> flips;
  std::set<int> seen;
  int budget = 0;
  for (const DelayEntry& d : script) {
    m.CheckSubset(ElementSet::Single(d.element));
    if (d.stage < 1 || d.toggles < 0) {
      Fail(ErrorCode::kInvalidArgument, "delay stages start at 1");
    }
    if (!seen.insert(d.element).second) {
      Fail(ErrorCode::kInvalidArgument, "delay script lists an element twice");
    }
    bool value = truth.contains(d.element) != (d.toggles % 2 == 1);
    for (int k = 0; k < d.toggles; ++k) {
      value = !value;
      flips.push_back(Flip{d.element, d.stage + k, value});
    }
    budget = std::max(budget, d.toggles);
  }
  return Delta2Schedule::Create(m.size(), truth, std::move(flips), budget);
}

}  // namespace flatgeom
