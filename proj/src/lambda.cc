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

#include "flatgeom/lambda.h"

#include <algorithm>
#include <set>
#include <string>

#include "flatgeom/error.h"

namespace flatgeom {

FiberKey KeyOf(const std::vector<int>& tuple, int position) {
  FiberKey key{position, {}};
  key.rest.reserve(tuple.size() - 1);
  for (int j = 0; j < static_cast<int>(tuple.size()); ++j) {
    if (j != position) key.rest.push_back(tuple[j]);
  }
  return key;
}

namespace {

ElementSet SetOf(const std::vector<int>& ids) {
  ElementSet out;
  for (int id : ids) out = out.With(id);
  return out;
}

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidStructure, what);
}

std::string TupleString(const std::vector<int>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + ")";
}

}  // namespace

GeometricStructure::GeometricStructure(Matroid matroid, PhiRelation phi,
                                       int fiber_bound)
    : matroid_(std::move(matroid)),
      phi_(std::move(phi)),
      fiber_bound_(fiber_bound) {}

GeometricStructure GeometricStructure::Create(Matroid matroid, PhiRelation phi,
                                              int fiber_bound) {
  if (fiber_bound < 1) Invalid("fiber bound K must be positive");
  if (phi.arity < 2) Invalid("phi arity must be at least 2");
  if (phi.tuples.empty()) Invalid("phi must be non-empty");
  std::sort(phi.tuples.begin(), phi.tuples.end());
  phi.tuples.erase(std::unique(phi.tuples.begin(), phi.tuples.end()),
                   phi.tuples.end());
  const std::vector<Circuit> circuits = Circuits(matroid, phi.arity);
  std::set<uint64_t> circuit_bits;
  for (const Circuit& c : circuits) circuit_bits.insert(c.elements.bits());
  for (const auto& t : phi.tuples) {
    if (static_cast<int>(t.size()) != phi.arity) {
      Invalid("tuple " + TupleString(t) + " has the wrong arity");
    }
    for (int id : t) {
      if (id < 0 || id >= matroid.size()) {
        Invalid("tuple " + TupleString(t) + " leaves the universe");
      }
    }
    const ElementSet as_set = SetOf(t);
    if (as_set.size() != phi.arity || !circuit_bits.contains(as_set.bits())) {
      Invalid("tuple " + TupleString(t) + " is not a circuit of size " +
              std::to_string(phi.arity));
    }
  }
  GeometricStructure g(std::move(matroid), std::move(phi), fiber_bound);
  for (const auto& t : g.phi_.tuples) {
    for (int j = 0; j < g.phi_.arity; ++j) ++g.fiber_sizes_[KeyOf(t, j)];
  }
  for (const auto& [key, size] : g.fiber_sizes_) {
    if (size >= fiber_bound) {
      Invalid("fiber at position " + std::to_string(key.position) + " over " +
              TupleString(key.rest) + " has " + std::to_string(size) +
              " elements, bound K = " + std::to_string(fiber_bound));
    }
  }
  return g;
}

ElementSet LambdaStep(const GeometricStructure& g, ElementSet xi) {
  ElementSet next = xi;
  for (const auto& t : g.phi().tuples) {
    for (int j = 0; j < g.phi().arity; ++j) {
      bool rest_inside = true;
      for (int k = 0; k < g.phi().arity && rest_inside; ++k) {
        if (k != j && !xi.contains(t[k])) rest_inside = false;
      }
      if (rest_inside) next = next.With(t[j]);
    }
  }
  return next;
}

LambdaResult LambdaClosure(const GeometricStructure& g, ElementSet x,
                           int budget) {
  g.matroid().CheckSubset(x);
  // Each round either adds an element or is the fixpoint, so the fixpoint
  // index is at most |U| - |X|. A non-empty X therefore needs at most |U|
  // rounds (the last one confirms the fixpoint); the empty set never fires
  // because every fiber query names at least one element.
  if (budget <= 0) budget = std::max(g.universe_size(), 1);
  LambdaResult result;
  result.iterates.push_back(x);
  for (int round = 0; round < budget; ++round) {
    const ElementSet next = LambdaStep(g, result.iterates.back());
    if (next == result.iterates.back()) {
      result.status = LambdaResult::Status::kFixpoint;
      result.fixpoint_index = round;
      return result;
    }
    result.iterates.push_back(next);
  }
  result.status = LambdaResult::Status::kDiverging;
  return result;
}

EnumeratedStructure::EnumeratedStructure(GeometricStructure limit,
                                         std::vector<int> reveal_stage,
                                         std::map<FiberKey, int> declared)
    : limit_(std::move(limit)),
      reveal_stage_(std::move(reveal_stage)),
      declared_counts_(std::move(declared)) {}

EnumeratedStructure EnumeratedStructure::Create(
    GeometricStructure limit, std::vector<int> reveal_stage,
    std::map<FiberKey, int> declared_counts, ElementSet core) {
  const auto& tuples = limit.phi().tuples;
  if (core.empty()) core = limit.universe();
  if (!core.IsSubsetOf(limit.universe())) Invalid("core leaves the universe");
  if (reveal_stage.size() != tuples.size()) {
    Invalid("every phi tuple needs exactly one reveal stage");
  }
  EnumeratedStructure e(std::move(limit), std::move(reveal_stage),
                        std::move(declared_counts));
  e.core_ = core;
  const auto& phi = e.limit_.phi();
  for (int stage : e.reveal_stage_) {
    if (stage < 1) Invalid("reveal stages start at 1");
    e.stage_count_ = std::max(e.stage_count_, stage);
  }
  for (int i = 0; i < static_cast<int>(phi.tuples.size()); ++i) {
    for (int j = 0; j < phi.arity; ++j) {
      KeyInfo& info = e.keys_[KeyOf(phi.tuples[i], j)];
      info.tuple_indices.push_back(i);
      ++info.count;
    }
  }
  for (const auto& [key, count] : e.declared_counts_) {
    if (key.position < 0 || key.position >= phi.arity ||
        static_cast<int>(key.rest.size()) != phi.arity - 1) {
      Invalid("count query does not match the phi arity");
    }
    for (int id : key.rest) {
      if (id < 0 || id >= e.limit_.universe_size()) {
        Invalid("count query " + TupleString(key.rest) +
                " leaves the universe");
      }
    }
    KeyInfo& info = e.keys_[key];
    if (count < info.count) {
      Invalid("declared count " + std::to_string(count) + " for " +
              TupleString(key.rest) + " is below the " +
              std::to_string(info.count) + " revealed tuples");
    }
    if (count >= e.limit_.fiber_bound()) {
      Invalid("declared count " + std::to_string(count) +
              " violates the fiber bound K");
    }
    info.escapes = count > info.count;
    info.count = count;
  }
  return e;
}

EnumeratedStructure EnumeratedStructure::Complete(GeometricStructure limit) {
  std::vector<int> stages(limit.phi().tuples.size(), 1);
  return Create(std::move(limit), std::move(stages), {});
}

int EnumeratedStructure::Count(const FiberKey& key) const {
  const auto it = keys_.find(key);
  return it == keys_.end() ? 0 : it->second.count;
}

bool EnumeratedStructure::Escapes(const FiberKey& key) const {
  const auto it = keys_.find(key);
  return it != keys_.end() && it->second.escapes;
}

const char* StagedStatusName(StagedLambda::Status status) {
  switch (status) {
    case StagedLambda::Status::kFixpoint:
      return "Fixpoint";
    case StagedLambda::Status::kEscapes:
      return "Escapes";
    case StagedLambda::Status::kPending:
      return "Pending";
  }
  return "Unknown";
}

StagedLambda LambdaAtStage(const EnumeratedStructure& e, ElementSet seed,
                           int stage) {
  e.limit().matroid().CheckSubset(seed);
  const auto& tuples = e.limit().phi().tuples;
  StagedLambda out;
  out.iterates.push_back(seed);
  // Iterates only grow, so |U| + 1 rounds always reach a stable set.
  for (int round = 0; round <= e.limit().universe_size(); ++round) {
    const ElementSet xi = out.iterates.back();
    ElementSet next = xi;
    bool pending = false;
    for (const auto& [key, info] : e.keys()) {
      bool inside = true;
      for (int id : key.rest) inside = inside && xi.contains(id);
      if (!inside) continue;
      if (info.escapes) {
        out.status = StagedLambda::Status::kEscapes;
        out.escape_key = key;
        return out;
      }
      int revealed = 0;
      for (int i : info.tuple_indices) {
        if (e.reveal_stage()[i] <= stage) {
          ++revealed;
          next = next.With(tuples[i][key.position]);
        }
      }
      if (revealed < info.count) pending = true;
    }
    if (next == xi) {
      out.status = pending ? StagedLambda::Status::kPending
                           : StagedLambda::Status::kFixpoint;
      return out;
    }
    out.iterates.push_back(next);
  }
  throw Error(ErrorCode::kInternal, "staged closure failed to stabilize");
}

AclEnumeration AclEnumerateViaLambda(const EnumeratedStructure& e,
                                     ElementSet bbar, int budget) {
  const Matroid& m = e.limit().matroid();
  m.CheckSubset(bbar);
  if (budget < 1) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
  }
  const CircuitParam param = SmallestCircuitParam(m);
  if (bbar.size() != param.n || !IsIndependent(m, bbar) ||
      !bbar.IsSubsetOf(e.core())) {
    throw Error(ErrorCode::kInvalidArgument,
                "bbar must be an independent core set of size n = " +
                    std::to_string(param.n));
  }
  AclEnumeration out;
  const int last = std::min(budget, e.stage_count());
  for (int stage = 1; stage <= last; ++stage) {
    for (int a : e.core() - out.emitted) {
      const StagedLambda lam = LambdaAtStage(e, bbar.With(a), stage);
      if (lam.status == StagedLambda::Status::kFixpoint) {
        out.emissions.push_back({a, stage});
        out.emitted = out.emitted.With(a);
      }
    }
    out.stages_run = stage;
  }
  out.complete = budget >= e.stage_count();
  return out;
}

IldEstimate IldEstimateOf(const EnumeratedStructure& e, int budget) {
  if (budget < 1) {
    throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
  }
  IldEstimate out;
  out.stage = std::min(budget, e.stage_count());
  const Matroid& m = e.limit().matroid();
  std::vector<Flat> seeds;
  for (const Flat& f : AllFlats(m)) {
    const ElementSet seed = f.elements & e.core();
    if (m.RankOf(seed) != f.dim) continue;
    seeds.push_back(Flat{seed, f.dim});
  }
  const int top = m.RankOf(e.core());
  for (int d = 0; d <= top; ++d) {
    bool undetermined = false;
    for (const Flat& f : seeds) {
      if (f.dim != d) continue;
      const StagedLambda lam = LambdaAtStage(e, f.elements, out.stage);
      if (lam.status == StagedLambda::Status::kEscapes) {
        out.value = d;
        out.certified = true;
        out.witness = f.elements;
        return out;
      }
      if (lam.status == StagedLambda::Status::kPending) undetermined = true;
    }
    if (undetermined) {
      out.value = d;
      out.certified = false;
      return out;
    }
  }
  out.value = IldEstimate::kInfinite;
  out.certified = true;
  return out;
}

namespace {

// Odometer over all tuples of `arity` elements from {0..n-1}.
bool NextTuple(std::vector<int>& t, int n) {
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
    if (++t[i] < n) return true;
    t[i] = 0;
  }
  return false;
}

void CheckTupleCount(int universe, int arity) {
  double total = 1;
  for (int i = 0; i < arity; ++i) total *= universe;
  if (total > 1e6) {
    throw Error(ErrorCode::kInvalidArgument,
                "too many u-tuples to check exhaustively");
  }
}

}  // namespace

PsiReport PsiWitnessCheck(const GeometricStructure& g,
                          const WitnessRelation& psi,
                          const std::vector<int>& xbar0,
                          const std::vector<int>& xbar1) {
  const int n = g.universe_size();
  CheckTupleCount(n, psi.u_arity);
  std::map<std::vector<int>, std::set<std::vector<int>>> fibers;
  for (const auto& [u, v] : psi.pairs) {
    if (static_cast<int>(u.size()) != psi.u_arity ||
        static_cast<int>(v.size()) != psi.v_arity) {
      throw Error(ErrorCode::kInvalidArgument,
                  "witness pair does not match the declared arities");
    }
    for (int id : u) g.matroid().CheckSubset(ElementSet::Single(id));
    for (int id : v) g.matroid().CheckSubset(ElementSet::Single(id));
    fibers[u].insert(v);
  }
  PsiReport report;
  report.isolation_declared = psi.declared_isolating;
  std::vector<int> u(psi.u_arity, 0);
  do {
    const auto it = fibers.find(u);
    if (it == fibers.end()) {
      if (report.totality) report.first_unwitnessed = u;
      report.totality = false;
    } else if (static_cast<int>(it->second.size()) >= psi.declared_bound) {
      if (report.bounded) report.first_overfull = u;
      report.bounded = false;
    }
  } while (psi.u_arity > 0 && NextTuple(u, n));
  for (const auto& [z, ws] : fibers) {
    const ElementSet span = g.matroid().ClosureOf(SetOf(z));
    for (const auto& w : ws) {
      if (!SetOf(w).IsSubsetOf(span)) report.dependent = false;
    }
  }
  const auto it = fibers.find(xbar0);
  report.holds_on_x = it != fibers.end() && it->second.contains(xbar1);
  return report;
}

WitnessRelation FallbackWitness(const WitnessRelation& psi0, int exact_count,
                                int universe_size) {
  if (psi0.u_arity < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "the fallback witness needs at least one u coordinate");
  }
  CheckTupleCount(universe_size, psi0.u_arity);
  std::map<std::vector<int>, std::set<std::vector<int>>> fibers;
  for (const auto& [u, v] : psi0.pairs) fibers[u].insert(v);
  WitnessRelation out;
  out.u_arity = psi0.u_arity;
  out.v_arity = psi0.v_arity;
  out.declared_isolating = psi0.declared_isolating;
  out.declared_bound = std::max(exact_count, 1) + 1;
  std::vector<int> u(psi0.u_arity, 0);
  do {
    const auto it = fibers.find(u);
    if (it != fibers.end() &&
        static_cast<int>(it->second.size()) == exact_count) {
      for (const auto& v : it->second) out.pairs.emplace_back(u, v);
    } else {
      out.pairs.emplace_back(u, std::vector<int>(psi0.v_arity, u[0]));
    }
  } while (NextTuple(u, universe_size));
  return out;
}

}  // namespace flatgeom
