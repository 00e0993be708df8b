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

#include "flatgeom/matroid.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "flatgeom/error.h"

namespace flatgeom {

struct Matroid::Tables {
  std::vector<uint64_t> closure;
  std::vector<uint8_t> rank;
};

namespace {

bool IsPrime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

int Mod(long long v, int q) {
  long long r = v % q;
  return static_cast<int>(r < 0 ? r + q : r);
}

int Inverse(int v, int q) {
  // Fermat: v^(q-2) mod q.
  long long result = 1, base = v, e = q - 2;
  while (e > 0) {
    if (e & 1) result = result * base % q;
    base = base * base % q;
    e >>= 1;
  }
  return static_cast<int>(result);
}

int LinearRank(const LinearOracle& lin, ElementSet set) {
  std::vector<std::vector<int>> rows;
  rows.reserve(set.size());
  for (int id : set) rows.push_back(lin.columns[id]);
  if (rows.empty()) return 0;
  const int q = lin.field;
  const int width = static_cast<int>(rows.front().size());
  int rank = 0;
  for (int col = 0; col < width && rank < static_cast<int>(rows.size());
       ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    const int inv = Inverse(rows[rank][col], q);
    for (int& v : rows[rank]) v = Mod(static_cast<long long>(v) * inv, q);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const int factor = rows[r][col];
      for (int c = 0; c < width; ++c) {
        rows[r][c] = Mod(rows[r][c] - static_cast<long long>(factor) *
                                          rows[rank][c],
                         q);
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Matroid::Matroid(int size, Oracle oracle, std::vector<std::string> labels)
    : size_(size), oracle_(std::move(oracle)), labels_(std::move(labels)) {
  if (size_ < 0 || size_ > kMaxGroundSize) {
    throw Error(ErrorCode::kGroundTooLarge,
                "ground set size must be in [0, 64], got " +
                    std::to_string(size_));
  }
  if (!labels_.empty() && static_cast<int>(labels_.size()) != size_) {
    throw Error(ErrorCode::kInvalidArgument,
                "labels must name every element");
  }
  BuildTables();
}

Matroid Matroid::Linear(int field, std::vector<std::vector<int>> columns,
                        std::vector<std::string> labels) {
  if (!IsPrime(field) || field > 251) {
    throw Error(ErrorCode::kInvalidArgument,
                "field order must be a prime <= 251, got " +
                    std::to_string(field));
  }
  const int size = static_cast<int>(columns.size());
  std::size_t width = columns.empty() ? 0 : columns.front().size();
  for (auto& column : columns) {
    if (column.size() != width) {
      throw Error(ErrorCode::kInvalidArgument,
                  "all columns must have the same length");
    }
    for (int& v : column) v = Mod(v, field);
  }
  return Matroid(size, LinearOracle{field, std::move(columns)},
                 std::move(labels));
}

Matroid Matroid::Uniform(int rank, int size) {
  if (rank < 0 || rank > size) {
    throw Error(ErrorCode::kInvalidArgument,
                "uniform matroid needs 0 <= rank <= size");
  }
  return Matroid(size, UniformOracle{rank}, {});
}

Matroid Matroid::ClosureTable(int size, std::vector<ClosureEntry> entries,
                              std::vector<std::string> labels) {
  if (size < 0 || size > kMaxGroundSize) {
    throw Error(ErrorCode::kGroundTooLarge, "ground set too large");
  }
  const ElementSet ground = ElementSet::Range(size);
  for (const ClosureEntry& e : entries) {
    if (!e.set.IsSubsetOf(ground) || !e.closure.IsSubsetOf(ground)) {
      throw Error(ErrorCode::kInvalidElement,
                  "closure table mentions an element outside the ground set");
    }
  }
  return Matroid(size, ClosureTableOracle{std::move(entries)},
                 std::move(labels));
}

std::string Matroid::Label(int id) const {
  if (id >= 0 && id < static_cast<int>(labels_.size())) return labels_[id];
  return std::to_string(id);
}

void Matroid::CheckSubset(ElementSet set) const {
  if (!set.IsSubsetOf(ground())) {
    throw Error(ErrorCode::kInvalidElement,
                "element " + std::to_string((set - ground()).Min()) +
                    " is not in the ground set of size " +
                    std::to_string(size_));
  }
}

ElementSet Matroid::ComputeClosure(ElementSet set) const {
  if (const auto* uni = std::get_if<UniformOracle>(&oracle_)) {
    return set.size() < uni->rank ? set : ground();
  }
  if (const auto* table = std::get_if<ClosureTableOracle>(&oracle_)) {
    ElementSet result = ground();
    for (const ClosureEntry& e : table->entries) {
      if (e.set == set) return e.closure;
    }
    for (const ClosureEntry& e : table->entries) {
      if (set.IsSubsetOf(e.closure)) result &= e.closure;
    }
    return result;
  }
  const int base = ComputeRank(set);
  ElementSet result = set;
  for (int id : ground() - set) {
    if (ComputeRank(set.With(id)) == base) result = result.With(id);
  }
  return result;
}

int Matroid::ComputeRank(ElementSet set) const {
  if (const auto* lin = std::get_if<LinearOracle>(&oracle_)) {
    return LinearRank(*lin, set);
  }
  if (const auto* uni = std::get_if<UniformOracle>(&oracle_)) {
    return std::min(set.size(), uni->rank);
  }
  ElementSet kept;
  int rank = 0;
  for (int id : set) {
    if (!ClosureOf(kept).contains(id)) ++rank;
    kept = kept.With(id);
  }
  return rank;
}

void Matroid::BuildTables() {
  if (size_ > kTableLimit) return;
  auto tables = std::make_shared<Tables>();
  const std::size_t count = std::size_t{1} << size_;
  tables->closure.resize(count);
  tables->rank.resize(count);
  if (std::holds_alternative<ClosureTableOracle>(oracle_)) {
    for (std::size_t bits = 0; bits < count; ++bits) {
      tables->closure[bits] = ComputeClosure(ElementSet(bits)).bits();
    }
    // Greedy rank by DP on the highest element.
    tables->rank[0] = 0;
    for (std::size_t bits = 1; bits < count; ++bits) {
      const ElementSet set(bits);
      const int hi = set.Max();
      const ElementSet rest = set.Without(hi);
      const bool fresh = !ElementSet(tables->closure[rest.bits()]).contains(hi);
      tables->rank[bits] =
          static_cast<uint8_t>(tables->rank[rest.bits()] + (fresh ? 1 : 0));
    }
  } else {
    for (std::size_t bits = 0; bits < count; ++bits) {
      tables->rank[bits] = static_cast<uint8_t>(ComputeRank(ElementSet(bits)));
    }
    for (std::size_t bits = 0; bits < count; ++bits) {
      uint64_t cl = bits;
      for (int id = 0; id < size_; ++id) {
        const uint64_t with = bits | (uint64_t{1} << id);
        if (tables->rank[with] == tables->rank[bits]) cl |= uint64_t{1} << id;
      }
      tables->closure[bits] = cl;
    }
  }
  tables_ = std::move(tables);
}

ElementSet Matroid::ClosureOf(ElementSet set) const {
  if (tables_) return ElementSet(tables_->closure[set.bits()]);
  return ComputeClosure(set);
}

int Matroid::RankOf(ElementSet set) const {
  if (tables_) return tables_->rank[set.bits()];
  return ComputeRank(set);
}

Flat Closure(const Matroid& m, ElementSet set) {
  m.CheckSubset(set);
  const ElementSet cl = m.ClosureOf(set);
  return Flat{cl, m.RankOf(cl)};
}

int Rank(const Matroid& m, ElementSet set) {
  m.CheckSubset(set);
  return m.RankOf(set);
}

bool IsIndependent(const Matroid& m, ElementSet set) {
  return Rank(m, set) == set.size();
}

bool IsIndependentOver(const Matroid& m, ElementSet set, ElementSet base) {
  m.CheckSubset(set | base);
  for (int id : set) {
    if (m.ClosureOf(base | set.Without(id)).contains(id)) return false;
  }
  return true;
}

std::vector<Flat> AllFlats(const Matroid& m) {
  // Every flat is reached from cl(empty) by a chain of covers
  // cl(F + e), so a closure-driven flood fill finds them all.
  std::set<ElementSet, CanonicalOrder> seen;
  std::vector<ElementSet> frontier{m.ClosureOf(ElementSet())};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    const ElementSet flat = frontier.back();
    frontier.pop_back();
    for (int id : m.ground() - flat) {
      const ElementSet next = m.ClosureOf(flat.With(id));
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  std::vector<Flat> out;
  out.reserve(seen.size());
  for (ElementSet flat : seen) out.push_back(Flat{flat, m.RankOf(flat)});
  return out;
}

const char* AxiomKindName(AxiomKind kind) {
  switch (kind) {
    case AxiomKind::kExtensive:
      return "extensive";
    case AxiomKind::kMonotone:
      return "monotone";
    case AxiomKind::kIdempotent:
      return "idempotent";
    case AxiomKind::kExchange:
      return "exchange";
    case AxiomKind::kRank:
      return "rank";
  }
  return "unknown";
}

namespace {

// Checks every axiom instance rooted at `set`; returns the first violation.
std::optional<AxiomViolation> CheckAt(const Matroid& m, ElementSet set,
                                      int64_t& checks) {
  const ElementSet cl = m.ClosureOf(set);
  ++checks;
  if (!set.IsSubsetOf(cl)) {
    return AxiomViolation{AxiomKind::kExtensive, (set - cl).Min(), -1, set};
  }
  if (m.ClosureOf(cl) != cl) {
    return AxiomViolation{AxiomKind::kIdempotent, -1, -1, set};
  }
  const int rank = m.RankOf(set);
  // Monotonicity along single-element extensions implies it for every
  // pair A <= B by transitivity.
  for (int b : m.ground() - set) {
    ++checks;
    const ElementSet with_b = m.ClosureOf(set.With(b));
    if (!cl.IsSubsetOf(with_b)) {
      return AxiomViolation{AxiomKind::kMonotone, -1, b, set};
    }
    const int step = m.RankOf(set.With(b)) - rank;
    if (step != (cl.contains(b) ? 0 : 1)) {
      return AxiomViolation{AxiomKind::kRank, -1, b, set};
    }
    for (int a : with_b - cl) {
      ++checks;
      if (!m.ClosureOf(set.With(a)).contains(b)) {
        return AxiomViolation{AxiomKind::kExchange, a, b, set};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

PregeometryReport VerifyPregeometry(const Matroid& m,
                                    const VerifyOptions& options) {
  PregeometryReport report;
  if (m.size() <= options.bound) {
    for (int k = 0; k <= m.size(); ++k) {
      for (ElementSet set : SubsetsOfSize(m.ground(), k)) {
        report.violation = CheckAt(m, set, report.checks);
        if (report.violation) return report;
      }
    }
    return report;
  }
  if (!options.sample) {
    throw Error(ErrorCode::kGroundTooLarge,
                "ground set of " + std::to_string(m.size()) +
                    " elements exceeds the exhaustive bound of " +
                    std::to_string(options.bound) +
                    "; enable sampling to check random subsets");
  }
  report.exhaustive = false;
  std::mt19937_64 rng(options.seed);
  const uint64_t mask = m.ground().bits();
  for (int i = 0; i < options.samples; ++i) {
    // Bias toward small subsets, where closures are non-trivial.
    uint64_t bits = rng() & mask;
    const int thin = static_cast<int>(rng() % 4);
    for (int t = 0; t < thin; ++t) bits &= rng();
    report.violation = CheckAt(m, ElementSet(bits), report.checks);
    if (report.violation) return report;
  }
  return report;
}

std::vector<Circuit> Circuits(const Matroid& m, int max_size) {
  if (max_size < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_size must be >= 1");
  }
  std::vector<Circuit> out;
  const int top = std::min(max_size, m.size());
  for (int k = 1; k <= top; ++k) {
    for (ElementSet set : SubsetsOfSize(m.ground(), k)) {
      if (m.RankOf(set) == k) continue;
      bool minimal = true;
      for (int id : set) {
        if (m.RankOf(set.Without(id)) != k - 1) {
          minimal = false;
          break;
        }
      }
      if (minimal) out.push_back(Circuit{set});
    }
  }
  return out;
}

CircuitParam SmallestCircuitParam(const Matroid& m) {
  // A circuit has at most rank(ground) + 1 elements.
  const int top = std::min(m.size(), m.RankOf(m.ground()) + 1);
  for (int k = 3; k <= top; ++k) {
    for (ElementSet set : SubsetsOfSize(m.ground(), k)) {
      if (m.RankOf(set) != k - 1) continue;
      bool minimal = true;
      for (int id : set) {
        if (m.RankOf(set.Without(id)) != k - 1) {
          minimal = false;
          break;
        }
      }
      if (minimal) return CircuitParam{k, k - 1};
    }
  }
  throw Error(ErrorCode::kNoLargeCircuit,
              "no circuit with more than 2 elements");
}

bool CarouselCheck(const Matroid& m, ElementSet abar,
                   std::span<const int> bs) {
  if (bs.empty()) {
    throw Error(ErrorCode::kNotIndependent, "bs must be non-empty");
  }
  const ElementSet b_set = ElementSet::FromIds(bs);
  m.CheckSubset(abar | b_set);
  if (b_set.size() != static_cast<int>(bs.size()) ||
      !(b_set & abar).empty() || !IsIndependentOver(m, b_set, abar)) {
    throw Error(ErrorCode::kNotIndependent,
                "bs must be distinct elements independent over abar");
  }
  ElementSet meet = m.ground();
  for (int b : bs) meet &= m.ClosureOf(abar | b_set.Without(b));
  return meet == m.ClosureOf(abar);
}

}  // namespace flatgeom
