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

#include "flatgeom/element_set.h"

#include <string>

#include "flatgeom/error.h"

namespace flatgeom {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kParse:
      return "ParseError";
    case ErrorCode::kInvalidElement:
      return "InvalidElement";
    case ErrorCode::kGroundTooLarge:
      return "GroundTooLarge";
    case ErrorCode::kNoLargeCircuit:
      return "NoLargeCircuit";
    case ErrorCode::kNotIndependent:
      return "NotIndependent";
    case ErrorCode::kEmptyCollection:
      return "EmptyCollection";
    case ErrorCode::kInvalidSequence:
      return "InvalidSequence";
    case ErrorCode::kInvalidConfig:
      return "InvalidConfig";
    case ErrorCode::kNotExtendable:
      return "NotExtendable";
    case ErrorCode::kIncoherentSchedule:
      return "IncoherentSchedule";
    case ErrorCode::kProfileInvalid:
      return "ProfileInvalid";
    case ErrorCode::kInvalidStructure:
      return "InvalidStructure";
    case ErrorCode::kInternal:
      return "Internal";
  }
  return "Unknown";
}

ElementSet::ElementSet(std::initializer_list<int> ids) {
  *this = FromIds(std::span<const int>(ids.begin(), ids.size()));
}

ElementSet ElementSet::FromIds(std::span<const int> ids) {
  uint64_t bits = 0;
  for (int id : ids) {
    if (id < 0 || id >= kMaxGroundSize) {
      throw Error(ErrorCode::kInvalidElement,
                  "element id " + std::to_string(id) + " out of range");
    }
    bits |= uint64_t{1} << id;
  }
  return ElementSet(bits);
}

std::vector<int> ElementSet::ToVector() const {
  std::vector<int> out;
  out.reserve(size());
  for (int id : *this) out.push_back(id);
  return out;
}

bool CanonicalLess(ElementSet a, ElementSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  // Same size: compare increasing id lists lexicographically. The first
  // differing position is decided by the least element of the symmetric
  // difference; whichever set owns it is smaller.
  const uint64_t diff = a.bits() ^ b.bits();
  if (diff == 0) return false;
  const uint64_t lowest = diff & (~diff + 1);
  return (a.bits() & lowest) != 0;
}

namespace {

void Combine(const std::vector<int>& ids, int start, int k, uint64_t acc,
             std::vector<ElementSet>& out) {
  if (k == 0) {
    out.emplace_back(acc);
    return;
  }
  for (int i = start; i + k <= static_cast<int>(ids.size()); ++i) {
    Combine(ids, i + 1, k - 1, acc | (uint64_t{1} << ids[i]), out);
  }
}

}  // namespace

std::vector<ElementSet> SubsetsOfSize(ElementSet universe, int k) {
  std::vector<ElementSet> out;
  if (k < 0 || k > universe.size()) return out;
  Combine(universe.ToVector(), 0, k, 0, out);
  return out;
}

}  // namespace flatgeom
