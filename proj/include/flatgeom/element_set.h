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

#ifndef FLATGEOM_ELEMENT_SET_H_
#define FLATGEOM_ELEMENT_SET_H_

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace flatgeom {

// Ground sets are capped at 64 elements; every subset is a bitmask.
inline constexpr int kMaxGroundSize = 64;

// A subset of a finite ground set {0, ..., 63}. Iteration and ToVector()
// always yield ids in increasing order, which is the canonical form used for
// every set-valued output.
class ElementSet {
 public:
  constexpr ElementSet() = default;
  constexpr explicit ElementSet(uint64_t bits) : bits_(bits) {}
  ElementSet(std::initializer_list<int> ids);

  // Throws Error(kInvalidElement) for ids outside [0, 64).
  static ElementSet FromIds(std::span<const int> ids);
  static constexpr ElementSet Range(int n) {
    return ElementSet(n >= 64 ? ~uint64_t{0} : ((uint64_t{1} << n) - 1));
  }
  static constexpr ElementSet Single(int id) {
    return ElementSet(uint64_t{1} << id);
  }

  constexpr uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int id) const {
    return id >= 0 && id < 64 && ((bits_ >> id) & 1) != 0;
  }
  constexpr bool IsSubsetOf(ElementSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  // Least element id; -1 when empty.
  constexpr int Min() const {
    return bits_ == 0 ? -1 : std::countr_zero(bits_);
  }
  constexpr int Max() const {
    return bits_ == 0 ? -1 : 63 - std::countl_zero(bits_);
  }

  constexpr ElementSet With(int id) const {
    return ElementSet(bits_ | (uint64_t{1} << id));
  }
  constexpr ElementSet Without(int id) const {
    return ElementSet(bits_ & ~(uint64_t{1} << id));
  }

  constexpr ElementSet operator|(ElementSet o) const {
    return ElementSet(bits_ | o.bits_);
  }
  constexpr ElementSet operator&(ElementSet o) const {
    return ElementSet(bits_ & o.bits_);
  }
  constexpr ElementSet operator-(ElementSet o) const {
    return ElementSet(bits_ & ~o.bits_);
  }
  ElementSet& operator|=(ElementSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  ElementSet& operator&=(ElementSet o) {
    bits_ &= o.bits_;
    return *this;
  }

  constexpr bool operator==(const ElementSet&) const = default;

  std::vector<int> ToVector() const;

  class Iterator {
   public:
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    constexpr Iterator() = default;
    constexpr explicit Iterator(uint64_t rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr Iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr Iterator operator++(int) {
      Iterator copy = *this;
      ++*this;
      return copy;
    }
    constexpr bool operator==(const Iterator&) const = default;

   private:
    uint64_t rest_ = 0;
  };
  constexpr Iterator begin() const { return Iterator(bits_); }
  constexpr Iterator end() const { return Iterator(0); }

 private:
  uint64_t bits_ = 0;
};

// Canonical subset order: by cardinality, then lexicographically on the
// increasing id lists. Used for every "least" witness and for output order.
bool CanonicalLess(ElementSet a, ElementSet b);

struct CanonicalOrder {
  bool operator()(ElementSet a, ElementSet b) const {
    return CanonicalLess(a, b);
  }
};

// All k-element subsets of `universe`, in canonical (lexicographic) order.
std::vector<ElementSet> SubsetsOfSize(ElementSet universe, int k);

}  // namespace flatgeom

#endif  // FLATGEOM_ELEMENT_SET_H_
