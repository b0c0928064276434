// Copyright 2026 The grouplog Authors
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

#ifndef GROUPLOG_BITSET_HPP
#define GROUPLOG_BITSET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace grouplog {

// Fixed-size dense bitset over 64-bit words.  Used for element subsets and
// for low-arity relations, where the universe (|G| or |G|^2) is small and
// dense word-parallel set algebra beats sorted containers.
class DenseBitset {
 public:
  DenseBitset() = default;
  explicit DenseBitset(std::size_t nbits)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) {
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool any() const {
    for (auto w : words_) {
      if (w) return true;
    }
    return false;
  }
  bool none() const { return !any(); }

  // First set bit at index >= from, or size() if there is none.
  std::size_t next(std::size_t from) const {
    if (from >= nbits_) return nbits_;
    std::size_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w) {
        std::size_t i = (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
        return i < nbits_ ? i : nbits_;
      }
      if (++wi >= words_.size()) return nbits_;
      w = words_[wi];
    }
  }

  DenseBitset& operator|=(const DenseBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  DenseBitset& operator&=(const DenseBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  DenseBitset& operator-=(const DenseBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  void flip_all() {
    for (auto& w : words_) w = ~w;
    trim();
  }

  bool is_subset_of(const DenseBitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }

  friend bool operator==(const DenseBitset& a, const DenseBitset& b) {
    return a.nbits_ == b.nbits_ && a.words_ == b.words_;
  }

  std::vector<int> to_indices() const {
    std::vector<int> out;
    for (std::size_t i = next(0); i < nbits_; i = next(i + 1)) {
      out.push_back(static_cast<int>(i));
    }
    return out;
  }

 private:
  void trim() {
    if (nbits_ & 63) {
      words_.back() &= (~std::uint64_t{0}) >> (64 - (nbits_ & 63));
    }
  }

  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace grouplog

#endif  // GROUPLOG_BITSET_HPP
