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

#ifndef GROUPLOG_TESTS_TESTUTIL_HPP
#define GROUPLOG_TESTS_TESTUTIL_HPP

#include <random>
#include <string>
#include <vector>

#include "grouplog/ast.hpp"

namespace grouplog::testing {

// Seeded random formulas over a small variable pool, used by round-trip and
// evaluator cross-checking tests.
class FormulaSource {
 public:
  explicit FormulaSource(unsigned seed) : rng_(seed) {}

  const std::vector<std::string>& pool() const { return pool_; }

  TermPtr term(int depth) {
    const int choice = depth <= 0 ? pick(2) : pick(4);
    switch (choice) {
      case 0:
        return mk_var(pool_[static_cast<std::size_t>(pick(static_cast<int>(pool_.size())))]);
      case 1:
        return mk_one();
      case 2:
        return mk_inv(term(depth - 1));
      default:
        return mk_mul(term(depth - 1), term(depth - 1));
    }
  }

  // Up to `quantifiers` quantifier nodes along any path.
  grouplog::FormulaPtr formula(int depth, int quantifiers) {
    const int choice = depth <= 0 ? 0 : pick(quantifiers > 0 ? 7 : 5);
    switch (choice) {
      case 0:
        return mk_eq(term(2), term(2));
      case 1:
        return mk_not(formula(depth - 1, quantifiers));
      case 2:
        return mk_and(formula(depth - 1, quantifiers), formula(depth - 1, quantifiers));
      case 3:
        return mk_or(formula(depth - 1, quantifiers), formula(depth - 1, quantifiers));
      case 4:
        return mk_imp(formula(depth - 1, quantifiers), formula(depth - 1, quantifiers));
      case 5:
        return mk_all(pool_[static_cast<std::size_t>(pick(static_cast<int>(pool_.size())))],
                      formula(depth - 1, quantifiers - 1));
      default:
        return mk_ex(pool_[static_cast<std::size_t>(pick(static_cast<int>(pool_.size())))],
                     formula(depth - 1, quantifiers - 1));
    }
  }

 private:
  int pick(int n) { return static_cast<int>(rng_() % static_cast<unsigned>(n)); }

  std::mt19937 rng_;
  std::vector<std::string> pool_{"x", "y", "z"};
};

}  // namespace grouplog::testing

#endif  // GROUPLOG_TESTS_TESTUTIL_HPP
