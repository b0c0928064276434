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

#ifndef GROUPLOG_ERRORS_HPP
#define GROUPLOG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace grouplog {

// Malformed input text (Cayley tables, presentations, formulas).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error(message + " (line " + std::to_string(line) +
                           ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A structure that claims to be a group but violates the group axioms,
// or a constructor request outside the supported caps.
class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation refused because the cost estimate exceeds the step budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(double estimate, double budget)
      : std::runtime_error("evaluation budget exceeded: estimated " +
                           std::to_string(estimate) + " steps > budget " +
                           std::to_string(budget) +
                           " (raise the budget or pass force)"),
        estimate_(estimate),
        budget_(budget) {}

  double estimate() const { return estimate_; }
  double budget() const { return budget_; }

 private:
  double estimate_;
  double budget_;
};

// A subformula whose satisfying-assignment table would exceed the arity cap.
class ArityError : public std::runtime_error {
 public:
  ArityError(std::string subformula, int arity, int cap)
      : std::runtime_error("relation arity " + std::to_string(arity) +
                           " exceeds cap " + std::to_string(cap) +
                           " for subformula: " + subformula),
        subformula_(std::move(subformula)) {}

  const std::string& subformula() const { return subformula_; }

 private:
  std::string subformula_;
};

}  // namespace grouplog

#endif  // GROUPLOG_ERRORS_HPP
