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

#ifndef GROUPLOG_AST_HPP
#define GROUPLOG_AST_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "grouplog/errors.hpp"

namespace grouplog {

// First-order terms over the group signature {*, ^-1, 1}.  Nodes are
// immutable and shared; builders may reuse subtrees freely.
enum class TermKind : uint8_t { kVar, kOne, kInv, kMul };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  std::string var;  // kVar only
  TermPtr lhs;      // kInv (the operand) and kMul
  TermPtr rhs;      // kMul only
};

enum class FormulaKind : uint8_t { kEq, kNot, kAnd, kOr, kImp, kAll, kEx };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  TermPtr t1, t2;    // kEq only
  FormulaPtr f1;     // kNot (the operand), binary connectives, quantifier body
  FormulaPtr f2;     // binary connectives only
  std::string var;   // kAll / kEx only
};

// --- builders --------------------------------------------------------------

TermPtr mk_var(std::string name);
TermPtr mk_one();
TermPtr mk_inv(TermPtr t);
TermPtr mk_mul(TermPtr lhs, TermPtr rhs);

FormulaPtr mk_eq(TermPtr t1, TermPtr t2);
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_and(FormulaPtr f1, FormulaPtr f2);
FormulaPtr mk_or(FormulaPtr f1, FormulaPtr f2);
FormulaPtr mk_imp(FormulaPtr f1, FormulaPtr f2);
FormulaPtr mk_all(std::string var, FormulaPtr body);
FormulaPtr mk_ex(std::string var, FormulaPtr body);

// Right-folded conjunction / disjunction; throw GroupError on empty input.
FormulaPtr bigand(const std::vector<FormulaPtr>& fs);
FormulaPtr bigor(const std::vector<FormulaPtr>& fs);

// [t1, t2] = t1^-1 * t2^-1 * t1 * t2, associated to the left.
TermPtr macro_commutator(TermPtr t1, TermPtr t2);

// --- measurement -----------------------------------------------------------

using LengthCount = long long;

// Symbol length: variables and the constant count 1; each operator,
// connective and equality counts 1 plus its operands; each quantifier
// counts 2 (quantifier + bound variable) plus its body.  Parentheses are
// not counted.
LengthCount length(const TermPtr& t);
LengthCount length(const FormulaPtr& f);

// --- text form ---------------------------------------------------------------
//
//   term    := "1" | IDENT | "(inv " term ")" | "(* " term " " term ")"
//   formula := "(= " term " " term ")" | "(not " formula ")"
//            | "(and " formula " " formula ")" | "(or " formula " " formula ")"
//            | "(imp " formula " " formula ")"
//            | "(all " IDENT " " formula ")" | "(ex " IDENT " " formula ")"
//   IDENT   := [a-zA-Z][a-zA-Z0-9_]*
//
// The printer emits exactly this canonical form; the parser is lenient
// about extra whitespace.

std::string print(const TermPtr& t);
std::string print(const FormulaPtr& f);

TermPtr parse_term(std::string_view text);
FormulaPtr parse_formula(std::string_view text);

// --- queries -----------------------------------------------------------------

std::set<std::string> free_vars(const TermPtr& t);
std::set<std::string> free_vars(const FormulaPtr& f);

bool is_sentence(const FormulaPtr& f);

// Structural equality (names matter; no alpha-equivalence).
bool equal(const TermPtr& a, const TermPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

}  // namespace grouplog

#endif  // GROUPLOG_AST_HPP
