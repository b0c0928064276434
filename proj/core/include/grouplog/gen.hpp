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

#ifndef GROUPLOG_GEN_HPP
#define GROUPLOG_GEN_HPP

#include <optional>
#include <string>
#include <vector>

#include "grouplog/ast.hpp"
#include "grouplog/group.hpp"

namespace grouplog {

// --- building-block formulas -------------------------------------------------

// theta(n): free variables {x, y}; holds iff x^n = y.  Encodes n by its
// binary digits with a repeated-squaring chain of ⌊log₂ n⌋ + 1 steps, so
// length(theta(n)) ≤ 10 · (⌊log₂ n⌋ + 1).
FormulaPtr theta(long long n);

// Variant with explicit endpoint terms substituted for x and y; bound chain
// variables are named <bound_prefix>1..<bound_prefix>k.
FormulaPtr theta_applied(long long n, TermPtr x, TermPtr y,
                         const std::string& bound_prefix);

// delta(i, m): free variables {g, x1..xm}; holds iff g is a product of at
// most 2^i of the parameters (the identity counts as the empty product).
FormulaPtr delta(int i, int m);
FormulaPtr delta_applied(int i, TermPtr subject,
                         const std::vector<TermPtr>& params,
                         const std::string& bound_prefix);

// pi(m, order): delta at depth ⌈log₂ order⌉ — membership in <x1..xm> for a
// group of the given order.
FormulaPtr pi(int m, long long order);
FormulaPtr pi_applied(long long order, TermPtr subject,
                      const std::vector<TermPtr>& params,
                      const std::string& bound_prefix);

// pi_prime(p): free variables {g, x}; delta at depth ⌈log₂ p⌉ with a single
// parameter — g is a power x^z with 0 ≤ z ≤ 2^⌈log₂ p⌉.
FormulaPtr pi_prime(long long p);
FormulaPtr pi_prime_applied(long long p, TermPtr subject, TermPtr param,
                            const std::string& bound_prefix);

// tau(w, gen_vars): the relator w evaluates to the identity at gen_vars.
// Introduces one bound variable b<i> per syllable (via theta on |exponent|,
// inverting the generator for negative exponents) and asserts their
// left-folded product is the identity.
FormulaPtr tau(const Word& w, const std::vector<std::string>& gen_vars,
               const std::string& bound_prefix);

// zeta(P, gen_vars): conjunction of tau over all relators of P.
FormulaPtr zeta(const Presentation& p, const std::vector<std::string>& gen_vars);

// --- family sentences ---------------------------------------------------------

struct FamilySentence {
  std::string id;        // deterministic, e.g. "cyclic2_n3", "abelian_2x4"
  FormulaPtr formula;    // closed
  std::string family;    // cyclic2 | abelian | symmetric | simple | ut3
  std::vector<long long> params;
  long long target_order = 0;
  GroupDescriptor target;  // empty family when the target is not constructible
  std::string notes;       // presentation used, if any
  LengthCount length = 0;
};

// The group of order 2^n with a square-counting, no-long-doubling-chain,
// full-doubling-chain sentence.
FamilySentence sentence_cyclic2(int n);

// Generic presented-group sentence: relators hold, the bound generators
// generate, and the first generator is nontrivial.  The caller asserts that
// P presents a simple group of the given order.
FamilySentence sentence_simple(const Presentation& p, long long order,
                               const std::string& instance_tag = "");

// Symmetric-group sentence; ncycle_gen designates the generator mapped to
// the n-cycle (used by the nontriviality clause eta != 1 and eta^2 != 1).
// Without an explicit presentation, the built-in two-generator presentation
// from symmetric_presentation(n) is used.
FamilySentence sentence_symmetric(int n,
                                  const std::optional<Presentation>& p = {},
                                  int ncycle_gen = 0);

// Abelian direct-sum sentence for prime powers qs.
FamilySentence sentence_abelian(const std::vector<long long>& qs);

// Unitriangular-group sentence for UT3(n), n >= 2.
FamilySentence sentence_ut3(long long n);

// The coordinate subformula of sentence_ut3: free variables
// {h, x, y, z, a, b}.
FormulaPtr phi_ut3(long long n);

// Built-in presentations.
Presentation a5_presentation();                 // <a, b | a^2, b^3, (ab)^5>
Presentation symmetric_presentation(int n);     // two-generator, O(n log n)
FamilySentence sentence_simple_a5();            // sentence_simple over the above

}  // namespace grouplog

#endif  // GROUPLOG_GEN_HPP
