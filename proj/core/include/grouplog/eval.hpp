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

#ifndef GROUPLOG_EVAL_HPP
#define GROUPLOG_EVAL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "grouplog/ast.hpp"
#include "grouplog/bitset.hpp"
#include "grouplog/errors.hpp"
#include "grouplog/group.hpp"

namespace grouplog {

// Variable assignment: variable name -> element index.
using Env = std::map<std::string, int>;

enum class EvalMode { kNaive, kGrounded };

struct EvalStats {
  long long nodes_visited = 0;
  long long relations_built = 0;
  long long max_relation_rows = 0;
  double wall_time = 0.0;  // seconds; excluded from serialized reports
  std::string mode;
};

struct EvalOptions {
  long long budget = 0;  // estimated-step budget; <= 0 means default_budget()
  bool force = false;    // evaluate even when the estimate exceeds the budget
  int arity_cap = 4;     // max free variables of any materialized relation
  long long row_cap = 50'000'000;  // runtime guard on total materialized rows
};

// 10^9 unless the GROUPLOG_BUDGET environment variable overrides it.
long long default_budget();

// Heuristic upper bound on evaluation steps.  Naive mode sums |G|^d over AST
// nodes at quantifier depth d; grounded mode charges |G|^arity for the outer
// existential block (capped at 4) plus |G|^min(free vars, 3) per distinct
// subformula, matching the relational engine's real row bounds.
double cost_estimate(const FiniteGroup& g, const FormulaPtr& f, EvalMode mode);

// Set of satisfying assignments over a fixed column list (variable names,
// kept sorted).  Rows are stored in a dense bitset when |G|^arity is small
// and as a sorted vector of packed tuples otherwise.  Not thread-safe while
// being built; safe to share once finished.
class Relation {
 public:
  Relation() = default;
  Relation(const FiniteGroup& g, std::vector<std::string> columns);  // empty
  static Relation full(const FiniteGroup& g, std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return cols_; }
  int arity() const { return static_cast<int>(cols_.size()); }
  long long size() const;
  bool contains(const std::vector<int>& row) const;
  bool contains_packed(uint64_t packed) const;
  bool is_empty() const { return size() == 0; }
  std::vector<std::vector<int>> rows() const;  // sorted; intended for tests
  // Invokes fn on each row in ascending order until it returns false.
  void for_each_row(
      const std::function<bool(const std::vector<int>&)>& fn) const;

  void insert(const std::vector<int>& row);
  void insert_packed(uint64_t packed);  // coords 16 bits each, column order
  void finish();                        // sort/dedup packed storage

  // Set algebra; binary operations require identical column lists.
  void complement();                   // w.r.t. the full |G|^arity product
  void intersect(const Relation& other);
  void unite(const Relation& other);
  Relation project_out(const std::string& column) const;
  Relation expand(const FiniteGroup& g,
                  const std::vector<std::string>& columns) const;  // superset
  Relation rename(const std::map<std::string, std::string>& renaming) const;

  static uint64_t pack(const std::vector<int>& row);

 private:
  const FiniteGroup* g_ = nullptr;
  std::vector<std::string> cols_;
  bool dense_ = true;
  DenseBitset bits_;                  // dense storage, row-major index
  std::vector<uint64_t> packed_;      // sparse storage, sorted after finish()
  bool finished_ = true;

  uint64_t dense_index(const std::vector<int>& row) const;
  friend class Evaluator;
};

// --- entry points -----------------------------------------------------------

// Naive structural recursion (the semantics oracle).  env must bind every
// free variable.  Checks the naive cost estimate against the budget unless
// options.force is set.
bool eval(const FiniteGroup& g, const FormulaPtr& f, const Env& env,
          const EvalOptions& options = {}, EvalStats* stats = nullptr);

// Bottom-up evaluation to the relation over free_vars(f) (columns sorted by
// name).  Uses the same memoized relational engine as grounded evaluation.
Relation relation(const FiniteGroup& g, const FormulaPtr& f,
                  const EvalOptions& options = {}, EvalStats* stats = nullptr);

struct GroundedResult {
  bool satisfied = false;
  // Bindings of the outer existential block in declaration order; the
  // lexicographically least accepted tuple.  Empty when unsatisfied or when
  // the sentence has no outer existential block.
  std::vector<std::pair<std::string, int>> witness;
  EvalStats stats;
};

// Evaluates a closed formula.  Sentences shaped as an outer existential
// block over a conjunction are grounded: candidate tuples are enumerated in
// lexicographic order with cheap conjuncts filtering before expensive ones,
// and generation-shaped subformulas are computed by product-set doubling.
// Other closed formulas fall back to the relational engine.
GroundedResult eval_sentence_grounded(const FiniteGroup& g, const FormulaPtr& f,
                                      const EvalOptions& options = {});

}  // namespace grouplog

#endif  // GROUPLOG_EVAL_HPP
