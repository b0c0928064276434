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

#include "grouplog/eval.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grouplog/ast.hpp"
#include "grouplog/gen.hpp"
#include "grouplog/group.hpp"
#include "testutil.hpp"

namespace grouplog {
namespace {

FormulaPtr parse(const std::string& text) { return parse_formula(text); }

std::vector<FiniteGroup> small_corpus(int max_order) {
  std::vector<FiniteGroup> out;
  for (int n = 1; n <= std::min(max_order, 12); ++n) out.push_back(cyclic_group(n));
  if (max_order >= 16) out.push_back(cyclic_group(16));
  if (max_order >= 24) out.push_back(cyclic_group(24));
  if (max_order >= 6) out.push_back(symmetric_group(3));
  if (max_order >= 24) out.push_back(symmetric_group(4));
  if (max_order >= 12) out.push_back(alternating_group(4));
  if (max_order >= 8) out.push_back(dihedral_group(4));
  if (max_order >= 12) out.push_back(dihedral_group(6));
  if (max_order >= 8) out.push_back(quaternion_group());
  if (max_order >= 4) out.push_back(abelian_group({2, 2}));
  if (max_order >= 8) out.push_back(abelian_group({2, 4}));
  if (max_order >= 9) out.push_back(abelian_group({3, 3}));
  if (max_order >= 8) out.push_back(ut3_group(2));
  return out;
}

// --- naive evaluation ---------------------------------------------------------

TEST(NaiveEval, ReflexiveEquationHolds) {
  FiniteGroup g = cyclic_group(4);
  EXPECT_TRUE(eval(g, parse("(all x (= (* x x) (* x x)))"), {}));
}

TEST(NaiveEval, NonidentityElementExists) {
  FiniteGroup g = cyclic_group(2);
  EXPECT_TRUE(eval(g, parse("(ex x (not (= x 1)))"), {}));
  EXPECT_FALSE(eval(cyclic_group(1), parse("(ex x (not (= x 1)))"), {}));
}

TEST(NaiveEval, SymmetricGroupIsNotAbelian) {
  FiniteGroup g = symmetric_group(3);
  FormulaPtr comm = parse("(all x (all y (= (* x y) (* y x))))");
  EXPECT_FALSE(eval(g, comm, {}));
  EXPECT_TRUE(eval(cyclic_group(6), comm, {}));
}

TEST(NaiveEval, EnvironmentBindsFreeVariables) {
  FiniteGroup g = cyclic_group(5);
  FormulaPtr f = parse("(= (* x y) 1)");
  for (int x = 0; x < 5; ++x) {
    for (int y = 0; y < 5; ++y) {
      EXPECT_EQ(eval(g, f, {{"x", x}, {"y", y}}), (x + y) % 5 == 0);
    }
  }
}

TEST(NaiveEval, UnboundVariableThrows) {
  FiniteGroup g = cyclic_group(3);
  EXPECT_THROW(eval(g, parse("(= x 1)"), {}), GroupError);
  EXPECT_THROW(eval(g, parse("(ex y (= (* x y) 1))"), {}), GroupError);
}

TEST(NaiveEval, QuantifierShadowsOuterBinding) {
  FiniteGroup g = cyclic_group(4);
  // The bound x ranges over all elements regardless of the env binding.
  EXPECT_TRUE(eval(g, parse("(ex x (= x 1))"), {{"x", 3}}));
  EXPECT_FALSE(eval(g, parse("(all x (= x 1))"), {{"x", 0}}));
}

TEST(NaiveEval, StatsReportNaiveMode) {
  FiniteGroup g = cyclic_group(4);
  EvalStats st;
  EXPECT_TRUE(eval(g, parse("(all x (= x x))"), {}, {}, &st));
  EXPECT_EQ(st.mode, "naive");
  EXPECT_GT(st.nodes_visited, 0);
  EXPECT_GE(st.wall_time, 0.0);
}

// --- relation algebra ----------------------------------------------------------

TEST(RelationAlgebra, IdentityEquationHasSingleRow) {
  FiniteGroup g = cyclic_group(4);
  Relation r = relation(g, parse("(= x 1)"));
  EXPECT_EQ(r.columns(), std::vector<std::string>{"x"});
  EXPECT_EQ(r.rows(), std::vector<std::vector<int>>{{0}});
}

TEST(RelationAlgebra, SquareRootsOfIdentityModFour) {
  FiniteGroup g = cyclic_group(4);
  Relation r = relation(g, parse("(= (* x x) 1)"));
  EXPECT_EQ(r.rows(), (std::vector<std::vector<int>>{{0}, {2}}));
}

TEST(RelationAlgebra, ColumnsAreSortedAndDistinct) {
  FiniteGroup g = cyclic_group(3);
  Relation r(g, {"y", "x"});
  EXPECT_EQ(r.columns(), (std::vector<std::string>{"x", "y"}));
  EXPECT_THROW(Relation(g, {"x", "x"}), GroupError);
}

TEST(RelationAlgebra, InsertContainsAndSize) {
  FiniteGroup g = cyclic_group(5);
  Relation r(g, {"a", "b"});
  EXPECT_TRUE(r.is_empty());
  r.insert({1, 2});
  r.insert({1, 2});
  r.insert({0, 4});
  EXPECT_EQ(r.size(), 2);
  EXPECT_TRUE(r.contains({1, 2}));
  EXPECT_FALSE(r.contains({2, 1}));
  EXPECT_EQ(r.rows(), (std::vector<std::vector<int>>{{0, 4}, {1, 2}}));
}

TEST(RelationAlgebra, SparseStorageSortsAndDeduplicates) {
  FiniteGroup g = cyclic_group(4);
  Relation r(g, {"a", "b", "c"});
  r.insert({3, 0, 1});
  r.insert({0, 1, 2});
  r.insert({3, 0, 1});
  r.finish();
  EXPECT_EQ(r.size(), 2);
  EXPECT_EQ(r.rows(), (std::vector<std::vector<int>>{{0, 1, 2}, {3, 0, 1}}));
  EXPECT_TRUE(r.contains({3, 0, 1}));
  EXPECT_FALSE(r.contains({1, 0, 3}));
}

TEST(RelationAlgebra, PackUsesSixteenBitsPerCoordinate) {
  EXPECT_EQ(Relation::pack({1, 2, 3}),
            (uint64_t{1} << 32) | (uint64_t{2} << 16) | uint64_t{3});
  EXPECT_EQ(Relation::pack({}), uint64_t{0});
}

TEST(RelationAlgebra, ComplementIntersectUnite) {
  FiniteGroup g = cyclic_group(4);
  Relation even(g, {"x"});
  even.insert({0});
  even.insert({2});
  Relation odd = even;
  odd.complement();
  EXPECT_EQ(odd.rows(), (std::vector<std::vector<int>>{{1}, {3}}));

  Relation all = even;
  all.unite(odd);
  EXPECT_EQ(all.size(), 4);
  Relation none = even;
  none.intersect(odd);
  EXPECT_TRUE(none.is_empty());

  Relation other(g, {"y"});
  EXPECT_THROW(even.intersect(other), GroupError);
  EXPECT_THROW(even.unite(other), GroupError);
}

TEST(RelationAlgebra, SparseComplement) {
  FiniteGroup g = cyclic_group(2);
  Relation r(g, {"a", "b", "c"});
  r.insert({0, 0, 0});
  r.insert({1, 1, 1});
  r.finish();
  r.complement();
  EXPECT_EQ(r.size(), 6);
  EXPECT_FALSE(r.contains({0, 0, 0}));
  EXPECT_TRUE(r.contains({0, 0, 1}));
}

TEST(RelationAlgebra, ProjectOutDropsColumn) {
  FiniteGroup g = cyclic_group(4);
  Relation r(g, {"x", "y"});
  r.insert({0, 1});
  r.insert({2, 1});
  r.insert({2, 3});
  Relation p = r.project_out("x");
  EXPECT_EQ(p.columns(), std::vector<std::string>{"y"});
  EXPECT_EQ(p.rows(), (std::vector<std::vector<int>>{{1}, {3}}));
  EXPECT_THROW(r.project_out("z"), GroupError);
}

TEST(RelationAlgebra, ExpandAddsUnconstrainedColumns) {
  FiniteGroup g = cyclic_group(3);
  Relation r(g, {"x"});
  r.insert({2});
  Relation e = r.expand(g, {"x", "y"});
  EXPECT_EQ(e.rows(), (std::vector<std::vector<int>>{{2, 0}, {2, 1}, {2, 2}}));
  EXPECT_THROW(r.expand(g, {"y"}), GroupError);
}

TEST(RelationAlgebra, RenameReordersColumns) {
  FiniteGroup g = cyclic_group(4);
  Relation r(g, {"x", "y"});
  r.insert({1, 2});
  Relation renamed = r.rename({{"x", "z"}});
  EXPECT_EQ(renamed.columns(), (std::vector<std::string>{"y", "z"}));
  EXPECT_EQ(renamed.rows(), (std::vector<std::vector<int>>{{2, 1}}));
}

TEST(RelationAlgebra, FullRelationHasEveryRow) {
  FiniteGroup g = cyclic_group(3);
  EXPECT_EQ(Relation::full(g, {"x", "y"}).size(), 9);
  EXPECT_EQ(Relation::full(g, {"a", "b", "c"}).size(), 27);
  EXPECT_FALSE(Relation::full(g, {}).is_empty());
}

TEST(RelationAlgebra, NonemptyZeroArityRelationMeansTrue) {
  FiniteGroup g = symmetric_group(3);
  Relation t = relation(g, parse("(ex x (not (= x 1)))"));
  EXPECT_EQ(t.arity(), 0);
  EXPECT_FALSE(t.is_empty());
  Relation f = relation(g, parse("(all x (all y (= (* x y) (* y x))))"));
  EXPECT_TRUE(f.is_empty());
}

// --- cross-mode agreement -------------------------------------------------------

TEST(CrossMode, RandomFormulasAgreeAcrossEngines) {
  std::vector<FiniteGroup> groups;
  groups.push_back(cyclic_group(2));
  groups.push_back(cyclic_group(5));
  groups.push_back(symmetric_group(3));
  groups.push_back(dihedral_group(4));
  groups.push_back(abelian_group({2, 2}));
  grouplog::testing::FormulaSource source(20260814);
  int closed_checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const FiniteGroup& g = groups[static_cast<std::size_t>(trial) % groups.size()];
    FormulaPtr f = source.formula(3, 3);
    auto free = free_vars(f);
    std::vector<std::string> names(free.begin(), free.end());
    Relation r = relation(g, f);
    ASSERT_EQ(r.columns(), names);

    bool any = false;
    std::vector<int> row(names.size(), 0);
    std::function<void(std::size_t, Env&)> rec = [&](std::size_t i, Env& env) {
      if (i == names.size()) {
        bool naive = eval(g, f, env);
        ASSERT_EQ(r.contains(row), naive)
            << "mode disagreement on " << print(f) << " over group of order "
            << g.order;
        any = any || naive;
        return;
      }
      for (int v = 0; v < g.order; ++v) {
        env[names[i]] = v;
        row[i] = v;
        rec(i + 1, env);
      }
      env.erase(names[i]);
    };
    Env env;
    rec(0, env);
    EXPECT_EQ(!r.is_empty(), any);

    if (names.empty()) {
      ++closed_checked;
      GroundedResult gr = eval_sentence_grounded(g, f);
      EXPECT_EQ(gr.satisfied, any) << "grounded disagreement on " << print(f);
    }
  }
  EXPECT_GT(closed_checked, 10);
}

// --- generated-formula oracles ---------------------------------------------------

TEST(ThetaOracle, MatchesPowerMapEverywhere) {
  for (const FiniteGroup& g : small_corpus(24)) {
    for (long long n = 1; n <= 100; ++n) {
      Relation r = relation(g, theta(n));
      ASSERT_EQ(r.columns(), (std::vector<std::string>{"x", "y"}));
      for (int x = 0; x < g.order; ++x) {
        int expect = power(g, x, n);
        for (int y = 0; y < g.order; ++y) {
          ASSERT_EQ(r.contains({x, y}), y == expect)
              << "theta(" << n << ") wrong at x=" << x << " y=" << y
              << " in group of order " << g.order;
        }
      }
    }
  }
}

TEST(ThetaOracle, NaiveEngineAgreesOnSmallInstances) {
  FiniteGroup g = cyclic_group(6);
  for (long long n : {1, 2, 3, 7, 12}) {
    FormulaPtr f = theta(n);
    for (int x = 0; x < g.order; ++x) {
      for (int y = 0; y < g.order; ++y) {
        EXPECT_EQ(eval(g, f, {{"x", x}, {"y", y}}), power(g, x, n) == y);
      }
    }
  }
}

TEST(PiOracle, MatchesSubgroupClosureForPairs) {
  for (const FiniteGroup& g : small_corpus(24)) {
    Relation r = relation(g, pi(2, g.order));
    ASSERT_EQ(r.columns(), (std::vector<std::string>{"g", "x1", "x2"}));
    for (int a = 0; a < g.order; ++a) {
      for (int b = a; b < g.order; ++b) {
        Subset closure = subgroup_closure(g, std::vector<int>{a, b}).subgroup;
        for (int c = 0; c < g.order; ++c) {
          ASSERT_EQ(r.contains({c, a, b}), closure.contains(c))
              << "pi mismatch at <" << a << "," << b << "> element " << c
              << " in group of order " << g.order;
        }
      }
    }
  }
}

TEST(PiOracle, MatchesSubgroupClosureForSingleGenerators) {
  for (const FiniteGroup& g : small_corpus(24)) {
    Relation r = relation(g, pi(1, g.order));
    ASSERT_EQ(r.columns(), (std::vector<std::string>{"g", "x1"}));
    for (int a = 0; a < g.order; ++a) {
      Subset closure = subgroup_closure(g, std::vector<int>{a}).subgroup;
      for (int c = 0; c < g.order; ++c) {
        ASSERT_EQ(r.contains({c, a}), closure.contains(c));
      }
    }
  }
}

// delta(i, m) holds iff the subject is a product of at most 2^i parameters;
// the oracle recomputes that set by single-step closure, a different
// algorithm than the engine's product-set doubling.
TEST(DeltaOracle, BoundedProductSemantics) {
  std::vector<FiniteGroup> groups;
  groups.push_back(cyclic_group(12));
  groups.push_back(dihedral_group(4));
  groups.push_back(symmetric_group(3));
  for (const FiniteGroup& g : groups) {
    for (int i = 0; i <= 4; ++i) {
      Relation r = relation(g, delta(i, 1));
      long long budget_len = 1LL << i;
      for (int x1 = 0; x1 < g.order; ++x1) {
        std::set<int> reach{FiniteGroup::identity, x1};
        for (long long step = 1; step < budget_len; ++step) {
          std::set<int> next = reach;
          for (int e : reach) next.insert(g.op(e, x1));
          reach = next;
        }
        for (int c = 0; c < g.order; ++c) {
          ASSERT_EQ(r.contains({c, x1}), reach.count(c) > 0)
              << "delta(" << i << ") mismatch at x1=" << x1 << " c=" << c;
        }
      }
    }
  }
}

// --- grounded sentence evaluation -------------------------------------------------

TEST(GroundedEval, AbelianSentenceForZ8HoldsWithOrderEightWitness) {
  FiniteGroup z8 = cyclic_group(8);
  FamilySentence s = sentence_abelian({8});
  GroundedResult r = eval_sentence_grounded(z8, s.formula);
  ASSERT_TRUE(r.satisfied);
  ASSERT_EQ(r.witness.size(), 1u);
  EXPECT_EQ(element_order(z8, r.witness[0].second), 8);
  EXPECT_EQ(r.stats.mode, "grounded");

  // The naive engine agrees on this small instance.
  EXPECT_TRUE(eval(z8, s.formula, {}, {.force = true}));
}

TEST(GroundedEval, AbelianSentenceForZ8FailsOnDihedral4) {
  FiniteGroup d4 = dihedral_group(4);
  FamilySentence s = sentence_abelian({8});
  GroundedResult r = eval_sentence_grounded(d4, s.formula);
  EXPECT_FALSE(r.satisfied);
  EXPECT_TRUE(r.witness.empty());
  EXPECT_FALSE(eval(d4, s.formula, {}, {.force = true}));
}

TEST(GroundedEval, TrivialExistentialPicksIdentityWitness) {
  for (const FiniteGroup& g :
       {cyclic_group(1), cyclic_group(7), symmetric_group(3)}) {
    GroundedResult r = eval_sentence_grounded(g, parse("(ex a (= a a))"));
    ASSERT_TRUE(r.satisfied);
    ASSERT_EQ(r.witness.size(), 1u);
    EXPECT_EQ(r.witness[0], (std::pair<std::string, int>{"a", 0}));
  }
}

TEST(GroundedEval, WitnessIsLexicographicallyLeast) {
  FiniteGroup z4 = cyclic_group(4);
  FormulaPtr f = parse("(ex a (ex b (and (= (* a b) 1) (not (= a 1)))))");
  GroundedResult r = eval_sentence_grounded(z4, f);
  ASSERT_TRUE(r.satisfied);
  ASSERT_EQ(r.witness.size(), 2u);
  EXPECT_EQ(r.witness[0], (std::pair<std::string, int>{"a", 1}));
  EXPECT_EQ(r.witness[1], (std::pair<std::string, int>{"b", 3}));

  GroundedResult again = eval_sentence_grounded(z4, f);
  EXPECT_EQ(again.witness, r.witness);
}

TEST(GroundedEval, UniversalSentenceFallsBackWithoutWitness) {
  FiniteGroup g = cyclic_group(5);
  GroundedResult r = eval_sentence_grounded(g, parse("(all x (= x x))"));
  EXPECT_TRUE(r.satisfied);
  EXPECT_TRUE(r.witness.empty());
  GroundedResult f =
      eval_sentence_grounded(g, parse("(all x (= x 1))"));
  EXPECT_FALSE(f.satisfied);
}

TEST(GroundedEval, OpenFormulaIsRejected) {
  FiniteGroup g = cyclic_group(3);
  EXPECT_THROW(eval_sentence_grounded(g, parse("(= x 1)")), GroupError);
  EXPECT_THROW(eval_sentence_grounded(g, parse("(ex y (= (* x y) 1))")),
               GroupError);
}

TEST(GroundedEval, Cyclic2SentenceSeparatesPowerOfTwoOrders) {
  FamilySentence s2 = sentence_cyclic2(2);  // targets order 4
  EXPECT_TRUE(eval_sentence_grounded(cyclic_group(4), s2.formula).satisfied);
  EXPECT_FALSE(eval_sentence_grounded(cyclic_group(6), s2.formula).satisfied);
  EXPECT_FALSE(eval_sentence_grounded(abelian_group({2, 2}), s2.formula).satisfied);
  EXPECT_TRUE(eval(cyclic_group(4), s2.formula, {}, {.force = true}));
  EXPECT_FALSE(eval(cyclic_group(6), s2.formula, {}, {.force = true}));

  FamilySentence s3 = sentence_cyclic2(3);  // targets order 8
  EXPECT_TRUE(eval_sentence_grounded(cyclic_group(8), s3.formula).satisfied);
  EXPECT_FALSE(eval_sentence_grounded(cyclic_group(8 + 8), s3.formula).satisfied);
  EXPECT_FALSE(eval_sentence_grounded(dihedral_group(4), s3.formula).satisfied);
}

TEST(GroundedEval, Ut3SentenceAcceptsItsGroupAndRejectsOrderPeers) {
  FamilySentence s = sentence_ut3(2);
  EXPECT_TRUE(eval_sentence_grounded(ut3_group(2), s.formula).satisfied);
  // ut3 over the two-element field is the dihedral group of order 8.
  EXPECT_TRUE(eval_sentence_grounded(dihedral_group(4), s.formula).satisfied);
  EXPECT_FALSE(eval_sentence_grounded(quaternion_group(), s.formula).satisfied);
  EXPECT_FALSE(eval_sentence_grounded(cyclic_group(8), s.formula).satisfied);
  EXPECT_FALSE(
      eval_sentence_grounded(abelian_group({2, 2, 2}), s.formula).satisfied);
}

TEST(GroundedEval, Ut3SentenceOrderTwentySevenRunsUnderDefaultBudget) {
  FamilySentence s = sentence_ut3(3);
  FiniteGroup g = ut3_group(3);
  GroundedResult r = eval_sentence_grounded(g, s.formula);
  EXPECT_TRUE(r.satisfied);
  ASSERT_EQ(r.witness.size(), 2u);
  EXPECT_FALSE(eval_sentence_grounded(cyclic_group(27), s.formula).satisfied);
  EXPECT_FALSE(
      eval_sentence_grounded(abelian_group({3, 3, 3}), s.formula).satisfied);
}

// --- cost estimates and budgets -----------------------------------------------------

TEST(CostEstimate, ClosedQuantifierFreeIsConstant) {
  FiniteGroup g = cyclic_group(8);
  EXPECT_LT(cost_estimate(g, parse("(= 1 1)"), EvalMode::kNaive), 10.0);
  EXPECT_LT(cost_estimate(g, parse("(= (* 1 1) 1)"), EvalMode::kNaive), 10.0);
}

TEST(CostEstimate, TwoUniversalQuantifiersScaleQuadratically) {
  FiniteGroup g = cyclic_group(8);
  FormulaPtr f = parse("(all x (all y (= (* x y) (* y x))))");
  double est = cost_estimate(g, f, EvalMode::kNaive);
  EXPECT_GE(est, 64.0);
  EXPECT_LE(est, 64.0 * 3);
  EXPECT_GT(est, cost_estimate(cyclic_group(4), f, EvalMode::kNaive));
}

TEST(CostEstimate, GroundingMakesUt3OverF3Tractable) {
  FamilySentence s = sentence_ut3(3);
  FiniteGroup g = ut3_group(3);
  EXPECT_LE(cost_estimate(g, s.formula, EvalMode::kGrounded), 1e9);
  EXPECT_GT(cost_estimate(g, s.formula, EvalMode::kNaive), 1e12);
}

TEST(CostEstimate, MonotoneInGroupOrder) {
  FormulaPtr f = parse("(ex a (all x (= (* a x) (* x a))))");
  for (EvalMode mode : {EvalMode::kNaive, EvalMode::kGrounded}) {
    EXPECT_LE(cost_estimate(cyclic_group(4), f, mode),
              cost_estimate(cyclic_group(9), f, mode));
  }
}

TEST(Budget, DefaultIsOneBillionUnlessOverridden) {
  unsetenv("GROUPLOG_BUDGET");
  EXPECT_EQ(default_budget(), 1'000'000'000LL);
  setenv("GROUPLOG_BUDGET", "12345", 1);
  EXPECT_EQ(default_budget(), 12345);
  unsetenv("GROUPLOG_BUDGET");
}

TEST(Budget, ExceededEstimateThrowsUnlessForced) {
  FormulaPtr f = parse(
      "(all a (all b (all c (all d (all e (all f (all g (= a a))))))))");
  EvalOptions tight;
  tight.budget = 1000;
  try {
    eval(symmetric_group(4), f, {}, tight);
    FAIL() << "expected a budget error";
  } catch (const BudgetError& e) {
    EXPECT_GT(e.estimate(), e.budget());
    EXPECT_EQ(e.budget(), 1000.0);
  }
  // force bypasses the gate (on a group small enough to actually evaluate).
  tight.budget = 1;
  try {
    eval(cyclic_group(2), f, {}, tight);
    FAIL() << "expected a budget error";
  } catch (const BudgetError&) {
  }
  tight.force = true;
  EXPECT_TRUE(eval(cyclic_group(2), f, {}, tight));
}

TEST(Budget, RowCapGuardsMaterialization) {
  FiniteGroup g = cyclic_group(8);
  EvalOptions opt;
  opt.row_cap = 10;
  EXPECT_THROW(relation(g, parse("(= (* x y) z)"), opt), GroupError);
}

TEST(ArityCap, ReportsOffendingSubformula) {
  FiniteGroup g = cyclic_group(2);
  FormulaPtr f = parse("(= (* x1 (* x2 x3)) (* x4 x5))");
  try {
    relation(g, f);
    FAIL() << "expected an arity error";
  } catch (const ArityError& e) {
    EXPECT_EQ(e.subformula(), print(f));
    EXPECT_NE(std::string(e.what()).find("arity"), std::string::npos);
  }

  EvalOptions narrow;
  narrow.arity_cap = 2;
  EXPECT_THROW(relation(g, parse("(= (* x y) z)"), narrow), ArityError);
}

// --- engine internals observable through stats ---------------------------------------

TEST(Memoization, IdenticalSubformulasComputeOnce) {
  FiniteGroup g = cyclic_group(8);
  // Both conjuncts canonicalize identically, so the second is a rename of
  // the first: exactly two relations are built (the conjunct and the result).
  FormulaPtr f = parse(
      "(and (ex u (= x (* u u))) (ex v (= y (* v v))))");
  EvalStats st;
  Relation r = relation(g, f, {}, &st);
  EXPECT_EQ(r.arity(), 2);
  EXPECT_EQ(r.size(), 16);  // squares mod 8 are {0,1,4} x {0,1,4}... 4x4
  EXPECT_EQ(st.relations_built, 2);
}

TEST(Memoization, GroundedStatsTrackRelations) {
  FiniteGroup g = cyclic_group(16);
  FamilySentence s = sentence_abelian({16});
  GroundedResult r = eval_sentence_grounded(g, s.formula);
  ASSERT_TRUE(r.satisfied);
  EXPECT_GT(r.stats.relations_built, 0);
  EXPECT_GT(r.stats.nodes_visited, 0);
  EXPECT_GT(r.stats.max_relation_rows, 0);
}

}  // namespace
}  // namespace grouplog
