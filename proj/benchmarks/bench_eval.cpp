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

#include <benchmark/benchmark.h>

#include "grouplog/ast.hpp"
#include "grouplog/eval.hpp"
#include "grouplog/gen.hpp"
#include "grouplog/group.hpp"

namespace {

using grouplog::FiniteGroup;
using grouplog::FormulaPtr;

void BM_NaiveCommutativityCheck(benchmark::State& state) {
  FiniteGroup g = grouplog::cyclic_group(state.range(0));
  FormulaPtr f =
      grouplog::parse_formula("(all x (all y (= (* x y) (* y x))))");
  for (auto _ : state) {
    benchmark::DoNotOptimize(grouplog::eval(g, f, {}));
  }
}
BENCHMARK(BM_NaiveCommutativityCheck)->Arg(8)->Arg(32)->Arg(128);

void BM_RelationTheta(benchmark::State& state) {
  FiniteGroup g = grouplog::symmetric_group(4);
  FormulaPtr f = grouplog::theta(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(grouplog::relation(g, f));
  }
}
BENCHMARK(BM_RelationTheta)->Arg(12)->Arg(1000)->Arg(1000000);

void BM_GroundedCyclic2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FiniteGroup g = grouplog::cyclic_group(1LL << n);
  FormulaPtr f = grouplog::sentence_cyclic2(n).formula;
  for (auto _ : state) {
    benchmark::DoNotOptimize(grouplog::eval_sentence_grounded(g, f));
  }
}
BENCHMARK(BM_GroundedCyclic2)->Arg(3)->Arg(5)->Arg(7);

void BM_GroundedAbelian(benchmark::State& state) {
  FiniteGroup g = grouplog::abelian_group({2, 4});
  FormulaPtr f = grouplog::sentence_abelian({2, 4}).formula;
  for (auto _ : state) {
    benchmark::DoNotOptimize(grouplog::eval_sentence_grounded(g, f));
  }
}
BENCHMARK(BM_GroundedAbelian);

void BM_GroundedUnitriangular(benchmark::State& state) {
  const long long n = state.range(0);
  FiniteGroup g = grouplog::ut3_group(n);
  FormulaPtr f = grouplog::sentence_ut3(n).formula;
  for (auto _ : state) {
    benchmark::DoNotOptimize(grouplog::eval_sentence_grounded(g, f));
  }
}
BENCHMARK(BM_GroundedUnitriangular)->Arg(2)->Arg(3);

// Rejection path: a sentence evaluated over a non-isomorphic group of the
// same order, as every uniqueness-suite cell does.
void BM_GroundedRejection(benchmark::State& state) {
  FiniteGroup g = grouplog::dihedral_group(4);
  FormulaPtr f = grouplog::sentence_cyclic2(3).formula;
  for (auto _ : state) {
    benchmark::DoNotOptimize(grouplog::eval_sentence_grounded(g, f));
  }
}
BENCHMARK(BM_GroundedRejection);

void BM_CostEstimate(benchmark::State& state) {
  FiniteGroup g = grouplog::ut3_group(3);
  FormulaPtr f = grouplog::sentence_ut3(3).formula;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        grouplog::cost_estimate(g, f, grouplog::EvalMode::kGrounded));
  }
}
BENCHMARK(BM_CostEstimate);

}  // namespace

BENCHMARK_MAIN();
