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

#include "grouplog/group.hpp"
#include "grouplog/harness.hpp"
#include "grouplog/iso.hpp"

namespace {

using grouplog::FiniteGroup;

void BM_CyclicConstruction(benchmark::State& state) {
  const long long n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(grouplog::cyclic_group(n));
  }
}
BENCHMARK(BM_CyclicConstruction)->Arg(64)->Arg(256)->Arg(1024);

void BM_SymmetricConstruction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(grouplog::symmetric_group(n));
  }
}
BENCHMARK(BM_SymmetricConstruction)->Arg(4)->Arg(5)->Arg(6);

void BM_SubgroupClosure(benchmark::State& state) {
  FiniteGroup g = grouplog::symmetric_group(static_cast<int>(state.range(0)));
  std::vector<int> gens = grouplog::minimal_generating_set(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(grouplog::subgroup_closure(g, gens));
  }
}
BENCHMARK(BM_SubgroupClosure)->Arg(4)->Arg(5)->Arg(6);

void BM_OrderProfile(benchmark::State& state) {
  FiniteGroup g = grouplog::alternating_group(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(grouplog::order_profile(g));
  }
}
BENCHMARK(BM_OrderProfile);

void BM_MinimalGeneratingSet(benchmark::State& state) {
  FiniteGroup g = grouplog::ut3_group(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(grouplog::minimal_generating_set(g));
  }
}
BENCHMARK(BM_MinimalGeneratingSet)->Arg(2)->Arg(3)->Arg(4);

void BM_IsoReflexive(benchmark::State& state) {
  FiniteGroup g = grouplog::ut3_group(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(grouplog::isomorphic(g, g));
  }
}
BENCHMARK(BM_IsoReflexive)->Arg(2)->Arg(3)->Arg(4);

// Same order profile on both sides, so the oracle has to run the
// backtracking search to exhaustion before answering no.
void BM_IsoSearchExhaust(benchmark::State& state) {
  FiniteGroup a = grouplog::ut3_group(3);
  FiniteGroup b = grouplog::abelian_group({3, 3, 3});
  for (auto _ : state) {
    benchmark::DoNotOptimize(grouplog::isomorphic(a, b));
  }
}
BENCHMARK(BM_IsoSearchExhaust);

void BM_CorpusBuild(benchmark::State& state) {
  const int max_order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(grouplog::corpus_build(max_order));
  }
}
BENCHMARK(BM_CorpusBuild)->Arg(8)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
