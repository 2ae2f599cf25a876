// Copyright 2026 The netbargain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <variant>

#include "netbargain/balanced.h"
#include "netbargain/generate.h"
#include "netbargain/matching.h"
#include "netbargain/nucleolus.h"
#include "netbargain/oracle.h"
#include "netbargain/stable.h"

namespace netbargain {
namespace {

Instance Constrained(int num_a, int num_b, std::uint64_t seed) {
  GenerateParams p;
  p.mode = Mode::kConstrainedBipartite;
  p.num_a = num_a;
  p.num_b = num_b;
  p.capacity_max = 3;
  p.density = Rational(1, 2);
  p.seed = seed;
  return Generate(p);
}

void BM_MatchingLp(benchmark::State& state) {
  const Instance inst = Constrained(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BmatchingLp(inst, inst.grand()));
  }
  state.counters["edges"] = static_cast<double>(inst.num_edges());
}
BENCHMARK(BM_MatchingLp)->Arg(4)->Arg(8)->Arg(16);

void BM_GameTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = Constrained(n / 2, n - n / 2, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::BuildGameTable(inst));
  }
}
BENCHMARK(BM_GameTable)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_NucleolusPruned(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = Constrained(n / 2, n - n / 2, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(NucleolusPruned(inst));
  }
}
BENCHMARK(BM_NucleolusPruned)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_NucleolusBruteforce(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = Constrained(n / 2, n - n / 2, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(NucleolusBruteforce(inst));
  }
}
BENCHMARK(BM_NucleolusBruteforce)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_BalanceDynamics(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = Constrained(n / 2, n - n / 2, 17);
  const StableResult found = FindStable(inst);
  const Outcome start = std::get<Outcome>(found);
  DynamicsOptions options;
  options.tol = Rational(1, 1000000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BalanceDynamics(inst, start, options));
  }
}
BENCHMARK(BM_BalanceDynamics)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace netbargain

BENCHMARK_MAIN();
