// Copyright 2026 The stot Authors
//
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

#include "stot/analysis.hpp"
#include "stot/bayes.hpp"
#include "stot/random.hpp"
#include "stot/state_over_time.hpp"

namespace {

using namespace stot;

void BM_StateOverTime(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const DensityOperator rho = random_state(d, d, 1);
  const QuantumChannel e = random_channel(d, d, d, 2);
  for (auto _ : state) benchmark::DoNotOptimize(state_over_time(rho, e));
}
BENCHMARK(BM_StateOverTime)->DenseRange(2, 8, 2);

void BM_MargenauHill(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const TPSMScenario s(random_state(d, d, 1), random_pvm(d, d, 2), random_channel(d, d, d, 3),
                       random_pvm(d, d, 4));
  for (auto _ : state) benchmark::DoNotOptimize(mh_distribution(s));
}
BENCHMARK(BM_MargenauHill)->DenseRange(2, 8, 2);

void BM_BayesianInverse(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const DensityOperator rho = random_state(d, d, 1);
  const QuantumChannel e = random_channel(d, d, d, 2);
  for (auto _ : state) benchmark::DoNotOptimize(bayesian_inverse(e, rho));
}
BENCHMARK(BM_BayesianInverse)->DenseRange(2, 6, 2);

void BM_Reconstruct(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const ProjectorOracle oracle = mh_oracle(random_state(d, d, 1), random_channel(d, d, d, 2));
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_from_mh(oracle, {d, d}));
}
BENCHMARK(BM_Reconstruct)->DenseRange(2, 4, 1);

void BM_BornExistence(benchmark::State& state) {
  const DensityOperator rho = random_state(3, 2, 1);
  const QuantumChannel e = random_channel(3, 3, 2, 2);
  const SearchBudget budget = SearchBudget::from_total(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(born_existence_check(rho, e, budget));
}
BENCHMARK(BM_BornExistence)->Arg(0)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
