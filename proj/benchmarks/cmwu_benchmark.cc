// Copyright 2026 The CMWU Authors
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

#include <random>

#include "cmwu/dynamics.h"
#include "cmwu/learning_rules.h"
#include "cmwu/metrics.h"

namespace cmwu {
namespace {

NormalFormGame Random(int n, int m) {
  return GenerateGame({GeneratorKind::kRandomUniform, n, m, 1, ""});
}

StrategyProfile Perturbed(const NormalFormGame& game) {
  std::mt19937_64 rng(2);
  std::vector<MixedStrategy> strategies;
  for (int m : game.action_counts()) {
    std::vector<double> w(m);
    double total = 0.0;
    for (double& p : w) total += (p = 1.0 + (rng() % 100));
    for (double& p : w) p /= total;
    strategies.emplace_back(w);
  }
  return StrategyProfile(strategies);
}

void BM_PayoffVector(benchmark::State& state) {
  const NormalFormGame game = Random(state.range(0), state.range(1));
  const StrategyProfile x = Perturbed(game);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputePayoffVector(game, 0, x));
  }
  state.SetItemsProcessed(state.iterations() * game.num_profiles());
}
BENCHMARK(BM_PayoffVector)
    ->Args({2, 10})
    ->Args({2, 100})
    ->Args({3, 10})
    ->Args({4, 10})
    ->Args({6, 4});

void BM_FixedPointSolve(benchmark::State& state) {
  const NormalFormGame game = Random(state.range(0), state.range(1));
  const auto etas = CommonStepSizes(game, DefaultStepSize(game));
  const StrategyProfile x_t = Perturbed(game);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveCmwuFixedPoint(x_t, game, etas));
  }
}
BENCHMARK(BM_FixedPointSolve)->Args({2, 10})->Args({3, 10})->Args({4, 6});

void BM_CmwuDynamics(benchmark::State& state) {
  const NormalFormGame game = Random(2, state.range(1));
  const int horizon = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunCmwuDynamics(game, horizon));
  }
  state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_CmwuDynamics)
    ->Args({1 << 10, 10})
    ->Args({1 << 14, 10})
    ->Unit(benchmark::kMillisecond);

void BM_CceGap(benchmark::State& state) {
  const NormalFormGame game = Random(3, 5);
  const Trajectory traj = RunCmwuDynamics(game, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(CceGap(game, traj.profiles));
  }
}
BENCHMARK(BM_CceGap)->Arg(1 << 12);

}  // namespace
}  // namespace cmwu

BENCHMARK_MAIN();
