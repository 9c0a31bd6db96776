// Copyright 2026 The bbeq Authors.
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

#include "bbeq/analytic.h"
#include "bbeq/distributed.h"
#include "bbeq/estimator.h"
#include "bbeq/eval.h"
#include "bbeq/games.h"
#include "bbeq/policy.h"
#include "bbeq/rollout.h"
#include "bbeq/trainer.h"

namespace bbeq {
namespace {

TrainingState HeState(const Game& game, int noise_dim) {
  ExperimentConfig cfg;
  cfg.game = game.config();
  cfg.noise_dim = noise_dim;
  return InitialTrainingState(InitialProfile(game, cfg), 1);
}

void BM_Forward(benchmark::State& state) {
  PolicyArchitecture arch;
  arch.obs_dim = 1;
  arch.noise_dim = static_cast<int>(state.range(0));
  arch.action_dim = 3;
  arch.head = OutputHead::SoftmaxConstant(1.0);
  RngStream rng(1, 0);
  const ParamVector params = HeInit(arch, rng);
  const std::vector<double> obs = {0.5};
  std::vector<double> noise = rng.StandardNormal(arch.noise_dim), action(3);
  for (auto _ : state) {
    Forward(arch, params, obs, noise, action);
    benchmark::DoNotOptimize(action.data());
  }
}
BENCHMARK(BM_Forward)->Arg(0)->Arg(2)->Arg(8);

void BM_Payoff(benchmark::State& state) {
  const auto kind = static_cast<AnalyticKind>(state.range(0));
  const auto game = MakeGame(CanonicalGameConfig(kind));
  RngStream rng(2, 0);
  const std::vector<double> omega = game->SampleState(rng);
  std::vector<double> actions(game->NumPlayers() * game->ActionDim());
  for (double& a : actions) a = rng.NextUniform01();
  std::vector<double> payoffs(game->NumPlayers());
  for (auto _ : state) {
    game->Payoff(omega, actions, rng, payoffs);
    benchmark::DoNotOptimize(payoffs.data());
  }
  state.SetLabel(game->Name());
}
BENCHMARK(BM_Payoff)
    ->Arg(static_cast<int>(AnalyticKind::kKthPriceIpv))
    ->Arg(static_cast<int>(AnalyticKind::kBlotto))
    ->Arg(static_cast<int>(AnalyticKind::kChopstick));

void BM_WorkerDelta(benchmark::State& state) {
  const auto game = MakeGame(CanonicalGameConfig(AnalyticKind::kBlotto));
  const TrainingState s = HeState(*game, 2);
  EstimatorConfig est;
  est.episodes_per_eval = static_cast<int>(state.range(0));
  std::vector<uint64_t> workers = {0};
  uint64_t t = 0;
  for (auto _ : state) {
    auto a = Assign(t, workers, game->NumPlayers(), est.sigma);
    DrawNoise(s.profile, est.smoothing, s.seed, t, 0, a);
    benchmark::DoNotOptimize(WorkerDelta(*game, s.profile, a[0], est, s.seed, t, 0));
    ++t;
  }
}
BENCHMARK(BM_WorkerDelta)->Arg(1)->Arg(8);

void BM_PoolIteration(benchmark::State& state) {
  const auto game = MakeGame(CanonicalGameConfig(AnalyticKind::kKthPriceIpv));
  DynamicsConfig dyn;
  dyn.alpha = 1e-4;
  const int workers = static_cast<int>(state.range(0));
  WorkerPool pool(*game, HeState(*game, 1), EstimatorConfig{}, dyn, workers,
                  static_cast<int>(state.range(1)));
  for (auto _ : state) pool.Step();
  state.SetItemsProcessed(state.iterations() * workers);
}
BENCHMARK(BM_PoolIteration)->Args({2, 1})->Args({8, 1})->Args({8, 8});

void BM_NashConv(benchmark::State& state) {
  const auto kind = static_cast<AnalyticKind>(state.range(0));
  const auto game = MakeGame(CanonicalGameConfig(kind));
  const StrategySet profile = MakeAnalyticProfile(kind, *game);
  EvalConfig cfg;
  uint64_t stream = 0;
  for (auto _ : state) {
    RngStream rng(3, stream++);
    benchmark::DoNotOptimize(EstimateNashConv(*game, profile, cfg, rng).nashconv);
  }
  state.SetLabel(game->Name());
}
BENCHMARK(BM_NashConv)
    ->Arg(static_cast<int>(AnalyticKind::kKthPriceIpv))
    ->Arg(static_cast<int>(AnalyticKind::kBlotto))
    ->Arg(static_cast<int>(AnalyticKind::kChopstick))
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace bbeq

BENCHMARK_MAIN();
