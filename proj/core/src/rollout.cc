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

#include "bbeq/rollout.h"

#include <array>
#include <stdexcept>

namespace bbeq {
namespace {

struct Scratch {
  std::vector<double> state, obs, noise, actions_a, actions_b;
};

Scratch& GetScratch() {
  thread_local Scratch scratch;
  return scratch;
}

void CheckProfile(const Game& game, const StrategyProfile& profile, int player,
                  std::size_t own_size) {
  if (static_cast<int>(profile.size()) != game.NumPlayers()) {
    throw std::invalid_argument("profile size does not match player count");
  }
  if (player < 0 || player >= game.NumPlayers()) {
    throw std::out_of_range("player index out of range");
  }
  if (own_size != profile[player].params.size()) {
    throw std::invalid_argument("parameter override has wrong length");
  }
}

// Runs `episodes` episodes, evaluating player `player` under each of
// `n_variants` parameter vectors; sums[v] accumulates that player's payoff.
template <std::size_t kVariants>
void RunEpisodes(const Game& game, const StrategyProfile& profile, int player,
                 const std::array<std::span<const double>, kVariants>& variants,
                 int episodes, RngStream& rng,
                 std::array<double, kVariants>& sums) {
  const int n = game.NumPlayers(), dim = game.ActionDim();
  Scratch& s = GetScratch();
  s.state.resize(game.StateDim());
  std::array<std::vector<double>*, 2> joint = {&s.actions_a, &s.actions_b};
  for (auto* j : joint) j->resize(static_cast<std::size_t>(n) * dim);
  std::array<double, Game::kMaxPlayers> payoffs{};
  sums.fill(0.0);

  for (int e = 0; e < episodes; ++e) {
    game.SampleState(rng, s.state);
    for (int i = 0; i < n; ++i) {
      const PlayerPolicy& pol = profile[i];
      s.obs.resize(pol.arch.obs_dim);
      s.noise.resize(pol.arch.noise_dim);
      game.Observe(s.state, i, s.obs);
      rng.StandardNormal(s.noise);
      if (i == player) {
        for (std::size_t v = 0; v < kVariants; ++v) {
          Forward(pol.arch, variants[v], s.obs, s.noise,
                  std::span<double>(*joint[v]).subspan(i * dim, dim));
        }
      } else {
        auto out = std::span<double>(*joint[0]).subspan(i * dim, dim);
        Forward(pol.arch, pol.params, s.obs, s.noise, out);
        for (std::size_t v = 1; v < kVariants; ++v) {
          std::copy(out.begin(), out.end(), joint[v]->begin() + i * dim);
        }
      }
    }
    const uint64_t tie_id = rng.NextU64();
    for (std::size_t v = 0; v < kVariants; ++v) {
      RngStream tie_rng(rng.seed(), tie_id);
      game.Payoff(s.state, *joint[v], tie_rng,
                  std::span<double>(payoffs.data(), n));
      sums[v] += payoffs[player];
    }
  }
}

}  // namespace

double PlayerUtility(const Game& game, const StrategyProfile& profile,
                     int player, std::span<const double> own_params,
                     int episodes, RngStream& rng) {
  CheckProfile(game, profile, player, own_params.size());
  if (episodes < 1) throw std::invalid_argument("episodes must be >= 1");
  std::array<double, 1> sums;
  RunEpisodes<1>(game, profile, player, {own_params}, episodes, rng, sums);
  return sums[0] / episodes;
}

std::pair<double, double> PairedPlayerUtility(const Game& game,
                                              const StrategyProfile& profile,
                                              int player,
                                              std::span<const double> params_a,
                                              std::span<const double> params_b,
                                              int episodes, RngStream& rng) {
  CheckProfile(game, profile, player, params_a.size());
  CheckProfile(game, profile, player, params_b.size());
  if (episodes < 1) throw std::invalid_argument("episodes must be >= 1");
  std::array<double, 2> sums;
  RunEpisodes<2>(game, profile, player, {params_a, params_b}, episodes, rng,
                 sums);
  return {sums[0] / episodes, sums[1] / episodes};
}

void SampleJointAction(const Game& game, const StrategySet& strategies,
                       std::span<const double> state, RngStream& rng,
                       std::span<double> actions) {
  const int n = game.NumPlayers(), dim = game.ActionDim();
  if (static_cast<int>(strategies.size()) != n) {
    throw std::invalid_argument("strategy count does not match player count");
  }
  std::vector<double> obs;
  for (int i = 0; i < n; ++i) {
    obs.resize(game.ObsDim(i));
    game.Observe(state, i, obs);
    strategies[i]->Act(obs, rng, actions.subspan(i * dim, dim));
  }
}

}  // namespace bbeq
