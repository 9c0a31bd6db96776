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

#ifndef BBEQ_ROLLOUT_H_
#define BBEQ_ROLLOUT_H_

#include <span>
#include <utility>
#include <vector>

#include "bbeq/games.h"
#include "bbeq/policy.h"
#include "bbeq/prng.h"
#include "bbeq/strategy.h"

namespace bbeq {

// Episode draw order, shared by every function below so that evaluations
// driven by copies of one stream see identical randomness:
//   1. state ~ mu
//   2. for each player in index order: observe, draw noise, act
//   3. one 64-bit tie id; payoffs use RngStream(rng.seed(), tie id)
// Changing a player's parameters therefore never shifts the random numbers
// consumed by the rest of the episode.

// Mean payoff of `player` over `episodes` episodes in which the player uses
// `own_params` and everybody else uses `profile`.
double PlayerUtility(const Game& game, const StrategyProfile& profile,
                     int player, std::span<const double> own_params,
                     int episodes, RngStream& rng);

// PlayerUtility for two parameter vectors over the same episodes. Returns
// the same pair as two PlayerUtility calls on copies of `rng`, at the cost of
// one opponent rollout per episode.
std::pair<double, double> PairedPlayerUtility(const Game& game,
                                              const StrategyProfile& profile,
                                              int player,
                                              std::span<const double> params_a,
                                              std::span<const double> params_b,
                                              int episodes, RngStream& rng);

// Samples a joint action for `state` (step 2 above, for arbitrary strategies).
void SampleJointAction(const Game& game, const StrategySet& strategies,
                       std::span<const double> state, RngStream& rng,
                       std::span<double> actions);

}  // namespace bbeq

#endif  // BBEQ_ROLLOUT_H_
