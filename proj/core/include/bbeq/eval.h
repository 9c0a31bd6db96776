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

#ifndef BBEQ_EVAL_H_
#define BBEQ_EVAL_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "bbeq/games.h"
#include "bbeq/prng.h"
#include "bbeq/strategy.h"

namespace bbeq {

struct EvalConfig {
  int n_obs_samples = 100;
  int n_state_samples = 300;
  // Points per dimension for one-dimensional action grids.
  int grid_resolution = 100;
  // Blotto grid: compositions of this integer into J parts (231 for J = 3).
  int simplex_divisions = 20;
  // Points per dimension for multi-item box grids (chopsticks: 20^3).
  int multi_item_resolution = 20;
  // Joint-action draws per sampled state.
  int n_opponent_action_samples = 1;

  void Validate() const;
  bool operator==(const EvalConfig&) const = default;
};

struct PlayerEval {
  double utility = 0.0;
  double best_response = 0.0;
  double gap = 0.0;
  // Standard error of `utility` over the pooled samples.
  double utility_stderr = 0.0;
};

struct EvalReport {
  std::vector<PlayerEval> players;
  double nashconv = 0.0;
  EvalConfig config;
  uint64_t seed = 0;
  uint64_t stream_id = 0;
  std::size_t grid_points = 0;  // candidates per observation (player 0)
};

// `resolution` equally spaced points on [lo, hi] in each of `dim`
// coordinates, flattened (the last coordinate varies fastest).
std::vector<double> BoxGrid(int dim, int resolution, double lo, double hi);
// Every composition of `divisions` into `dim` nonnegative ordered parts,
// scaled to sum to `budget`.
std::vector<double> SimplexGrid(int dim, int divisions, double budget);

// Candidate actions for `player` after observing `observation`.
std::vector<double> ActionGrid(const Game& game, int player,
                               std::span<const double> observation,
                               const EvalConfig& cfg);

// Sampled NashConv. Observations that coincide exactly are pooled into one
// group whose best response is taken over all of its state samples, which
// is what the definition asks for when a player has nothing to condition
// on. u_i is measured on the same samples as b_i, with the player's own
// action drawn from its strategy.
EvalReport EstimateNashConv(const Game& game, const StrategySet& strategies,
                            const EvalConfig& cfg, RngStream& rng);
EvalReport EstimateNashConv(const Game& game, const StrategyProfile& profile,
                            const EvalConfig& cfg, RngStream& rng);

std::vector<double> ExpectedUtility(const Game& game,
                                    const StrategySet& strategies,
                                    int n_episodes, RngStream& rng);
std::vector<double> ExpectedUtility(const Game& game,
                                    const StrategyProfile& profile,
                                    int n_episodes, RngStream& rng);

struct BlottoBestResponse {
  std::vector<double> allocation;
  double value = 0.0;
};

// Exact optimum of the best-response program against K sampled opposing
// allocations: maximize sum_j v_j (1/K) #{k : a_j >= h[k][j]} subject to
// a >= 0, sum_j a_j = budget. `h[k][j]` is the highest opposing bid on
// battlefield j in batch k. Enumerates per-battlefield thresholds.
BlottoBestResponse BlottoBestResponseEnum(
    const std::vector<std::vector<double>>& h, double budget,
    const std::vector<double>& values);

// Shortest decimal text that parses back to the same double.
std::string FormatReal(double v);

// Columns shared by every metrics CSV.
const std::vector<std::string>& MetricsColumns();
void WriteMetricsHeader(std::ostream& out);
void WriteMetricsRows(std::ostream& out, const std::string& run_id, int epoch,
                      const EvalReport& report, double wall_ms, uint64_t seed);
std::string EvalReportJson(const EvalReport& report);

}  // namespace bbeq

#endif  // BBEQ_EVAL_H_
