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

#include "bbeq/eval.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "bbeq/rollout.h"
#include "json_io.h"

namespace bbeq {
namespace {

void Compositions(int dim, int remaining, std::vector<int>& prefix,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == dim - 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    prefix.push_back(k);
    Compositions(dim, remaining - k, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

void EvalConfig::Validate() const {
  if (n_obs_samples < 1 || n_state_samples < 1 || grid_resolution < 1 ||
      simplex_divisions < 1 || multi_item_resolution < 1 ||
      n_opponent_action_samples < 1) {
    throw std::invalid_argument("evaluation counts must be >= 1");
  }
}

std::vector<double> BoxGrid(int dim, int resolution, double lo, double hi) {
  if (dim < 1 || resolution < 1) throw std::invalid_argument("BoxGrid: empty grid");
  std::vector<double> axis(resolution);
  for (int k = 0; k < resolution; ++k) {
    axis[k] = resolution == 1 ? lo
                              : lo + (hi - lo) * k / (resolution - 1);
  }
  if (resolution > 1) axis.back() = hi;
  std::size_t count = 1;
  for (int d = 0; d < dim; ++d) count *= resolution;
  std::vector<double> out(count * dim);
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t rest = c;
    for (int d = dim - 1; d >= 0; --d) {
      out[c * dim + d] = axis[rest % resolution];
      rest /= resolution;
    }
  }
  return out;
}

std::vector<double> SimplexGrid(int dim, int divisions, double budget) {
  if (dim < 1 || divisions < 1) {
    throw std::invalid_argument("SimplexGrid: empty grid");
  }
  std::vector<std::vector<int>> parts;
  std::vector<int> prefix;
  Compositions(dim, divisions, prefix, parts);
  std::vector<double> out;
  out.reserve(parts.size() * dim);
  for (const auto& p : parts) {
    for (int v : p) out.push_back(budget * v / divisions);
  }
  return out;
}

std::vector<double> ActionGrid(const Game& game, int player,
                               std::span<const double> observation,
                               const EvalConfig& cfg) {
  const ActionSpace space = game.GetActionSpace(player);
  if (space.kind == ActionSpace::Kind::kSimplex) {
    return SimplexGrid(space.dim, cfg.simplex_divisions,
                       space.BudgetFor(observation));
  }
  const int res = space.dim == 1 ? cfg.grid_resolution : cfg.multi_item_resolution;
  return BoxGrid(space.dim, res, space.lower, space.upper);
}

EvalReport EstimateNashConv(const Game& game, const StrategySet& strategies,
                            const EvalConfig& cfg, RngStream& rng) {
  cfg.Validate();
  const int n = game.NumPlayers(), dim = game.ActionDim();
  const int state_dim = game.StateDim();
  const std::size_t joint_dim = static_cast<std::size_t>(n) * dim;
  if (static_cast<int>(strategies.size()) != n) {
    throw std::invalid_argument("strategy count does not match player count");
  }

  EvalReport report;
  report.config = cfg;
  report.seed = rng.seed();
  report.stream_id = rng.stream_id();
  report.players.resize(n);

  std::vector<double> state(state_dim), states, actions, sums, payoff(n);
  for (int i = 0; i < n; ++i) {
    RngStream prng = rng.Split(static_cast<uint64_t>(i));

    // Observation groups in order of first appearance.
    std::vector<std::vector<double>> group_obs;
    std::vector<int> group_count;
    std::map<std::vector<double>, std::size_t> index;
    for (int k = 0; k < cfg.n_obs_samples; ++k) {
      game.SampleState(prng, state);
      std::vector<double> obs = game.Observe(state, i);
      auto [it, fresh] = index.emplace(obs, group_obs.size());
      if (fresh) {
        group_obs.push_back(std::move(obs));
        group_count.push_back(0);
      }
      ++group_count[it->second];
    }

    double best_total = 0.0, own_total = 0.0;
    double own_sq = 0.0;
    std::size_t own_n = 0;
    for (std::size_t g = 0; g < group_obs.size(); ++g) {
      const std::vector<double>& obs = group_obs[g];
      const std::size_t n_samples = static_cast<std::size_t>(group_count[g]) *
                                    cfg.n_state_samples *
                                    cfg.n_opponent_action_samples;
      states.resize(n_samples * state_dim);
      actions.resize(n_samples * joint_dim);
      std::size_t s = 0;
      for (int k = 0; k < group_count[g] * cfg.n_state_samples; ++k) {
        game.SampleStateGivenObs(i, obs, prng, state);
        for (int r = 0; r < cfg.n_opponent_action_samples; ++r, ++s) {
          std::copy(state.begin(), state.end(), states.begin() + s * state_dim);
          SampleJointAction(game, strategies, state, prng,
                            std::span<double>(actions).subspan(s * joint_dim,
                                                               joint_dim));
        }
      }
      const uint64_t tie_seed = prng.NextU64();

      // u_i on the same samples, own action from the strategy.
      double own_sum = 0.0;
      for (std::size_t t = 0; t < n_samples; ++t) {
        RngStream tie_rng(tie_seed, t);
        game.Payoff(std::span<const double>(states).subspan(t * state_dim, state_dim),
                    std::span<const double>(actions).subspan(t * joint_dim, joint_dim),
                    tie_rng, payoff);
        own_sum += payoff[i];
        own_sq += payoff[i] * payoff[i];
      }
      own_n += n_samples;

      const std::vector<double> grid = ActionGrid(game, i, obs, cfg);
      if (i == 0 && g == 0) report.grid_points = grid.size() / dim;
      sums.assign(grid.size() / dim, 0.0);
      game.SumPayoffsForCandidates(i, states, actions, tie_seed, grid, sums);
      const double best = *std::max_element(sums.begin(), sums.end());

      const double w = static_cast<double>(group_count[g]) / cfg.n_obs_samples;
      best_total += w * best / n_samples;
      own_total += w * own_sum / n_samples;
    }
    PlayerEval& pe = report.players[i];
    pe.utility = own_total;
    pe.best_response = best_total;
    pe.gap = best_total - own_total;
    if (own_n > 1) {
      const double mean = own_total;
      const double var =
          std::max(0.0, (own_sq / own_n - mean * mean) * own_n / (own_n - 1));
      pe.utility_stderr = std::sqrt(var / own_n);
    }
    report.nashconv += pe.gap;
  }
  return report;
}

EvalReport EstimateNashConv(const Game& game, const StrategyProfile& profile,
                            const EvalConfig& cfg, RngStream& rng) {
  return EstimateNashConv(game, MakeStrategySet(profile), cfg, rng);
}

std::vector<double> ExpectedUtility(const Game& game,
                                    const StrategySet& strategies,
                                    int n_episodes, RngStream& rng) {
  if (n_episodes < 1) throw std::invalid_argument("n_episodes must be >= 1");
  const int n = game.NumPlayers();
  std::vector<double> state(game.StateDim());
  std::vector<double> actions(static_cast<std::size_t>(n) * game.ActionDim());
  std::vector<double> payoff(n), total(n, 0.0);
  for (int e = 0; e < n_episodes; ++e) {
    game.SampleState(rng, state);
    SampleJointAction(game, strategies, state, rng, actions);
    game.Payoff(state, actions, rng, payoff);
    for (int i = 0; i < n; ++i) total[i] += payoff[i];
  }
  for (double& t : total) t /= n_episodes;
  return total;
}

std::vector<double> ExpectedUtility(const Game& game,
                                    const StrategyProfile& profile,
                                    int n_episodes, RngStream& rng) {
  return ExpectedUtility(game, MakeStrategySet(profile), n_episodes, rng);
}

BlottoBestResponse BlottoBestResponseEnum(
    const std::vector<std::vector<double>>& h, double budget,
    const std::vector<double>& values) {
  if (budget < 0.0) throw std::invalid_argument("budget must be >= 0");
  const std::size_t K = h.size(), J = values.size();
  if (K == 0 || J == 0) throw std::invalid_argument("empty best-response instance");
  for (const auto& row : h) {
    if (row.size() != J) throw std::invalid_argument("h has wrong width");
  }

  // thresholds[j]: {0} and the sorted opposing bids; wins[j][t]: batches
  // won on j at threshold t.
  std::vector<std::vector<double>> thresholds(J);
  std::vector<std::vector<int>> wins(J);
  for (std::size_t j = 0; j < J; ++j) {
    std::vector<double> col(K);
    for (std::size_t k = 0; k < K; ++k) col[k] = std::max(0.0, h[k][j]);
    std::sort(col.begin(), col.end());
    thresholds[j].push_back(0.0);
    for (double c : col) {
      if (c > thresholds[j].back()) thresholds[j].push_back(c);
    }
    for (double t : thresholds[j]) {
      wins[j].push_back(static_cast<int>(
          std::upper_bound(col.begin(), col.end(), t) - col.begin()));
    }
  }

  BlottoBestResponse best;
  best.value = -1.0;
  std::vector<std::size_t> pick(J, 0);
  while (true) {
    double cost = 0.0, value = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
      cost += thresholds[j][pick[j]];
      value += values[j] * wins[j][pick[j]];
    }
    value /= static_cast<double>(K);
    if (cost <= budget && value > best.value) {
      best.value = value;
      best.allocation.resize(J);
      for (std::size_t j = 0; j < J; ++j) {
        best.allocation[j] = thresholds[j][pick[j]];
      }
      best.allocation[0] += budget - cost;  // slack never loses a battlefield
    }
    std::size_t j = 0;
    while (j < J && ++pick[j] == thresholds[j].size()) pick[j++] = 0;
    if (j == J) break;
  }
  return best;
}

std::string FormatReal(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("FormatReal failed");
  return std::string(buf, end);
}

const std::vector<std::string>& MetricsColumns() {
  static const std::vector<std::string> columns = {
      "run_id", "epoch",   "player",   "utility", "best_response",
      "gap",    "nashconv", "wall_ms", "seed"};
  return columns;
}

void WriteMetricsHeader(std::ostream& out) {
  const auto& cols = MetricsColumns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    out << (c ? "," : "") << cols[c];
  }
  out << "\n";
}

void WriteMetricsRows(std::ostream& out, const std::string& run_id, int epoch,
                      const EvalReport& report, double wall_ms, uint64_t seed) {
  for (std::size_t i = 0; i < report.players.size(); ++i) {
    const PlayerEval& p = report.players[i];
    out << run_id << "," << epoch << "," << i << "," << FormatReal(p.utility)
        << "," << FormatReal(p.best_response) << "," << FormatReal(p.gap)
        << "," << FormatReal(report.nashconv) << "," << FormatReal(wall_ms)
        << "," << seed << "\n";
  }
}

std::string EvalReportJson(const EvalReport& report) {
  using internal::Json;
  Json j;
  j["nashconv"] = report.nashconv;
  Json players = Json::array();
  for (std::size_t i = 0; i < report.players.size(); ++i) {
    const PlayerEval& p = report.players[i];
    players.push_back({{"player", i},
                       {"utility", p.utility},
                       {"best_response", p.best_response},
                       {"gap", p.gap},
                       {"utility_stderr", p.utility_stderr}});
  }
  j["players"] = players;
  j["n_obs_samples"] = report.config.n_obs_samples;
  j["n_state_samples"] = report.config.n_state_samples;
  j["grid_resolution"] = report.config.grid_resolution;
  j["simplex_divisions"] = report.config.simplex_divisions;
  j["multi_item_resolution"] = report.config.multi_item_resolution;
  j["n_opponent_action_samples"] = report.config.n_opponent_action_samples;
  j["grid_points"] = report.grid_points;
  j["seed"] = report.seed;
  j["stream_id"] = report.stream_id;
  return internal::Render(j);
}

}  // namespace bbeq
