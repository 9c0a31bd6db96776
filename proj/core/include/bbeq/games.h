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

#ifndef BBEQ_GAMES_H_
#define BBEQ_GAMES_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bbeq/policy.h"
#include "bbeq/prng.h"

namespace bbeq {

enum class GameKind { kBlotto, kAuction, kChopstick, kVisibility };
enum class ValueStructure { kIpv, kCommon, kAffiliated, kComplete, kAsymmetric };
enum class PaymentRule { kWinnerPay, kAllPay };

std::string GameKindName(GameKind kind);
GameKind ParseGameKind(const std::string& name);
std::string ValueStructureName(ValueStructure v);
ValueStructure ParseValueStructure(const std::string& name);
std::string PaymentRuleName(PaymentRule p);
PaymentRule ParsePaymentRule(const std::string& name);

// Parameters selecting one benchmark game. Fields that do not apply to the
// chosen kind are ignored.
struct GameConfig {
  GameKind kind = GameKind::kAuction;
  int n_players = 2;

  // Blotto.
  int battlefields = 3;
  bool random_budgets = false;
  std::vector<double> budgets;              // empty: every budget is 1
  std::vector<std::vector<double>> values;  // [player][battlefield]; empty: 1

  // Single-item auctions.
  ValueStructure value_structure = ValueStructure::kIpv;
  PaymentRule payment = PaymentRule::kWinnerPay;
  int price_rank = 1;  // k of the winner-pay kth-price rule

  // Upper end of the bid grid used for best responses; 0 selects the default
  // (1.5 for auctions, 2.0 for affiliated values, 1.0 for chopsticks).
  double bid_upper = 0.0;

  void Validate() const;
  bool operator==(const GameConfig&) const = default;
};

// Shape of a player's action set, used to build best-response grids.
struct ActionSpace {
  enum class Kind { kBox, kSimplex };
  Kind kind = Kind::kBox;
  int dim = 1;
  double lower = 0.0;  // box: every coordinate in [lower, upper]
  double upper = 1.0;
  double budget = 1.0;        // simplex: coordinates sum to the budget
  int budget_obs_index = -1;  // simplex: when >= 0, budget = observation[i]

  double BudgetFor(std::span<const double> observation) const;
};

// A Bayesian game (I, Omega, mu, O, tau, A, r) with sampling access.
//
// States, observations and actions are flat vectors of doubles. Joint
// actions are laid out player-major: player i occupies
// [i * ActionDim(), (i + 1) * ActionDim()).
class Game {
 public:
  static constexpr int kMaxPlayers = 16;

  virtual ~Game() = default;

  const GameConfig& config() const { return config_; }
  int NumPlayers() const { return config_.n_players; }
  virtual std::string Name() const = 0;
  virtual int StateDim() const = 0;
  virtual int ObsDim(int player) const = 0;
  virtual int ActionDim() const = 0;
  virtual OutputHead Head(int player) const = 0;
  virtual ActionSpace GetActionSpace(int player) const = 0;

  // omega ~ mu.
  virtual void SampleState(RngStream& rng, std::span<double> state) const = 0;
  // o_i = tau_i(omega); deterministic.
  virtual void Observe(std::span<const double> state, int player,
                       std::span<double> observation) const = 0;
  // omega ~ mu( . | tau_i(omega) = o_i).
  virtual void SampleStateGivenObs(int player,
                                   std::span<const double> observation,
                                   RngStream& rng,
                                   std::span<double> state) const = 0;
  // r(omega, a) for every player. rng is consumed only to break exact ties.
  virtual void Payoff(std::span<const double> state,
                      std::span<const double> actions, RngStream& rng,
                      std::span<double> payoffs) const = 0;

  // Player `player`'s payoff summed over `n_samples` (state, opponent action)
  // samples for each candidate action. `states` holds n_samples * StateDim()
  // values and `actions` n_samples joint actions; the own-action slot of each
  // joint action is ignored. sums[c] receives the total for candidate c,
  // where candidate c occupies candidates[c * ActionDim(), ...). Ties for
  // sample s are broken with a fresh RngStream(tie_seed, s), identical for
  // every candidate.
  virtual void SumPayoffsForCandidates(int player,
                                       std::span<const double> states,
                                       std::span<const double> actions,
                                       uint64_t tie_seed,
                                       std::span<const double> candidates,
                                       std::span<double> sums) const;

  // Convenience wrappers.
  std::vector<double> SampleState(RngStream& rng) const;
  std::vector<double> Observe(std::span<const double> state, int player) const;
  std::vector<double> SampleStateGivenObs(int player,
                                          std::span<const double> observation,
                                          RngStream& rng) const;
  std::vector<double> Payoff(std::span<const double> state,
                             std::span<const double> actions,
                             RngStream& rng) const;

 protected:
  explicit Game(GameConfig config);
  void CheckPlayer(int player) const;

  GameConfig config_;
};

std::unique_ptr<Game> MakeGame(const GameConfig& config);

// Default network shape for `player` in `game`.
PolicyArchitecture DefaultArchitecture(const Game& game, int player,
                                       int noise_dim,
                                       std::vector<int> hidden = {10, 10});

}  // namespace bbeq

#endif  // BBEQ_GAMES_H_
