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

#include "bbeq/games.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace bbeq {
namespace {

using PayoffArray = std::array<double, Game::kMaxPlayers>;

// Picks a uniformly random element among `count` tied maximizers.
inline int BreakTie(int count, RngStream& rng) {
  return count > 1 ? static_cast<int>(rng.UniformInt(count)) : 0;
}

// Nudges `free` by a few ulps until combine(free) == target exactly.
template <typename Combine>
double NudgeUntilExact(double free, double target, double lo, double hi,
                       Combine combine) {
  if (combine(free) == target) return free;
  double up = free, down = free;
  for (int step = 0; step < 8; ++step) {
    up = std::nextafter(up, 2.0 * hi + 1.0);
    down = std::nextafter(down, lo - 1.0);
    if (up <= hi && combine(up) == target) return up;
    if (down >= lo && combine(down) == target) return down;
  }
  return free;
}

// Splits `target` into (w_i, w_c) with combine(w_i, w_c) == target exactly.
// Some w_c admit no such w_i at all. Moving w_c by single ulps can keep
// missing because the product lattice drifts by almost exactly one spacing
// per ulp, so w_c moves instead by relative offsets of order 2^-30 drawn from
// a fixed low-discrepancy sequence.
template <typename Solve, typename Combine>
std::pair<double, double> ExactSplit(double wc, double target, double wc_lo,
                                     double wc_hi, Solve solve, Combine combine) {
  constexpr double kGolden = 0.6180339887498949;
  for (int attempt = 0; attempt < 256; ++attempt) {
    double c = wc;
    if (attempt > 0) {
      const double frac = attempt * kGolden - std::floor(attempt * kGolden);
      c = std::clamp(wc * (1.0 + (frac - 0.5) * 0x1p-30), wc_lo, wc_hi);
    }
    const double wi = NudgeUntilExact(
        std::clamp(solve(c), 0.0, 1.0), target, 0.0, 1.0,
        [&combine, c](double x) { return combine(x, c); });
    if (combine(wi, c) == target) return {wi, c};
  }
  return {std::clamp(solve(wc), 0.0, 1.0), wc};
}

// ---------------------------------------------------------------------------
// Continuous Colonel Blotto.

class BlottoGame final : public Game {
 public:
  explicit BlottoGame(GameConfig config) : Game(std::move(config)) {
    const int n = NumPlayers(), j = config_.battlefields;
    budgets_ = config_.budgets.empty() ? std::vector<double>(n, 1.0)
                                       : config_.budgets;
    values_.assign(n, std::vector<double>(j, 1.0));
    if (!config_.values.empty()) values_ = config_.values;
  }

  std::string Name() const override {
    return config_.random_budgets ? "blotto_random" : "blotto";
  }
  int StateDim() const override {
    return config_.random_budgets ? NumPlayers() : 0;
  }
  int ObsDim(int) const override {
    return config_.random_budgets ? NumPlayers() : 0;
  }
  int ActionDim() const override { return config_.battlefields; }

  OutputHead Head(int player) const override {
    CheckPlayer(player);
    return config_.random_budgets ? OutputHead::SoftmaxFromObservation(player)
                                  : OutputHead::SoftmaxConstant(budgets_[player]);
  }

  ActionSpace GetActionSpace(int player) const override {
    CheckPlayer(player);
    ActionSpace space;
    space.kind = ActionSpace::Kind::kSimplex;
    space.dim = config_.battlefields;
    space.budget = config_.random_budgets ? 1.0 : budgets_[player];
    space.budget_obs_index = config_.random_budgets ? player : -1;
    return space;
  }

  void SampleState(RngStream& rng, std::span<double> state) const override {
    for (double& b : state) b = rng.NextUniform01();
  }

  void Observe(std::span<const double> state, int player,
               std::span<double> observation) const override {
    CheckPlayer(player);
    std::copy(state.begin(), state.end(), observation.begin());
  }

  void SampleStateGivenObs(int player, std::span<const double> observation,
                           RngStream&, std::span<double> state) const override {
    CheckPlayer(player);
    std::copy(observation.begin(), observation.end(), state.begin());
  }

  void Payoff(std::span<const double>, std::span<const double> actions,
              RngStream& rng, std::span<double> payoffs) const override {
    const int n = NumPlayers(), n_fields = config_.battlefields;
    std::fill(payoffs.begin(), payoffs.end(), 0.0);
    std::array<int, kMaxPlayers> tied{};
    for (int j = 0; j < n_fields; ++j) {
      double best = actions[j];
      int count = 0;
      for (int i = 0; i < n; ++i) {
        const double bid = actions[i * n_fields + j];
        if (bid > best) {
          best = bid;
          count = 0;
        }
        if (bid == best) tied[count++] = i;
      }
      const int winner = tied[BreakTie(count, rng)];
      payoffs[winner] += values_[winner][j];
    }
  }

 private:
  std::vector<double> budgets_;
  std::vector<std::vector<double>> values_;
};

// ---------------------------------------------------------------------------
// Single-item sealed-bid auctions.

class AuctionGame final : public Game {
 public:
  explicit AuctionGame(GameConfig config) : Game(std::move(config)) {}

  std::string Name() const override {
    std::string name = ValueStructureName(config_.value_structure) + "_" +
                       std::to_string(NumPlayers()) + "p_";
    if (config_.payment == PaymentRule::kAllPay) return name + "allpay";
    return name + "winnerpay_k" + std::to_string(config_.price_rank);
  }

  int StateDim() const override {
    switch (config_.value_structure) {
      case ValueStructure::kIpv:
        return NumPlayers();
      case ValueStructure::kCommon:
      case ValueStructure::kAffiliated:
        return NumPlayers() + 1;
      case ValueStructure::kComplete:
      case ValueStructure::kAsymmetric:
        return 1;
    }
    return 1;
  }
  int ObsDim(int) const override { return 1; }
  int ActionDim() const override { return 1; }
  OutputHead Head(int) const override { return OutputHead::AbsoluteValue(); }

  ActionSpace GetActionSpace(int player) const override {
    CheckPlayer(player);
    ActionSpace space;
    space.upper = config_.bid_upper > 0.0 ? config_.bid_upper
                  : config_.value_structure == ValueStructure::kAffiliated
                      ? 2.0
                      : 1.5;
    return space;
  }

  void SampleState(RngStream& rng, std::span<double> state) const override {
    for (double& w : state) w = rng.NextUniform01();
  }

  void Observe(std::span<const double> state, int player,
               std::span<double> observation) const override {
    CheckPlayer(player);
    const int n = NumPlayers();
    switch (config_.value_structure) {
      case ValueStructure::kIpv:
        observation[0] = state[player];
        break;
      case ValueStructure::kCommon:
        observation[0] = state[player] * state[n];
        break;
      case ValueStructure::kAffiliated:
        observation[0] = state[player] + state[n];
        break;
      case ValueStructure::kComplete:
        observation[0] = state[0];
        break;
      case ValueStructure::kAsymmetric:
        observation[0] = player == 0 ? state[0] : 0.0;
        break;
    }
  }

  void SampleStateGivenObs(int player, std::span<const double> observation,
                           RngStream& rng,
                           std::span<double> state) const override {
    CheckPlayer(player);
    const int n = NumPlayers();
    const double o = observation[0];
    auto fill_others = [&] {
      for (int j = 0; j < n; ++j) {
        if (j != player) state[j] = rng.NextUniform01();
      }
    };
    switch (config_.value_structure) {
      case ValueStructure::kIpv:
        CheckRange(o, 1.0);
        fill_others();
        state[player] = o;
        break;
      case ValueStructure::kCommon: {
        CheckRange(o, 1.0);
        // p(w_c | o) is proportional to 1 / w_c on [o, 1]: w_c = o^z.
        const double z = rng.NextUniform01();
        double wc, wi;
        if (o == 0.0) {
          wc = 0.0;
          wi = 0.0;
        } else {
          std::tie(wi, wc) = ExactSplit(
              std::pow(o, z), o, o, 1.0, [o](double c) { return o / c; },
              [](double x, double c) { return x * c; });
        }
        fill_others();
        state[player] = wi;
        state[n] = wc;
        break;
      }
      case ValueStructure::kAffiliated: {
        CheckRange(o, 2.0);
        const double lo = std::max(0.0, o - 1.0), hi = std::min(1.0, o);
        const auto [wi, wc] = ExactSplit(
            rng.Uniform(lo, hi), o, lo, hi, [o](double c) { return o - c; },
            [](double x, double c) { return x + c; });
        fill_others();
        state[player] = wi;
        state[n] = wc;
        break;
      }
      case ValueStructure::kComplete:
        CheckRange(o, 1.0);
        state[0] = o;
        break;
      case ValueStructure::kAsymmetric:
        CheckRange(o, 1.0);
        state[0] = player == 0 ? o : rng.NextUniform01();
        break;
    }
  }

  void Payoff(std::span<const double> state, std::span<const double> actions,
              RngStream& rng, std::span<double> payoffs) const override {
    const int n = NumPlayers();
    std::array<int, kMaxPlayers> tied{};
    double best = actions[0];
    int count = 0;
    for (int i = 0; i < n; ++i) {
      if (actions[i] > best) {
        best = actions[i];
        count = 0;
      }
      if (actions[i] == best) tied[count++] = i;
    }
    const int winner = tied[BreakTie(count, rng)];
    const double value = Value(state, winner);
    if (config_.payment == PaymentRule::kAllPay) {
      for (int i = 0; i < n; ++i) payoffs[i] = -actions[i];
      payoffs[winner] += value;
      return;
    }
    std::fill(payoffs.begin(), payoffs.begin() + n, 0.0);
    double price = best;
    if (config_.price_rank > 1) {
      std::array<double, kMaxPlayers> sorted;
      std::copy(actions.begin(), actions.begin() + n, sorted.begin());
      const int k = config_.price_rank - 1;
      std::nth_element(sorted.begin(), sorted.begin() + k, sorted.begin() + n,
                       std::greater<>());
      price = sorted[k];
    }
    payoffs[winner] = value - price;
  }

 private:
  double Value(std::span<const double> state, int player) const {
    const int n = NumPlayers();
    switch (config_.value_structure) {
      case ValueStructure::kIpv:
        return state[player];
      case ValueStructure::kCommon:
        return state[n];
      case ValueStructure::kAffiliated: {
        double mean = 0.0;
        for (int j = 0; j < n; ++j) mean += state[j];
        return state[n] + mean / n;
      }
      case ValueStructure::kComplete:
      case ValueStructure::kAsymmetric:
        return state[0];
    }
    return 0.0;
  }

  static void CheckRange(double o, double hi) {
    if (!(o >= 0.0 && o <= hi)) {
      throw std::invalid_argument("observation " + std::to_string(o) +
                                  " outside [0, " + std::to_string(hi) + "]");
    }
  }
};

// ---------------------------------------------------------------------------
// Chopstick auction: three simultaneous first-price auctions; any two items
// are worth 1 together, a single item is worth nothing.

class ChopstickGame final : public Game {
 public:
  static constexpr int kItems = 3;

  explicit ChopstickGame(GameConfig config) : Game(std::move(config)) {}

  std::string Name() const override { return "chopstick"; }
  int StateDim() const override { return 0; }
  int ObsDim(int) const override { return 0; }
  int ActionDim() const override { return kItems; }
  OutputHead Head(int) const override { return OutputHead::AbsoluteValue(); }

  ActionSpace GetActionSpace(int player) const override {
    CheckPlayer(player);
    ActionSpace space;
    space.dim = kItems;
    space.upper = config_.bid_upper > 0.0 ? config_.bid_upper : 1.0;
    return space;
  }

  void SampleState(RngStream&, std::span<double>) const override {}
  void Observe(std::span<const double>, int player,
               std::span<double>) const override {
    CheckPlayer(player);
  }
  void SampleStateGivenObs(int player, std::span<const double>, RngStream&,
                           std::span<double>) const override {
    CheckPlayer(player);
  }

  void Payoff(std::span<const double>, std::span<const double> actions,
              RngStream& rng, std::span<double> payoffs) const override {
    const int n = NumPlayers();
    std::array<int, kMaxPlayers> won{};
    std::array<int, kMaxPlayers> tied{};
    std::fill(payoffs.begin(), payoffs.begin() + n, 0.0);
    for (int item = 0; item < kItems; ++item) {
      double best = actions[item];
      int count = 0;
      for (int i = 0; i < n; ++i) {
        const double bid = actions[i * kItems + item];
        if (bid > best) {
          best = bid;
          count = 0;
        }
        if (bid == best) tied[count++] = i;
      }
      const int winner = tied[BreakTie(count, rng)];
      ++won[winner];
      payoffs[winner] -= best;
    }
    for (int i = 0; i < n; ++i) {
      if (won[i] >= 2) payoffs[i] += 1.0;
    }
  }

  void SumPayoffsForCandidates(int player, std::span<const double> states,
                               std::span<const double> actions,
                               uint64_t tie_seed,
                               std::span<const double> candidates,
                               std::span<double> sums) const override;
};

// Counts wins through cumulative histograms over per-item rank thresholds:
// with h_j the highest opposing bid on item j and values[j] the sorted
// distinct candidate bids, candidate index i wins item j iff
// i >= t_j := #{values[j] <= h_j}. Samples where some candidate bid equals h_j
// exactly need a coin flip and go through the generic path.
void ChopstickGame::SumPayoffsForCandidates(int player,
                                            std::span<const double> states,
                                            std::span<const double> actions,
                                            uint64_t tie_seed,
                                            std::span<const double> candidates,
                                            std::span<double> sums) const {
  const int n = NumPlayers();
  const std::size_t n_cand = candidates.size() / kItems;
  const std::size_t n_samples = actions.size() / (n * kItems);

  std::array<std::vector<double>, kItems> values;
  for (int j = 0; j < kItems; ++j) {
    for (std::size_t c = 0; c < n_cand; ++c) {
      values[j].push_back(candidates[c * kItems + j]);
    }
    std::sort(values[j].begin(), values[j].end());
    values[j].erase(std::unique(values[j].begin(), values[j].end()),
                    values[j].end());
  }
  const std::size_t r0 = values[0].size() + 1, r1 = values[1].size() + 1,
                    r2 = values[2].size() + 1;
  if (r0 * r1 * r2 > (1u << 22)) {
    Game::SumPayoffsForCandidates(player, states, actions, tie_seed,
                                  candidates, sums);
    return;
  }

  // hist[t0][t1][t2] -> number of samples with those thresholds.
  std::vector<double> hist(r0 * r1 * r2, 0.0);
  auto cell = [&](std::size_t a, std::size_t b, std::size_t c) {
    return (a * r1 + b) * r2 + c;
  };
  std::vector<std::size_t> tie_samples;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const double* joint = actions.data() + s * n * kItems;
    std::array<std::size_t, kItems> t{};
    bool tie = false;
    for (int j = 0; j < kItems; ++j) {
      double h = 0.0;
      bool any = false;
      for (int i = 0; i < n; ++i) {
        if (i == player) continue;
        const double bid = joint[i * kItems + j];
        if (!any || bid > h) h = bid;
        any = true;
      }
      auto it = std::upper_bound(values[j].begin(), values[j].end(), h);
      t[j] = static_cast<std::size_t>(it - values[j].begin());
      if (it != values[j].begin() && *(it - 1) == h) tie = true;
    }
    if (tie) {
      tie_samples.push_back(s);
    } else {
      hist[cell(t[0], t[1], t[2])] += 1.0;
    }
  }
  // In-place 3D prefix sums: hist[a][b][c] = #{t0 <= a, t1 <= b, t2 <= c}.
  for (std::size_t a = 0; a < r0; ++a)
    for (std::size_t b = 0; b < r1; ++b)
      for (std::size_t c = 1; c < r2; ++c) hist[cell(a, b, c)] += hist[cell(a, b, c - 1)];
  for (std::size_t a = 0; a < r0; ++a)
    for (std::size_t b = 1; b < r1; ++b)
      for (std::size_t c = 0; c < r2; ++c) hist[cell(a, b, c)] += hist[cell(a, b - 1, c)];
  for (std::size_t a = 1; a < r0; ++a)
    for (std::size_t b = 0; b < r1; ++b)
      for (std::size_t c = 0; c < r2; ++c) hist[cell(a, b, c)] += hist[cell(a - 1, b, c)];

  const std::size_t m0 = r0 - 1, m1 = r1 - 1, m2 = r2 - 1;
  for (std::size_t c = 0; c < n_cand; ++c) {
    const double* bid = candidates.data() + c * kItems;
    std::array<std::size_t, kItems> idx;
    for (int j = 0; j < kItems; ++j) {
      idx[j] = static_cast<std::size_t>(
          std::lower_bound(values[j].begin(), values[j].end(), bid[j]) -
          values[j].begin());
    }
    const double w0 = hist[cell(idx[0], m1, m2)];
    const double w1 = hist[cell(m0, idx[1], m2)];
    const double w2 = hist[cell(m0, m1, idx[2])];
    const double w01 = hist[cell(idx[0], idx[1], m2)];
    const double w02 = hist[cell(idx[0], m1, idx[2])];
    const double w12 = hist[cell(m0, idx[1], idx[2])];
    const double w012 = hist[cell(idx[0], idx[1], idx[2])];
    const double pairs = w01 + w02 + w12 - 2.0 * w012;
    sums[c] = pairs - (bid[0] * w0 + bid[1] * w1 + bid[2] * w2);
  }

  if (!tie_samples.empty()) {
    std::vector<double> joint(n * kItems);
    PayoffArray payoffs{};
    for (std::size_t s : tie_samples) {
      for (std::size_t c = 0; c < n_cand; ++c) {
        std::copy_n(actions.data() + s * n * kItems, n * kItems, joint.begin());
        std::copy_n(candidates.data() + c * kItems, kItems,
                    joint.begin() + player * kItems);
        RngStream tie_rng(tie_seed, s);
        Payoff({}, joint, tie_rng, std::span<double>(payoffs.data(), n));
        sums[c] += payoffs[player];
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Visibility game: payoff is the distance to the next higher point, or to 1
// for the highest point.

class VisibilityGame final : public Game {
 public:
  explicit VisibilityGame(GameConfig config) : Game(std::move(config)) {}

  std::string Name() const override { return "visibility"; }
  int StateDim() const override { return 0; }
  int ObsDim(int) const override { return 0; }
  int ActionDim() const override { return 1; }
  OutputHead Head(int) const override {
    return OutputHead::ClampedIdentity(0.0, 1.0);
  }

  ActionSpace GetActionSpace(int player) const override {
    CheckPlayer(player);
    return ActionSpace{};
  }

  void SampleState(RngStream&, std::span<double>) const override {}
  void Observe(std::span<const double>, int player,
               std::span<double>) const override {
    CheckPlayer(player);
  }
  void SampleStateGivenObs(int player, std::span<const double>, RngStream&,
                           std::span<double>) const override {
    CheckPlayer(player);
  }

  void Payoff(std::span<const double>, std::span<const double> actions,
              RngStream& rng, std::span<double> payoffs) const override {
    const int n = NumPlayers();
    std::array<int, kMaxPlayers> order;
    for (int i = 0; i < n; ++i) order[i] = i;
    bool has_tie = false;
    for (int i = 0; i < n && !has_tie; ++i)
      for (int j = i + 1; j < n; ++j)
        if (actions[i] == actions[j]) has_tie = true;
    if (has_tie) {
      // Random order among equal points decides who is "higher".
      for (int i = n - 1; i > 0; --i) {
        std::swap(order[i], order[rng.UniformInt(i + 1)]);
      }
    }
    std::stable_sort(order.begin(), order.begin() + n,
                     [&](int a, int b) { return actions[a] < actions[b]; });
    for (int r = 0; r < n; ++r) {
      const double next = r + 1 < n ? actions[order[r + 1]] : 1.0;
      payoffs[order[r]] = next - actions[order[r]];
    }
  }
};

}  // namespace

std::string GameKindName(GameKind kind) {
  switch (kind) {
    case GameKind::kBlotto:
      return "blotto";
    case GameKind::kAuction:
      return "auction";
    case GameKind::kChopstick:
      return "chopstick";
    case GameKind::kVisibility:
      return "visibility";
  }
  return "auction";
}

GameKind ParseGameKind(const std::string& name) {
  if (name == "blotto") return GameKind::kBlotto;
  if (name == "auction") return GameKind::kAuction;
  if (name == "chopstick") return GameKind::kChopstick;
  if (name == "visibility") return GameKind::kVisibility;
  throw std::invalid_argument("unknown game kind: " + name);
}

std::string ValueStructureName(ValueStructure v) {
  switch (v) {
    case ValueStructure::kIpv:
      return "ipv";
    case ValueStructure::kCommon:
      return "common";
    case ValueStructure::kAffiliated:
      return "affiliated";
    case ValueStructure::kComplete:
      return "complete";
    case ValueStructure::kAsymmetric:
      return "asymmetric";
  }
  return "ipv";
}

ValueStructure ParseValueStructure(const std::string& name) {
  if (name == "ipv") return ValueStructure::kIpv;
  if (name == "common") return ValueStructure::kCommon;
  if (name == "affiliated") return ValueStructure::kAffiliated;
  if (name == "complete") return ValueStructure::kComplete;
  if (name == "asymmetric") return ValueStructure::kAsymmetric;
  throw std::invalid_argument("unknown value structure: " + name);
}

std::string PaymentRuleName(PaymentRule p) {
  return p == PaymentRule::kAllPay ? "all_pay" : "winner_pay";
}

PaymentRule ParsePaymentRule(const std::string& name) {
  if (name == "all_pay") return PaymentRule::kAllPay;
  if (name == "winner_pay") return PaymentRule::kWinnerPay;
  throw std::invalid_argument("unknown payment rule: " + name);
}

void GameConfig::Validate() const {
  if (n_players < 1 || n_players > Game::kMaxPlayers) {
    throw std::invalid_argument("n_players must be in [1, 16]");
  }
  switch (kind) {
    case GameKind::kBlotto:
      if (battlefields < 1) throw std::invalid_argument("battlefields must be >= 1");
      if (!budgets.empty()) {
        if (random_budgets) {
          throw std::invalid_argument("budgets must be empty when random_budgets");
        }
        if (static_cast<int>(budgets.size()) != n_players) {
          throw std::invalid_argument("budgets must have one entry per player");
        }
        for (double b : budgets) {
          if (!(b > 0.0)) throw std::invalid_argument("budgets must be > 0");
        }
      }
      if (!values.empty()) {
        if (static_cast<int>(values.size()) != n_players) {
          throw std::invalid_argument("values must have one row per player");
        }
        for (const auto& row : values) {
          if (static_cast<int>(row.size()) != battlefields) {
            throw std::invalid_argument("values rows must have one entry per battlefield");
          }
          for (double v : row) {
            if (!(v >= 0.0)) throw std::invalid_argument("values must be >= 0");
          }
        }
      }
      break;
    case GameKind::kAuction:
      if (payment == PaymentRule::kWinnerPay &&
          (price_rank < 1 || price_rank > n_players)) {
        throw std::invalid_argument("price_rank must be in [1, n_players]");
      }
      if (value_structure == ValueStructure::kAsymmetric &&
          (n_players != 2 || payment != PaymentRule::kWinnerPay ||
           price_rank != 1)) {
        throw std::invalid_argument(
            "asymmetric auction is 2-player first-price winner-pay");
      }
      break;
    case GameKind::kChopstick:
    case GameKind::kVisibility:
      break;
  }
  if (bid_upper < 0.0) throw std::invalid_argument("bid_upper must be >= 0");
}

double ActionSpace::BudgetFor(std::span<const double> observation) const {
  return budget_obs_index >= 0 ? observation[budget_obs_index] : budget;
}

Game::Game(GameConfig config) : config_(std::move(config)) {
  config_.Validate();
}

void Game::CheckPlayer(int player) const {
  if (player < 0 || player >= NumPlayers()) {
    throw std::out_of_range("player index " + std::to_string(player) +
                            " out of range");
  }
}

void Game::SumPayoffsForCandidates(int player, std::span<const double> states,
                                   std::span<const double> actions,
                                   uint64_t tie_seed,
                                   std::span<const double> candidates,
                                   std::span<double> sums) const {
  const int n = NumPlayers(), dim = ActionDim(), state_dim = StateDim();
  const std::size_t joint_dim = static_cast<std::size_t>(n) * dim;
  const std::size_t n_samples = actions.size() / joint_dim;
  const std::size_t n_cand = candidates.size() / dim;
  std::fill(sums.begin(), sums.end(), 0.0);
  std::vector<double> joint(joint_dim);
  PayoffArray payoffs{};
  for (std::size_t s = 0; s < n_samples; ++s) {
    std::copy_n(actions.data() + s * joint_dim, joint_dim, joint.begin());
    const auto state = states.subspan(s * state_dim, state_dim);
    for (std::size_t c = 0; c < n_cand; ++c) {
      std::copy_n(candidates.data() + c * dim, dim,
                  joint.begin() + static_cast<std::size_t>(player) * dim);
      RngStream tie_rng(tie_seed, s);
      Payoff(state, joint, tie_rng, std::span<double>(payoffs.data(), n));
      sums[c] += payoffs[player];
    }
  }
}

std::vector<double> Game::SampleState(RngStream& rng) const {
  std::vector<double> state(StateDim());
  SampleState(rng, state);
  return state;
}

std::vector<double> Game::Observe(std::span<const double> state,
                                  int player) const {
  std::vector<double> obs(ObsDim(player));
  Observe(state, player, obs);
  return obs;
}

std::vector<double> Game::SampleStateGivenObs(
    int player, std::span<const double> observation, RngStream& rng) const {
  std::vector<double> state(StateDim());
  SampleStateGivenObs(player, observation, rng, state);
  return state;
}

std::vector<double> Game::Payoff(std::span<const double> state,
                                 std::span<const double> actions,
                                 RngStream& rng) const {
  std::vector<double> payoffs(NumPlayers());
  Payoff(state, actions, rng, payoffs);
  return payoffs;
}

std::unique_ptr<Game> MakeGame(const GameConfig& config) {
  switch (config.kind) {
    case GameKind::kBlotto:
      return std::make_unique<BlottoGame>(config);
    case GameKind::kAuction:
      return std::make_unique<AuctionGame>(config);
    case GameKind::kChopstick:
      return std::make_unique<ChopstickGame>(config);
    case GameKind::kVisibility:
      return std::make_unique<VisibilityGame>(config);
  }
  throw std::invalid_argument("unknown game kind");
}

PolicyArchitecture DefaultArchitecture(const Game& game, int player,
                                       int noise_dim, std::vector<int> hidden) {
  PolicyArchitecture arch;
  arch.obs_dim = game.ObsDim(player);
  arch.noise_dim = noise_dim;
  arch.hidden = std::move(hidden);
  arch.action_dim = game.ActionDim();
  arch.head = game.Head(player);
  arch.Validate();
  return arch;
}

}  // namespace bbeq
