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

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

namespace bbeq {
namespace {

GameConfig Auction(ValueStructure v, PaymentRule p, int n = 2, int k = 1) {
  GameConfig c;
  c.kind = GameKind::kAuction;
  c.value_structure = v;
  c.payment = p;
  c.n_players = n;
  c.price_rank = k;
  return c;
}

GameConfig Kind(GameKind kind, int n = 2) {
  GameConfig c;
  c.kind = kind;
  c.n_players = n;
  return c;
}

std::vector<double> Pay(const Game& g, std::vector<double> state,
                        std::vector<double> actions, uint64_t tie = 0) {
  RngStream rng(tie, 0);
  return g.Payoff(state, actions, rng);
}

TEST(AuctionTest, FirstSecondAndAllPayPayments) {
  auto first = MakeGame(Auction(ValueStructure::kIpv, PaymentRule::kWinnerPay));
  auto second =
      MakeGame(Auction(ValueStructure::kIpv, PaymentRule::kWinnerPay, 2, 2));
  auto allpay = MakeGame(Auction(ValueStructure::kIpv, PaymentRule::kAllPay));
  const std::vector<double> values = {0.8, 0.6}, bids = {0.5, 0.3};
  EXPECT_EQ(Pay(*first, values, bids), (std::vector<double>{0.8 - 0.5, 0.0}));
  EXPECT_EQ(Pay(*second, values, bids), (std::vector<double>{0.8 - 0.3, 0.0}));
  EXPECT_EQ(Pay(*allpay, values, bids), (std::vector<double>{0.8 - 0.5, -0.3}));
  // A low bid can still win against a lower one.
  EXPECT_EQ(Pay(*first, values, {0.1, 0.7}), (std::vector<double>{0.0, 0.6 - 0.7}));
}

TEST(AuctionTest, ThirdPriceWithFourBidders) {
  auto g = MakeGame(
      Auction(ValueStructure::kIpv, PaymentRule::kWinnerPay, 4, 3));
  const auto p = Pay(*g, {0.1, 0.9, 0.5, 0.4}, {0.2, 0.8, 0.3, 0.35});
  EXPECT_DOUBLE_EQ(p[1], 0.9 - 0.3);
  EXPECT_EQ(p[0] + p[2] + p[3], 0.0);
}

TEST(AuctionTest, ValueAndObservationStructures) {
  auto common = MakeGame(Auction(ValueStructure::kCommon, PaymentRule::kWinnerPay));
  // w = (w_1, w_2, w_c): signal w_i * w_c, value w_c.
  const std::vector<double> s = {0.5, 0.25, 0.8};
  EXPECT_DOUBLE_EQ(common->Observe(s, 0)[0], 0.4);
  EXPECT_DOUBLE_EQ(common->Observe(s, 1)[0], 0.2);
  EXPECT_DOUBLE_EQ(Pay(*common, s, {0.3, 0.1})[0], 0.8 - 0.3);

  auto aff = MakeGame(Auction(ValueStructure::kAffiliated, PaymentRule::kWinnerPay));
  EXPECT_DOUBLE_EQ(aff->Observe(s, 0)[0], 1.3);
  // Value w_c + mean(w_1, w_2).
  EXPECT_DOUBLE_EQ(Pay(*aff, s, {0.1, 0.3})[1], 0.8 + 0.375 - 0.3);

  auto complete = MakeGame(Auction(ValueStructure::kComplete, PaymentRule::kAllPay));
  EXPECT_EQ(complete->Observe(std::vector<double>{0.7}, 1)[0], 0.7);
  auto asym = MakeGame(Auction(ValueStructure::kAsymmetric, PaymentRule::kWinnerPay));
  EXPECT_EQ(asym->Observe(std::vector<double>{0.7}, 0)[0], 0.7);
  EXPECT_EQ(asym->Observe(std::vector<double>{0.7}, 1)[0], 0.0);
}

TEST(AuctionTest, TiesAreSplitEvenly) {
  auto g = MakeGame(Auction(ValueStructure::kIpv, PaymentRule::kWinnerPay, 3));
  int wins[3] = {0, 0, 0};
  const int n = 30000;
  for (int t = 0; t < n; ++t) {
    const auto p = Pay(*g, {1, 1, 1}, {0.5, 0.5, 0.5}, t);
    for (int i = 0; i < 3; ++i) wins[i] += p[i] > 0;
  }
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(wins[i] / double(n), 1.0 / 3, 0.015);
}

// Every conditional sampler must reproduce the observation exactly.
TEST(AuctionTest, ConditionalStatesMatchObservation) {
  for (ValueStructure v :
       {ValueStructure::kIpv, ValueStructure::kCommon, ValueStructure::kAffiliated,
        ValueStructure::kComplete, ValueStructure::kAsymmetric}) {
    auto g = MakeGame(Auction(v, PaymentRule::kWinnerPay));
    RngStream rng(9, static_cast<uint64_t>(v));
    for (int t = 0; t < 2000; ++t) {
      const int player = t % 2;
      const auto omega = g->SampleState(rng);
      const auto obs = g->Observe(omega, player);
      const auto back = g->SampleStateGivenObs(player, obs, rng);
      EXPECT_EQ(g->Observe(back, player), obs) << ValueStructureName(v);
    }
  }
}

// Posterior of w_c given o = w_i w_c has density proportional to 1/w_c on
// [o, 1]; its mean is (1 - o) / (-log o).
TEST(AuctionTest, CommonValuePosteriorMean) {
  auto g = MakeGame(Auction(ValueStructure::kCommon, PaymentRule::kWinnerPay));
  RngStream rng(4, 0);
  for (double o : {0.1, 0.4, 0.8}) {
    const int n = 40000;
    double sum = 0;
    for (int t = 0; t < n; ++t) {
      sum += g->SampleStateGivenObs(0, std::vector<double>{o}, rng)[2];
    }
    EXPECT_NEAR(sum / n, (1 - o) / -std::log(o), 0.005) << o;
  }
}

TEST(AuctionTest, AffiliatedPosteriorIsUniform) {
  auto g = MakeGame(Auction(ValueStructure::kAffiliated, PaymentRule::kWinnerPay));
  RngStream rng(4, 1);
  for (double o : {0.3, 1.0, 1.6}) {
    const double lo = std::max(0.0, o - 1), hi = std::min(1.0, o);
    const int n = 40000;
    double sum = 0, sq = 0;
    for (int t = 0; t < n; ++t) {
      const double wc = g->SampleStateGivenObs(1, std::vector<double>{o}, rng)[2];
      ASSERT_GE(wc, lo);
      ASSERT_LE(wc, hi);
      sum += wc;
      sq += wc * wc;
    }
    const double mean = sum / n, var = sq / n - mean * mean;
    EXPECT_NEAR(mean, (lo + hi) / 2, 0.01 * (hi - lo) + 1e-3);
    EXPECT_NEAR(var, (hi - lo) * (hi - lo) / 12, 0.05 * (hi - lo) * (hi - lo) / 12);
  }
}

TEST(AuctionTest, ObservationOutOfRangeThrows) {
  auto g = MakeGame(Auction(ValueStructure::kIpv, PaymentRule::kWinnerPay));
  RngStream rng(1, 0);
  EXPECT_THROW(g->SampleStateGivenObs(0, std::vector<double>{1.5}, rng),
               std::invalid_argument);
}

TEST(BlottoTest, FieldsGoToHighestAllocation) {
  auto g = MakeGame(Kind(GameKind::kBlotto));
  const auto p = Pay(*g, {}, {0.6, 0.3, 0.1, 0.2, 0.5, 0.3});
  EXPECT_EQ(p, (std::vector<double>{1.0, 2.0}));
}

TEST(BlottoTest, ConstantSumWithTiesAndValues) {
  GameConfig c = Kind(GameKind::kBlotto, 3);
  c.values = {{1, 2, 3}, {1, 2, 3}, {1, 2, 3}};
  auto g = MakeGame(c);
  RngStream rng(2, 0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> a(9);
    for (double& x : a) x = std::floor(rng.Uniform(0, 3)) / 3;  // many ties
    const auto p = g->Payoff(std::vector<double>{}, a, rng);
    EXPECT_DOUBLE_EQ(p[0] + p[1] + p[2], 6.0);
  }
}

TEST(BlottoTest, RandomBudgetsComeFromObservation) {
  GameConfig c = Kind(GameKind::kBlotto);
  c.random_budgets = true;
  auto g = MakeGame(c);
  EXPECT_EQ(g->StateDim(), 2);
  EXPECT_EQ(g->ObsDim(0), 2);
  const std::vector<double> obs = {0.3, 0.9};
  EXPECT_EQ(g->GetActionSpace(1).BudgetFor(obs), 0.9);
  EXPECT_EQ(g->Head(1).scale_source, OutputHead::ScaleSource::kFromObservation);
}

TEST(ChopstickTest, PairsAreWorthOne) {
  auto g = MakeGame(Kind(GameKind::kChopstick));
  const auto p = Pay(*g, {}, {0.3, 0.3, 0.0, 0.2, 0.2, 0.5});
  EXPECT_DOUBLE_EQ(p[0], 1.0 - 0.6);
  EXPECT_DOUBLE_EQ(p[1], -0.5);
  // All three items, one payment each.
  const auto q = Pay(*g, {}, {0.3, 0.3, 0.3, 0.2, 0.2, 0.2});
  EXPECT_NEAR(q[0], 0.1, 1e-12);
}

// The histogram fast path must agree with plain per-candidate evaluation,
// including samples where an opponent bid lands exactly on a grid value.
TEST(ChopstickTest, FastCandidateSumsMatchGeneric) {
  for (int n_players : {2, 3}) {
    auto g = MakeGame(Kind(GameKind::kChopstick, n_players));
    RngStream rng(7, n_players);
    std::vector<double> candidates;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        for (int c = 0; c < 6; ++c) {
          candidates.insert(candidates.end(), {a / 5.0, b / 5.0, c / 5.0});
        }
    const int n_samples = 300;
    std::vector<double> actions(n_samples * n_players * 3);
    for (std::size_t k = 0; k < actions.size(); ++k) {
      actions[k] = k % 7 == 0 ? std::floor(rng.Uniform(0, 6)) / 5.0
                              : rng.Uniform(0, 1);
    }
    for (int player = 0; player < n_players; ++player) {
      std::vector<double> fast(candidates.size() / 3), slow(fast.size());
      g->SumPayoffsForCandidates(player, {}, actions, 99, candidates, fast);
      g->Game::SumPayoffsForCandidates(player, {}, actions, 99, candidates, slow);
      for (std::size_t c = 0; c < fast.size(); ++c) {
        EXPECT_NEAR(fast[c], slow[c], 1e-9) << "candidate " << c;
      }
    }
  }
}

TEST(VisibilityTest, DistanceToNextHigherPoint) {
  auto g = MakeGame(Kind(GameKind::kVisibility, 3));
  const auto p = Pay(*g, {}, {0.5, 0.2, 0.9});
  EXPECT_DOUBLE_EQ(p[0], 0.4);
  EXPECT_DOUBLE_EQ(p[1], 0.3);
  EXPECT_DOUBLE_EQ(p[2], 0.1);
}

TEST(VisibilityTest, TiedPointsShareRandomly) {
  auto g = MakeGame(Kind(GameKind::kVisibility));
  int first_high = 0;
  const int n = 20000;
  for (int t = 0; t < n; ++t) {
    const auto p = Pay(*g, {}, {0.4, 0.4}, t);
    EXPECT_EQ(std::min(p[0], p[1]), 0.0);
    EXPECT_DOUBLE_EQ(std::max(p[0], p[1]), 0.6);
    first_high += p[0] > 0;
  }
  EXPECT_NEAR(first_high / double(n), 0.5, 0.015);
}

TEST(GameConfigTest, ValidationErrors) {
  GameConfig c = Auction(ValueStructure::kIpv, PaymentRule::kWinnerPay, 2, 3);
  EXPECT_THROW(MakeGame(c), std::invalid_argument);
  c = Auction(ValueStructure::kAsymmetric, PaymentRule::kAllPay);
  EXPECT_THROW(MakeGame(c), std::invalid_argument);
  c = Kind(GameKind::kBlotto);
  c.budgets = {1.0};
  EXPECT_THROW(MakeGame(c), std::invalid_argument);
  c = Kind(GameKind::kBlotto, 17);
  EXPECT_THROW(MakeGame(c), std::invalid_argument);
}

TEST(GameConfigTest, NamesRoundTrip) {
  for (GameKind k : {GameKind::kBlotto, GameKind::kAuction, GameKind::kChopstick,
                     GameKind::kVisibility}) {
    EXPECT_EQ(ParseGameKind(GameKindName(k)), k);
  }
  EXPECT_EQ(ParsePaymentRule(PaymentRuleName(PaymentRule::kAllPay)),
            PaymentRule::kAllPay);
  EXPECT_THROW(ParseValueStructure("private"), std::invalid_argument);
}

TEST(GameTest, DefaultArchitectureFollowsGame) {
  auto g = MakeGame(Auction(ValueStructure::kIpv, PaymentRule::kWinnerPay));
  const PolicyArchitecture a = DefaultArchitecture(*g, 0, 2);
  EXPECT_EQ(a.input_dim(), 3);
  EXPECT_EQ(a.hidden, (std::vector<int>{10, 10}));
  EXPECT_EQ(a.head.kind, HeadKind::kAbsoluteValue);
  auto blotto = MakeGame(Kind(GameKind::kBlotto));
  EXPECT_EQ(DefaultArchitecture(*blotto, 1, 0).action_dim, 3);
  EXPECT_THROW(g->Observe(std::vector<double>{0, 0}, 2), std::out_of_range);
}

}  // namespace
}  // namespace bbeq
