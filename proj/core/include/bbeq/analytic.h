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

#ifndef BBEQ_ANALYTIC_H_
#define BBEQ_ANALYTIC_H_

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bbeq/games.h"
#include "bbeq/prng.h"
#include "bbeq/strategy.h"

namespace bbeq {

// Closed-form bids.
double AllPayIpvBid(int n, double o);
double KthPriceIpvBid(int n, int k, double o);
// The common-values bid as printed in the source paper: o / (2 + o / 2).
double CommonValues3p2ndBid(double o);
// Symmetric equilibrium of the 3-bidder second-price auction with value
// w_{n+1} and signals w_i w_{n+1}: b(o) = E[V | X_1 = o, Y_1 = o] =
// 2 o / (1 + o). This is what the analytic profile plays.
double CommonValues3p2ndBidDerived(double o);
double Affiliated2pBid(int price_rank, double o);

// Randomized equilibrium samplers.
double CompleteAllPayBid(double v, RngStream& rng);
// player is 0-based: player 0 is the informed bidder.
double AsymmetricBid(int player, double o, RngStream& rng);
double VisibilityPoint(RngStream& rng);
std::array<double, 3> ChopstickPoint(RngStream& rng);
std::array<double, 3> BlottoHemispherePoint(double budget, RngStream& rng);

// Marginal CDF of one battlefield's allocation under the hemisphere
// strategy, computed by numerical integration over the hemisphere.
double BlottoMarginalCdfNumeric(double budget, double x, int grid = 400);

enum class AnalyticKind {
  kAllPayIpv,
  kKthPriceIpv,
  kCommonValues,
  kAffiliated,
  kCompleteAllPay,
  kAsymmetric,
  kVisibility,
  kChopstick,
  kBlotto,
};

std::string AnalyticKindName(AnalyticKind kind);
AnalyticKind ParseAnalyticKind(const std::string& name);
std::vector<AnalyticKind> AllAnalyticKinds();

// The game an analytic kind is stated for. Kinds with free parameters take
// them here (ignored otherwise).
GameConfig CanonicalGameConfig(AnalyticKind kind, int n_players = 2,
                               int price_rank = 1);

using AnalyticSampler = std::function<void(std::span<const double> observation,
                                           RngStream& rng,
                                           std::span<double> action)>;

class AnalyticStrategy final : public Strategy {
 public:
  AnalyticStrategy(AnalyticKind kind, int player, AnalyticSampler sampler)
      : kind_(kind), player_(player), sampler_(std::move(sampler)) {}

  void Act(std::span<const double> observation, RngStream& rng,
           std::span<double> action) const override {
    sampler_(observation, rng, action);
  }

  AnalyticKind kind() const { return kind_; }
  int player() const { return player_; }

 private:
  AnalyticKind kind_;
  int player_;
  AnalyticSampler sampler_;
};

// Equilibrium strategies of `kind` for `game`. Throws std::invalid_argument
// if the game is not one the solution is stated for.
StrategySet MakeAnalyticProfile(AnalyticKind kind, const Game& game);

}  // namespace bbeq

#endif  // BBEQ_ANALYTIC_H_
