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

#include "bbeq/analytic.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bbeq {
namespace {

void Require(bool ok, AnalyticKind kind, const std::string& what) {
  if (!ok) {
    throw std::invalid_argument("analytic " + AnalyticKindName(kind) +
                                " needs " + what);
  }
}

StrategySet Symmetric(AnalyticKind kind, int n, const AnalyticSampler& s) {
  StrategySet set;
  for (int i = 0; i < n; ++i) {
    set.push_back(std::make_shared<AnalyticStrategy>(kind, i, s));
  }
  return set;
}

}  // namespace

double AllPayIpvBid(int n, double o) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  return (n - 1.0) / n * std::pow(o, n);
}

double KthPriceIpvBid(int n, int k, double o) {
  if (k < 1 || k > n) throw std::invalid_argument("k must be in [1, n]");
  return (n - 1.0) / (n + 1.0 - k) * o;
}

double CommonValues3p2ndBid(double o) { return o / (2.0 + 0.5 * o); }

double CommonValues3p2ndBidDerived(double o) { return 2.0 * o / (1.0 + o); }

double Affiliated2pBid(int price_rank, double o) {
  if (price_rank == 1) return 2.0 / 3.0 * o;
  if (price_rank == 2) return o;
  throw std::invalid_argument("affiliated price rank must be 1 or 2");
}

double CompleteAllPayBid(double v, RngStream& rng) {
  if (v < 0.0) throw std::invalid_argument("value must be >= 0");
  return rng.Uniform(0.0, v);
}

double AsymmetricBid(int player, double o, RngStream& rng) {
  if (player == 0) return 0.5 * o;
  if (player == 1) return rng.Uniform(0.0, 0.5);
  throw std::invalid_argument("asymmetric auction has two players");
}

double VisibilityPoint(RngStream& rng) {
  return 1.0 - std::exp(-rng.NextUniform01());
}

std::array<double, 3> ChopstickPoint(RngStream& rng) {
  static constexpr double kV[4][3] = {
      {0.5, 0.5, 0.0}, {0.5, 0.0, 0.5}, {0.0, 0.5, 0.5}, {0.0, 0.0, 0.0}};
  // Face f is the triangle opposite vertex f.
  const uint64_t f = rng.UniformInt(4);
  int idx[3], m = 0;
  for (int v = 0; v < 4; ++v) {
    if (v != static_cast<int>(f)) idx[m++] = v;
  }
  const double s = std::sqrt(rng.NextUniform01());
  const double r = rng.NextUniform01();
  const double w[3] = {1.0 - s, s * (1.0 - r), s * r};
  std::array<double, 3> out{};
  for (int c = 0; c < 3; ++c) {
    for (int k = 0; k < 3; ++k) out[c] += w[k] * kV[idx[k]][c];
  }
  return out;
}

std::array<double, 3> BlottoHemispherePoint(double budget, RngStream& rng) {
  if (!(budget > 0.0)) throw std::invalid_argument("budget must be > 0");
  // Uniform direction on the sphere; only the upper half matters, and the
  // vertical projection ignores the height anyway.
  double x, y, z, norm;
  do {
    x = rng.StandardNormal();
    y = rng.StandardNormal();
    z = rng.StandardNormal();
    norm = std::sqrt(x * x + y * y + z * z);
  } while (norm == 0.0);
  x /= norm;
  y /= norm;
  // Budget triangle with corners b e_j; its incircle is centred at b/3 (1,1,1)
  // with radius b / sqrt(6). A point's area proportions are its barycentric
  // coordinates, which in this embedding are the coordinates themselves.
  const double radius = budget / std::sqrt(6.0);
  const double e1[3] = {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0};
  const double e2[3] = {1.0 / std::sqrt(6.0), 1.0 / std::sqrt(6.0),
                        -2.0 / std::sqrt(6.0)};
  std::array<double, 3> out;
  double sum = 0.0;
  for (int j = 0; j < 3; ++j) {
    out[j] = std::max(0.0, budget / 3.0 + radius * (x * e1[j] + y * e2[j]));
    sum += out[j];
  }
  for (double& v : out) v *= budget / sum;
  return out;
}

double BlottoMarginalCdfNumeric(double budget, double x, int grid) {
  // P(a_3 <= x) with a_3 = b/3 - (b/3) y and (x, y, z) uniform on the upper
  // unit hemisphere. Integrate over the projected disk with the density
  // 1 / (2 pi sqrt(1 - r^2)), midpoint rule in polar coordinates.
  double mass = 0.0, total = 0.0;
  const double dr = 1.0 / grid, dt = 2.0 * std::numbers::pi / grid;
  for (int a = 0; a < grid; ++a) {
    const double r = (a + 0.5) * dr;
    const double w = r / std::sqrt(1.0 - r * r) * dr * dt;
    for (int b = 0; b < grid; ++b) {
      const double t = (b + 0.5) * dt;
      const double yy = r * std::sin(t);
      total += w;
      if (budget / 3.0 - budget / 3.0 * yy <= x) mass += w;
    }
  }
  return mass / total;
}

std::string AnalyticKindName(AnalyticKind kind) {
  switch (kind) {
    case AnalyticKind::kAllPayIpv: return "allpay_ipv";
    case AnalyticKind::kKthPriceIpv: return "kth_price_ipv";
    case AnalyticKind::kCommonValues: return "common_values";
    case AnalyticKind::kAffiliated: return "affiliated";
    case AnalyticKind::kCompleteAllPay: return "complete_allpay";
    case AnalyticKind::kAsymmetric: return "asymmetric";
    case AnalyticKind::kVisibility: return "visibility";
    case AnalyticKind::kChopstick: return "chopstick";
    case AnalyticKind::kBlotto: return "blotto";
  }
  return "";
}

std::vector<AnalyticKind> AllAnalyticKinds() {
  return {AnalyticKind::kAllPayIpv,      AnalyticKind::kKthPriceIpv,
          AnalyticKind::kCommonValues,   AnalyticKind::kAffiliated,
          AnalyticKind::kCompleteAllPay, AnalyticKind::kAsymmetric,
          AnalyticKind::kVisibility,     AnalyticKind::kChopstick,
          AnalyticKind::kBlotto};
}

AnalyticKind ParseAnalyticKind(const std::string& name) {
  for (AnalyticKind k : AllAnalyticKinds()) {
    if (AnalyticKindName(k) == name) return k;
  }
  throw std::invalid_argument("unknown analytic kind: " + name);
}

GameConfig CanonicalGameConfig(AnalyticKind kind, int n_players,
                               int price_rank) {
  GameConfig g;
  g.kind = GameKind::kAuction;
  switch (kind) {
    case AnalyticKind::kAllPayIpv:
      g.n_players = n_players;
      g.value_structure = ValueStructure::kIpv;
      g.payment = PaymentRule::kAllPay;
      break;
    case AnalyticKind::kKthPriceIpv:
      g.n_players = n_players;
      g.value_structure = ValueStructure::kIpv;
      g.price_rank = price_rank;
      break;
    case AnalyticKind::kCommonValues:
      g.n_players = 3;
      g.value_structure = ValueStructure::kCommon;
      g.price_rank = 2;
      break;
    case AnalyticKind::kAffiliated:
      g.value_structure = ValueStructure::kAffiliated;
      g.price_rank = price_rank;
      break;
    case AnalyticKind::kCompleteAllPay:
      g.value_structure = ValueStructure::kComplete;
      g.payment = PaymentRule::kAllPay;
      break;
    case AnalyticKind::kAsymmetric:
      g.value_structure = ValueStructure::kAsymmetric;
      break;
    case AnalyticKind::kVisibility:
      g.kind = GameKind::kVisibility;
      break;
    case AnalyticKind::kChopstick:
      g.kind = GameKind::kChopstick;
      break;
    case AnalyticKind::kBlotto:
      g.kind = GameKind::kBlotto;
      g.battlefields = 3;
      break;
  }
  g.Validate();
  return g;
}

StrategySet MakeAnalyticProfile(AnalyticKind kind, const Game& game) {
  const GameConfig& g = game.config();
  const int n = g.n_players;
  const bool auction = g.kind == GameKind::kAuction;
  const bool winner_pay = g.payment == PaymentRule::kWinnerPay;
  switch (kind) {
    case AnalyticKind::kAllPayIpv:
      Require(auction && g.value_structure == ValueStructure::kIpv && !winner_pay,
              kind, "an all-pay IPV auction");
      return Symmetric(kind, n, [n](auto o, RngStream&, auto a) {
        a[0] = AllPayIpvBid(n, o[0]);
      });
    case AnalyticKind::kKthPriceIpv: {
      Require(auction && g.value_structure == ValueStructure::kIpv && winner_pay,
              kind, "a winner-pay IPV auction");
      const int k = g.price_rank;
      return Symmetric(kind, n, [n, k](auto o, RngStream&, auto a) {
        a[0] = KthPriceIpvBid(n, k, o[0]);
      });
    }
    case AnalyticKind::kCommonValues:
      Require(auction && g.value_structure == ValueStructure::kCommon &&
                  winner_pay && n == 3 && g.price_rank == 2,
              kind, "a 3-player second-price common-values auction");
      return Symmetric(kind, n, [](auto o, RngStream&, auto a) {
        a[0] = CommonValues3p2ndBidDerived(o[0]);
      });
    case AnalyticKind::kAffiliated: {
      Require(auction && g.value_structure == ValueStructure::kAffiliated &&
                  winner_pay && n == 2 && g.price_rank <= 2,
              kind, "a 2-player first- or second-price affiliated auction");
      const int k = g.price_rank;
      return Symmetric(kind, n, [k](auto o, RngStream&, auto a) {
        a[0] = Affiliated2pBid(k, o[0]);
      });
    }
    case AnalyticKind::kCompleteAllPay:
      Require(auction && g.value_structure == ValueStructure::kComplete &&
                  !winner_pay && n == 2,
              kind, "a 2-player complete-information all-pay auction");
      return Symmetric(kind, n, [](auto o, RngStream& rng, auto a) {
        a[0] = CompleteAllPayBid(o[0], rng);
      });
    case AnalyticKind::kAsymmetric: {
      Require(auction && g.value_structure == ValueStructure::kAsymmetric,
              kind, "the asymmetric-information auction");
      StrategySet set;
      set.push_back(std::make_shared<AnalyticStrategy>(
          kind, 0, [](auto o, RngStream& rng, auto a) {
            a[0] = AsymmetricBid(0, o[0], rng);
          }));
      set.push_back(std::make_shared<AnalyticStrategy>(
          kind, 1, [](auto, RngStream& rng, auto a) {
            a[0] = AsymmetricBid(1, 0.0, rng);
          }));
      return set;
    }
    case AnalyticKind::kVisibility:
      Require(g.kind == GameKind::kVisibility && n == 2, kind,
              "the 2-player visibility game");
      return Symmetric(kind, n, [](auto, RngStream& rng, auto a) {
        a[0] = VisibilityPoint(rng);
      });
    case AnalyticKind::kChopstick:
      Require(g.kind == GameKind::kChopstick && n == 2, kind,
              "the 2-player chopstick auction");
      return Symmetric(kind, n, [](auto, RngStream& rng, auto a) {
        const auto p = ChopstickPoint(rng);
        std::copy(p.begin(), p.end(), a.begin());
      });
    case AnalyticKind::kBlotto: {
      bool ok = g.kind == GameKind::kBlotto && n == 2 && g.battlefields == 3 &&
                !g.random_budgets;
      if (ok && !g.budgets.empty()) ok = g.budgets[0] == g.budgets[1];
      if (ok) {
        for (const auto& row : g.values) {
          for (double v : row) ok = ok && v == g.values[0][0];
        }
      }
      Require(ok, kind,
              "2-player 3-battlefield Blotto with equal budgets and values");
      const double b = g.budgets.empty() ? 1.0 : g.budgets[0];
      return Symmetric(kind, n, [b](auto, RngStream& rng, auto a) {
        const auto p = BlottoHemispherePoint(b, rng);
        std::copy(p.begin(), p.end(), a.begin());
      });
    }
  }
  throw std::invalid_argument("unknown analytic kind");
}

}  // namespace bbeq
