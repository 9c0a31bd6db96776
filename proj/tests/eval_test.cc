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
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "bbeq/strategy.h"
#include "test_util.h"

namespace bbeq {
namespace {

using Fn = std::function<void(std::span<const double>, RngStream&, std::span<double>)>;

class FnStrategy final : public Strategy {
 public:
  explicit FnStrategy(Fn fn) : fn_(std::move(fn)) {}
  void Act(std::span<const double> o, RngStream& rng,
           std::span<double> a) const override {
    fn_(o, rng, a);
  }

 private:
  Fn fn_;
};

std::shared_ptr<const Strategy> Make(Fn fn) {
  return std::make_shared<FnStrategy>(std::move(fn));
}

GameConfig Auction(ValueStructure v, int price_rank) {
  GameConfig c;
  c.kind = GameKind::kAuction;
  c.value_structure = v;
  c.price_rank = price_rank;
  return c;
}

TEST(GridTest, SizesAndBounds) {
  const auto simplex = SimplexGrid(3, 20, 2.0);
  ASSERT_EQ(simplex.size(), 231u * 3);
  for (std::size_t c = 0; c < 231; ++c) {
    const double s = simplex[3 * c] + simplex[3 * c + 1] + simplex[3 * c + 2];
    EXPECT_NEAR(s, 2.0, 1e-12);
    for (int k = 0; k < 3; ++k) EXPECT_GE(simplex[3 * c + k], 0.0);
  }
  const auto line = BoxGrid(1, 100, 0.0, 1.5);
  ASSERT_EQ(line.size(), 100u);
  EXPECT_EQ(line.front(), 0.0);
  EXPECT_EQ(line.back(), 1.5);
  EXPECT_TRUE(std::is_sorted(line.begin(), line.end()));
  EXPECT_EQ(BoxGrid(3, 20, 0, 1).size(), 8000u * 3);
  EXPECT_THROW(BoxGrid(0, 5, 0, 1), std::invalid_argument);
}

TEST(GridTest, ActionGridFollowsGame) {
  EvalConfig cfg;
  GameConfig blotto;
  blotto.kind = GameKind::kBlotto;
  blotto.random_budgets = true;
  auto g = MakeGame(blotto);
  const std::vector<double> obs = {0.5, 0.25};
  const auto grid = ActionGrid(*g, 1, obs, cfg);
  EXPECT_EQ(grid.size(), 231u * 3);
  EXPECT_NEAR(grid[0] + grid[1] + grid[2], 0.25, 1e-12);
  GameConfig chop;
  chop.kind = GameKind::kChopstick;
  auto c = MakeGame(chop);
  EXPECT_EQ(ActionGrid(*c, 0, {}, cfg).size(), 8000u * 3);
}

TEST(BlottoEnumTest, HandExamples) {
  // Beatable everywhere within budget.
  auto r = BlottoBestResponseEnum({{0.5, 0.3, 0.2}}, 1.0, {1, 1, 1});
  EXPECT_DOUBLE_EQ(r.value, 3.0);
  EXPECT_NEAR(r.allocation[0] + r.allocation[1] + r.allocation[2], 1.0, 1e-12);
  // Any two fields are affordable, all three are not.
  r = BlottoBestResponseEnum({{0.5, 0.4, 0.3}}, 1.0, {1, 1, 1});
  EXPECT_DOUBLE_EQ(r.value, 2.0);
  int won = (r.allocation[0] >= 0.5) + (r.allocation[1] >= 0.4) +
            (r.allocation[2] >= 0.3);
  EXPECT_EQ(won, 2);
  EXPECT_NEAR(r.allocation[0] + r.allocation[1] + r.allocation[2], 1.0, 1e-12);
  // With a big enough value on field 0 the costlier pair wins.
  r = BlottoBestResponseEnum({{0.5, 0.4, 0.3}}, 1.0, {3, 1, 1});
  EXPECT_DOUBLE_EQ(r.value, 4.0);
  EXPECT_GE(r.allocation[0], 0.5);
  // Values change which field to take.
  r = BlottoBestResponseEnum({{0.6, 0.6, 0.6}}, 1.0, {1, 5, 2});
  EXPECT_DOUBLE_EQ(r.value, 5.0);
  // Two opponents' batches: win both on field 0 and one on field 1.
  r = BlottoBestResponseEnum({{0.2, 0.1}, {0.7, 0.9}}, 0.8, {1, 1});
  EXPECT_DOUBLE_EQ(r.value, (2.0 + 1.0) / 2);
}

// Independent oracle: dense grid over the budget line, ties counted as wins.
double BruteForce2(const std::vector<std::vector<double>>& h, double b,
                   const std::vector<double>& v, int steps) {
  double best = 0;
  for (int s = 0; s <= steps; ++s) {
    const double a0 = b * s / steps, a1 = b * (steps - s) / steps;
    double val = 0;
    for (const auto& row : h) val += (a0 >= row[0]) * v[0] + (a1 >= row[1]) * v[1];
    best = std::max(best, val / h.size());
  }
  return best;
}

TEST(BlottoEnumTest, MatchesDenseGridAndIsFeasible) {
  RngStream rng(12, 0);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::vector<double>> h(2, std::vector<double>(2));
    for (auto& row : h)
      for (double& x : row) x = std::round(rng.Uniform(0, 1) * 50) / 50;
    const std::vector<double> v = {rng.Uniform(0.5, 2), rng.Uniform(0.5, 2)};
    const auto r = BlottoBestResponseEnum(h, 1.0, v);
    EXPECT_NEAR(r.value, BruteForce2(h, 1.0, v, 1000), 1e-12);
    // The allocation achieves the claimed value.
    double val = 0;
    for (const auto& row : h)
      val += (r.allocation[0] >= row[0]) * v[0] + (r.allocation[1] >= row[1]) * v[1];
    EXPECT_NEAR(val / 2, r.value, 1e-12);
    EXPECT_NEAR(r.allocation[0] + r.allocation[1], 1.0, 1e-12);
  }
}

EvalConfig SmallEval() {
  EvalConfig cfg;
  cfg.n_obs_samples = 100;
  cfg.n_state_samples = 200;
  return cfg;
}

// Truthful bidding is dominant in the second-price auction.
TEST(NashConvTest, TruthfulSecondPriceHasSmallGap) {
  auto g = MakeGame(Auction(ValueStructure::kIpv, 2));
  auto truthful = Make([](auto o, auto&, auto a) { a[0] = o[0]; });
  RngStream rng(1, 0);
  const EvalReport r = EstimateNashConv(*g, {truthful, truthful}, SmallEval(), rng);
  EXPECT_LT(r.nashconv, 0.01);
  // The truthful bid is usually off the grid, so the grid maximum can fall
  // a little short of it; the shortfall is bounded by the grid spacing.
  for (const auto& p : r.players) EXPECT_GT(p.gap, -1.5 / 99);
  EXPECT_EQ(r.grid_points, 100u);
}

TEST(NashConvTest, UniformBidderIsExploitable) {
  auto g = MakeGame(Auction(ValueStructure::kIpv, 1));
  auto half = Make([](auto o, auto&, auto a) { a[0] = o[0] / 2; });
  auto noise = Make([](auto, RngStream& rng, auto a) { a[0] = rng.NextUniform01(); });
  RngStream rng(2, 0);
  const EvalReport eq = EstimateNashConv(*g, {half, half}, SmallEval(), rng);
  const EvalReport off = EstimateNashConv(*g, {noise, half}, SmallEval(), rng);
  EXPECT_LT(eq.nashconv, 0.02);
  EXPECT_GT(off.players[0].gap, 0.05);
  EXPECT_EQ(off.nashconv, off.players[0].gap + off.players[1].gap);
}

TEST(NashConvTest, ReproducibleFromStream) {
  GameConfig c;
  c.kind = GameKind::kBlotto;
  auto g = MakeGame(c);
  auto even = Make([](auto, auto&, auto a) { a[0] = a[1] = a[2] = 1.0 / 3; });
  auto random = Make([](auto, RngStream& rng, auto a) {
    double s = 0;
    for (double& x : a) s += (x = -std::log(1 - rng.NextUniform01()));
    for (double& x : a) x /= s;
  });
  RngStream r1(5, 3), r2(5, 3);
  const auto a = EstimateNashConv(*g, {even, random}, SmallEval(), r1);
  const auto b = EstimateNashConv(*g, {even, random}, SmallEval(), r2);
  EXPECT_EQ(a.nashconv, b.nashconv);
  EXPECT_EQ(a.seed, 5u);
  EXPECT_EQ(a.stream_id, 3u);
  // Against the even split, (1/2, 1/2, 0)-style deviations take two fields.
  EXPECT_GT(a.players[1].best_response, 1.5);
  EXPECT_GT(a.players[1].gap, 0.5);
}

TEST(NashConvTest, PolicyProfileOverload) {
  testing::LinearGame g({1.0});
  StrategyProfile profile = {g.BiasPolicy({0.5})};
  RngStream rng(1, 0);
  EvalConfig cfg = SmallEval();
  cfg.grid_resolution = 11;
  const auto r = EstimateNashConv(g, profile, cfg, rng);
  // Linear payoff on [0, 1]: the best response is the upper corner.
  EXPECT_DOUBLE_EQ(r.players[0].utility, 0.5);
  EXPECT_DOUBLE_EQ(r.players[0].best_response, 1.0);
  EXPECT_DOUBLE_EQ(r.nashconv, 0.5);
  EXPECT_EQ(r.players[0].utility_stderr, 0.0);
}

TEST(ExpectedUtilityTest, VisibilityFixedPoints) {
  GameConfig c;
  c.kind = GameKind::kVisibility;
  auto g = MakeGame(c);
  auto at = [](double x) { return Make([x](auto, auto&, auto a) { a[0] = x; }); };
  RngStream rng(1, 0);
  const auto u = ExpectedUtility(*g, {at(0.2), at(0.7)}, 10, rng);
  EXPECT_DOUBLE_EQ(u[0], 0.5);
  EXPECT_DOUBLE_EQ(u[1], 0.3);
}

TEST(MetricsTest, HeaderMatchesGolden) {
  std::ostringstream out;
  WriteMetricsHeader(out);
  std::ifstream golden(std::string(BBEQ_GOLDEN_DIR) + "/metrics_header.csv");
  std::stringstream want;
  want << golden.rdbuf();
  EXPECT_EQ(out.str(), want.str());
}

TEST(MetricsTest, RowsRoundTripDoubles) {
  EvalReport r;
  r.players = {{0.1 + 0.2, 1.0 / 3, 1.0 / 3 - (0.1 + 0.2), 0.0},
               {-2.5, 1e-300, 2.5, 0.0}};
  r.nashconv = r.players[0].gap + r.players[1].gap;
  std::ostringstream out;
  WriteMetricsRows(out, "abc", 4, r, 0.0, 99);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::vector<std::string> cells;
  std::stringstream ls(line);
  for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
  ASSERT_EQ(cells.size(), 9u);
  EXPECT_EQ(cells[0], "abc");
  EXPECT_EQ(cells[1], "4");
  EXPECT_EQ(cells[2], "0");
  EXPECT_EQ(std::stod(cells[3]), 0.1 + 0.2);
  EXPECT_EQ(std::stod(cells[4]), 1.0 / 3);
  EXPECT_EQ(std::stod(cells[6]), r.nashconv);
  EXPECT_EQ(cells[8], "99");
  EXPECT_EQ(FormatReal(0.1), "0.1");
  EXPECT_EQ(FormatReal(2.0), "2");
}

TEST(MetricsTest, JsonReportCarriesSettings) {
  EvalReport r;
  r.players = {{1, 2, 1, 0}};
  r.nashconv = 1;
  r.seed = 17;
  const std::string j = EvalReportJson(r);
  EXPECT_NE(j.find("\"nashconv\": 1"), std::string::npos);
  EXPECT_NE(j.find("\"n_state_samples\": 300"), std::string::npos);
  EXPECT_NE(j.find("\"seed\": 17"), std::string::npos);
}

TEST(EvalConfigTest, Validation) {
  EvalConfig c;
  c.n_obs_samples = 0;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace bbeq
