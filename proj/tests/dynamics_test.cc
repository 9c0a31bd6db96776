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


#include "bbeq/dynamics.h"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

namespace bbeq {
namespace {

// Bilinear zero-sum game u_1 = x y, u_2 = -x y; each player ascends its own
// utility, so xi = (y, -x). The only equilibrium is the origin.
ProfileGradient Bilinear(const ProfileParams& p) {
  return {{p[1][0]}, {-p[0][0]}};
}

double Norm(const ProfileParams& p) { return std::hypot(p[0][0], p[1][0]); }

TEST(DynamicsTest, SimultaneousSpiralsOutward) {
  ProfileParams p = {{1.0}, {0.0}};
  const double alpha = 0.1;
  for (int t = 1; t <= 50; ++t) {
    SimultaneousStep(p, Bilinear(p), alpha);
    EXPECT_NEAR(Norm(p), std::pow(1 + alpha * alpha, t / 2.0), 1e-12);
  }
}

TEST(DynamicsTest, ExtragradientContracts) {
  ProfileParams p = {{1.0}, {0.0}};
  const double alpha = 0.1, beta = 0.1;
  // Per-step factor sqrt((1 - alpha beta)^2 + alpha^2).
  const double factor = std::sqrt((1 - alpha * beta) * (1 - alpha * beta) + alpha * alpha);
  int calls = 0;
  auto grad = [&](const ProfileParams& q) {
    ++calls;
    return Bilinear(q);
  };
  for (int t = 1; t <= 200; ++t) {
    ExtragradientStep(p, grad, alpha, beta);
    EXPECT_NEAR(Norm(p), std::pow(factor, t), 1e-12);
  }
  EXPECT_EQ(calls, 400);
  EXPECT_LT(Norm(p), 0.5);
}

TEST(DynamicsTest, OptimisticConvergesOnBilinear) {
  ProfileParams p = {{1.0}, {0.0}};
  ProfileGradient prev = Bilinear(p);
  double max_norm = 0;
  for (int t = 0; t < 2000; ++t) {
    const ProfileGradient g = Bilinear(p);
    OptimisticStep(p, g, prev, 0.1, 0.1);
    prev = g;
    max_norm = std::max(max_norm, Norm(p));
  }
  EXPECT_LT(max_norm, 1.1);
  EXPECT_LT(Norm(p), 0.1);
}

TEST(DynamicsTest, ZeroBetaReducesToSimultaneous) {
  ProfileParams a = {{0.3, -0.2}, {0.5}}, b = a, c = a;
  const ProfileGradient g = {{1.0, 2.0}, {-3.0}};
  const ProfileGradient other = {{7.0, 7.0}, {7.0}};
  SimultaneousStep(a, g, 0.01);
  OptimisticStep(b, g, other, 0.01, 0.0);
  ExtragradientStep(c, [&](const ProfileParams&) { return g; }, 0.01, 0.0);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(DynamicsTest, PlayerOptimisticUsesCurrentGradientFirst) {
  std::vector<double> x = {0.0, 0.0};
  PlayerOptimizerState st;
  OptimisticPlayerStep(x, {1.0, 2.0}, 0.5, 0.25, st);
  EXPECT_EQ(x, (std::vector<double>{0.5, 1.0}));
  EXPECT_TRUE(st.has_prev);
  EXPECT_EQ(st.steps, 1u);
  OptimisticPlayerStep(x, {3.0, 0.0}, 0.5, 0.25, st);
  // 0.5 + 0.5*3 + 0.25*(3-1), 1 + 0 + 0.25*(0-2)
  EXPECT_EQ(x, (std::vector<double>{2.5, 0.5}));
  EXPECT_EQ(st.prev_gradient, (std::vector<double>{3.0, 0.0}));
}

TEST(DynamicsTest, ShapeMismatchThrows) {
  ProfileParams p = {{0.0}, {0.0}};
  EXPECT_THROW(SimultaneousStep(p, {{1.0}}, 0.1), std::invalid_argument);
  EXPECT_THROW(SimultaneousStep(p, {{1.0, 2.0}, {1.0}}, 0.1),
               std::invalid_argument);
}

TEST(DynamicsTest, ConfigValidationAndNames) {
  DynamicsConfig c;
  EXPECT_EQ(c.EffectiveBeta(), c.alpha);
  c.beta = 0.5;
  EXPECT_EQ(c.EffectiveBeta(), 0.5);
  c.alpha = 0.0;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c.alpha = 1e-3;
  c.beta = -1.0;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  for (DynamicsKind k : {DynamicsKind::kSimultaneous, DynamicsKind::kExtragradient,
                         DynamicsKind::kOptimistic}) {
    EXPECT_EQ(ParseDynamicsKind(DynamicsKindName(k)), k);
  }
  EXPECT_THROW(ParseDynamicsKind("adam"), std::invalid_argument);
}

}  // namespace
}  // namespace bbeq
