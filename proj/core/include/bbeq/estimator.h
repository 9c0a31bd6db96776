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

#ifndef BBEQ_ESTIMATOR_H_
#define BBEQ_ESTIMATOR_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bbeq/prng.h"

namespace bbeq {

enum class Smoothing { kGaussian, kBall, kRademacher };
enum class Stencil { kSinglePoint, kForward, kCentral };

std::string SmoothingName(Smoothing s);
Smoothing ParseSmoothing(const std::string& name);
std::string StencilName(Stencil s);
Stencil ParseStencil(const std::string& name);

struct EstimatorConfig {
  Smoothing smoothing = Smoothing::kGaussian;
  Stencil stencil = Stencil::kCentral;
  double sigma = 1e-2;
  int n_samples = 1;
  // Evaluate the +/- (or x and x + sigma u) sides on the same episodes.
  bool common_random_numbers = true;
  // Episodes averaged into one utility evaluation.
  int episodes_per_eval = 1;

  void Validate() const;
  bool operator==(const EstimatorConfig&) const = default;
};

// Direction u ~ mu_2: N(0, I_d), uniform on the sphere of radius sqrt(d), or
// uniform on {-1, 1}^d.
void SamplePerturbation(Smoothing smoothing, RngStream& rng,
                        std::span<double> out);
std::vector<double> SamplePerturbation(Smoothing smoothing, std::size_t dim,
                                       RngStream& rng);

// Stencil coefficient divided by sigma, i.e. the directional-derivative
// estimate a / sigma. `f_minus` is f(x - sigma u) for the central stencil and
// f(x) for the forward stencil; it is ignored by the single-point stencil.
double StencilDelta(Stencil stencil, double f_plus, double f_minus,
                    double sigma);

// f(x, episode_rng): one stochastic utility sample at x.
using StochasticObjective =
    std::function<double(std::span<const double>, RngStream&)>;

struct PseudoGradient {
  std::vector<double> value;
  std::size_t evaluations = 0;
};

// (1 / (sigma N)) sum_i a_i u_i with a_i given by the configured stencil.
// With common random numbers, both evaluations of sample i (and for the
// forward stencil every evaluation of the call) start from one episode
// stream drawn from `rng`.
PseudoGradient SmoothedPseudogradient(const StochasticObjective& f,
                                      std::span<const double> x,
                                      const EstimatorConfig& cfg,
                                      RngStream& rng);

}  // namespace bbeq

#endif  // BBEQ_ESTIMATOR_H_
