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

#include "bbeq/estimator.h"

#include <cmath>
#include <stdexcept>

namespace bbeq {

std::string SmoothingName(Smoothing s) {
  switch (s) {
    case Smoothing::kGaussian:
      return "gaussian";
    case Smoothing::kBall:
      return "ball";
    case Smoothing::kRademacher:
      return "rademacher";
  }
  return "gaussian";
}

Smoothing ParseSmoothing(const std::string& name) {
  if (name == "gaussian") return Smoothing::kGaussian;
  if (name == "ball") return Smoothing::kBall;
  if (name == "rademacher") return Smoothing::kRademacher;
  throw std::invalid_argument("unknown smoothing: " + name);
}

std::string StencilName(Stencil s) {
  switch (s) {
    case Stencil::kSinglePoint:
      return "single_point";
    case Stencil::kForward:
      return "forward";
    case Stencil::kCentral:
      return "central";
  }
  return "central";
}

Stencil ParseStencil(const std::string& name) {
  if (name == "single_point") return Stencil::kSinglePoint;
  if (name == "forward") return Stencil::kForward;
  if (name == "central") return Stencil::kCentral;
  throw std::invalid_argument("unknown stencil: " + name);
}

void EstimatorConfig::Validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("sigma must be > 0");
  }
  if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  if (episodes_per_eval < 1) {
    throw std::invalid_argument("episodes_per_eval must be >= 1");
  }
}

void SamplePerturbation(Smoothing smoothing, RngStream& rng,
                        std::span<double> out) {
  switch (smoothing) {
    case Smoothing::kGaussian:
      rng.StandardNormal(out);
      return;
    case Smoothing::kBall: {
      // Normalized Gaussian, rescaled to radius sqrt(d).
      double norm2;
      do {
        rng.StandardNormal(out);
        norm2 = 0.0;
        for (double v : out) norm2 += v * v;
      } while (norm2 == 0.0);
      const double scale = std::sqrt(static_cast<double>(out.size()) / norm2);
      for (double& v : out) v *= scale;
      return;
    }
    case Smoothing::kRademacher: {
      uint64_t bits = 0;
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (i % 64 == 0) bits = rng.NextU64();
        out[i] = (bits & 1u) ? 1.0 : -1.0;
        bits >>= 1;
      }
      return;
    }
  }
}

std::vector<double> SamplePerturbation(Smoothing smoothing, std::size_t dim,
                                       RngStream& rng) {
  std::vector<double> u(dim);
  SamplePerturbation(smoothing, rng, u);
  return u;
}

double StencilDelta(Stencil stencil, double f_plus, double f_minus,
                    double sigma) {
  switch (stencil) {
    case Stencil::kSinglePoint:
      return f_plus / sigma;
    case Stencil::kForward:
      return (f_plus - f_minus) / sigma;
    case Stencil::kCentral:
      return (f_plus - f_minus) / (2.0 * sigma);
  }
  return 0.0;
}

PseudoGradient SmoothedPseudogradient(const StochasticObjective& f,
                                      std::span<const double> x,
                                      const EstimatorConfig& cfg,
                                      RngStream& rng) {
  cfg.Validate();
  const std::size_t d = x.size();
  if (d == 0) throw std::invalid_argument("SmoothedPseudogradient: empty x");

  PseudoGradient out;
  out.value.assign(d, 0.0);
  std::vector<double> u(d), probe(d);

  // Episode stream shared by every evaluation of the call under CRN.
  const uint64_t shared_episode_id = rng.NextU64();
  double f_center = 0.0;
  if (cfg.stencil == Stencil::kForward) {
    RngStream episode_rng(rng.seed(), shared_episode_id);
    f_center = f(x, episode_rng);
    ++out.evaluations;
  }

  for (int i = 0; i < cfg.n_samples; ++i) {
    SamplePerturbation(cfg.smoothing, rng, u);
    const uint64_t plus_id = cfg.common_random_numbers && cfg.stencil == Stencil::kForward
                                 ? shared_episode_id
                                 : rng.NextU64();
    const uint64_t minus_id =
        cfg.common_random_numbers ? plus_id : rng.NextU64();

    for (std::size_t k = 0; k < d; ++k) probe[k] = x[k] + cfg.sigma * u[k];
    RngStream plus_rng(rng.seed(), plus_id);
    const double f_plus = f(probe, plus_rng);
    ++out.evaluations;

    double f_minus = f_center;
    if (cfg.stencil == Stencil::kCentral) {
      for (std::size_t k = 0; k < d; ++k) probe[k] = x[k] - cfg.sigma * u[k];
      RngStream minus_rng(rng.seed(), minus_id);
      f_minus = f(probe, minus_rng);
      ++out.evaluations;
    }

    const double delta = StencilDelta(cfg.stencil, f_plus, f_minus, cfg.sigma);
    for (std::size_t k = 0; k < d; ++k) out.value[k] += delta * u[k];
  }
  for (double& v : out.value) v /= cfg.n_samples;
  return out;
}

}  // namespace bbeq
