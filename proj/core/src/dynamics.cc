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

namespace bbeq {
namespace {

void CheckShapes(const ProfileParams& x, const ProfileGradient& g) {
  if (x.size() != g.size()) {
    throw std::invalid_argument("gradient player count does not match profile");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != g[i].size()) {
      throw std::invalid_argument("gradient dimension does not match profile");
    }
  }
}

}  // namespace

std::string DynamicsKindName(DynamicsKind kind) {
  switch (kind) {
    case DynamicsKind::kSimultaneous:
      return "simultaneous";
    case DynamicsKind::kExtragradient:
      return "extragradient";
    case DynamicsKind::kOptimistic:
      return "optimistic";
  }
  return "simultaneous";
}

DynamicsKind ParseDynamicsKind(const std::string& name) {
  if (name == "simultaneous") return DynamicsKind::kSimultaneous;
  if (name == "extragradient") return DynamicsKind::kExtragradient;
  if (name == "optimistic") return DynamicsKind::kOptimistic;
  throw std::invalid_argument("unknown dynamics: " + name);
}

void DynamicsConfig::Validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be > 0");
  }
  if (beta && !(*beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
}

void SimultaneousPlayerStep(std::vector<double>& x,
                            const std::vector<double>& xi, double alpha) {
  if (x.size() != xi.size()) {
    throw std::invalid_argument("gradient dimension does not match parameters");
  }
  for (std::size_t k = 0; k < x.size(); ++k) x[k] += alpha * xi[k];
}

void OptimisticPlayerStep(std::vector<double>& x, const std::vector<double>& xi,
                          double alpha, double beta,
                          PlayerOptimizerState& state) {
  if (x.size() != xi.size()) {
    throw std::invalid_argument("gradient dimension does not match parameters");
  }
  const std::vector<double>& prev = state.has_prev ? state.prev_gradient : xi;
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] += alpha * xi[k] + beta * (xi[k] - prev[k]);
  }
  state.prev_gradient = xi;
  state.has_prev = true;
  ++state.steps;
}

void SimultaneousStep(ProfileParams& profile, const ProfileGradient& xi,
                      double alpha) {
  CheckShapes(profile, xi);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    SimultaneousPlayerStep(profile[i], xi[i], alpha);
  }
}

void ExtragradientStep(
    ProfileParams& profile,
    const std::function<ProfileGradient(const ProfileParams&)>& grad_fn,
    double alpha, double beta) {
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  const ProfileGradient first = grad_fn(profile);
  CheckShapes(profile, first);
  ProfileParams lookahead = profile;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    for (std::size_t k = 0; k < profile[i].size(); ++k) {
      lookahead[i][k] += beta * first[i][k];
    }
  }
  const ProfileGradient second = grad_fn(lookahead);
  SimultaneousStep(profile, second, alpha);
}

void OptimisticStep(ProfileParams& profile, const ProfileGradient& xi_t,
                    const ProfileGradient& xi_prev, double alpha, double beta) {
  CheckShapes(profile, xi_t);
  CheckShapes(profile, xi_prev);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    for (std::size_t k = 0; k < profile[i].size(); ++k) {
      profile[i][k] += alpha * xi_t[i][k] + beta * (xi_t[i][k] - xi_prev[i][k]);
    }
  }
}

}  // namespace bbeq
