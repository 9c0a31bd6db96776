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

#ifndef BBEQ_DYNAMICS_H_
#define BBEQ_DYNAMICS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bbeq {

// Parameters of every player; the unit the dynamics update.
using ProfileParams = std::vector<std::vector<double>>;
// One (pseudo)gradient per player, shaped like ProfileParams.
using ProfileGradient = std::vector<std::vector<double>>;

enum class DynamicsKind { kSimultaneous, kExtragradient, kOptimistic };

std::string DynamicsKindName(DynamicsKind kind);
DynamicsKind ParseDynamicsKind(const std::string& name);

struct DynamicsConfig {
  DynamicsKind kind = DynamicsKind::kSimultaneous;
  double alpha = 1e-6;
  std::optional<double> beta;  // unset: beta = alpha

  double EffectiveBeta() const { return beta.value_or(alpha); }
  void Validate() const;
  bool operator==(const DynamicsConfig&) const = default;
};

// Per-player optimizer state.
struct PlayerOptimizerState {
  std::vector<double> prev_gradient;  // optimistic: xi^{t-1}
  bool has_prev = false;
  uint64_t steps = 0;

  bool operator==(const PlayerOptimizerState&) const = default;
};

// x_i <- x_i + alpha xi_i for every player (ascent on own utility).
void SimultaneousStep(ProfileParams& profile, const ProfileGradient& xi,
                      double alpha);

// x <- x + alpha xi(x + beta xi(x)). Calls grad_fn twice.
void ExtragradientStep(
    ProfileParams& profile,
    const std::function<ProfileGradient(const ProfileParams&)>& grad_fn,
    double alpha, double beta);

// x <- x + alpha xi_t + beta (xi_t - xi_{t-1}).
void OptimisticStep(ProfileParams& profile, const ProfileGradient& xi_t,
                    const ProfileGradient& xi_prev, double alpha, double beta);

// Single-player forms used by the per-player optimizers of the distributed
// loop. `OptimisticPlayerStep` uses xi_{t-1} = xi_t on the first step and
// records xi_t in `state`.
void SimultaneousPlayerStep(std::vector<double>& x,
                            const std::vector<double>& xi, double alpha);
void OptimisticPlayerStep(std::vector<double>& x, const std::vector<double>& xi,
                          double alpha, double beta,
                          PlayerOptimizerState& state);

}  // namespace bbeq

#endif  // BBEQ_DYNAMICS_H_
