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

#ifndef BBEQ_POLICY_H_
#define BBEQ_POLICY_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bbeq/prng.h"

namespace bbeq {

enum class HeadKind { kSoftmaxScaled, kAbsoluteValue, kIdentity };

// Maps the last affine layer's output onto the player's action set.
struct OutputHead {
  enum class ScaleSource { kConstant, kFromObservation };

  HeadKind kind = HeadKind::kIdentity;
  // Softmax scale (the player's budget): a constant, or read from
  // observation[scale_index].
  ScaleSource scale_source = ScaleSource::kConstant;
  double scale = 1.0;
  int scale_index = 0;
  // Optional componentwise clamp applied after the head.
  std::optional<std::pair<double, double>> clamp;

  static OutputHead SoftmaxConstant(double budget);
  static OutputHead SoftmaxFromObservation(int index);
  static OutputHead AbsoluteValue();
  static OutputHead Identity();
  static OutputHead ClampedIdentity(double lo, double hi);

  bool operator==(const OutputHead&) const = default;
};

std::string HeadKindName(HeadKind kind);
HeadKind ParseHeadKind(const std::string& name);

// Feedforward network from concat(observation, noise) to an action.
// Hidden layers use ELU (alpha = 1).
struct PolicyArchitecture {
  int obs_dim = 0;
  int noise_dim = 0;
  std::vector<int> hidden = {10, 10};
  int action_dim = 1;
  OutputHead head;

  int input_dim() const { return obs_dim + noise_dim; }
  void Validate() const;
  bool operator==(const PolicyArchitecture&) const = default;
};

// Flat parameters. Layers are stored in order; each layer is its row-major
// weight block W[out][in] followed by its bias block b[out].
using ParamVector = std::vector<double>;

std::size_t ParamCount(const PolicyArchitecture& arch);

// He initialization: zero biases, weights ~ N(0, 2 / fan_in).
ParamVector HeInit(const PolicyArchitecture& arch, RngStream& rng);

// Evaluates the network. Throws std::invalid_argument on size mismatch.
void Forward(const PolicyArchitecture& arch, std::span<const double> params,
             std::span<const double> observation, std::span<const double> noise,
             std::span<double> action);
std::vector<double> Forward(const PolicyArchitecture& arch,
                            std::span<const double> params,
                            std::span<const double> observation,
                            std::span<const double> noise);

// Draws noise ~ N(0, I) from rng, then calls Forward.
void SampleAction(const PolicyArchitecture& arch, std::span<const double> params,
                  std::span<const double> observation, RngStream& rng,
                  std::span<double> action);
std::vector<double> SampleAction(const PolicyArchitecture& arch,
                                 std::span<const double> params,
                                 std::span<const double> observation,
                                 RngStream& rng);

struct PlayerPolicy {
  PolicyArchitecture arch;
  ParamVector params;

  bool operator==(const PlayerPolicy&) const = default;
};

// One policy per player.
using StrategyProfile = std::vector<PlayerPolicy>;

}  // namespace bbeq

#endif  // BBEQ_POLICY_H_
