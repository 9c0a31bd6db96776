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

#ifndef BBEQ_CONFIG_H_
#define BBEQ_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "bbeq/distributed.h"
#include "bbeq/dynamics.h"
#include "bbeq/estimator.h"
#include "bbeq/eval.h"
#include "bbeq/games.h"

namespace bbeq {

struct ExperimentConfig {
  std::string run_id = "run";
  GameConfig game;
  // Noise inputs per player; `noise_dims`, when non-empty, overrides
  // `noise_dim` player by player.
  int noise_dim = 2;
  std::vector<int> noise_dims;
  std::vector<int> hidden = {10, 10};
  EstimatorConfig estimator;
  DynamicsConfig dynamics;
  // Logical workers; 0 means n_players * estimator.n_samples.
  int n_workers = 0;
  // Physical replicas simulating the logical workers.
  int n_hosts = 1;
  AssignmentRule assignment_rule = AssignmentRule::kRoundRobin;
  int epochs = 10;
  int64_t steps_per_epoch = 10000;
  EvalConfig eval;
  int n_strategy_samples = 10000;
  uint64_t seed = 0;
  std::string output_dir;
  // Off by default so that metrics files are byte-reproducible.
  bool record_wall_time = false;

  int NoiseDimFor(int player) const;
  int EffectiveWorkers() const;
  void Validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

// Strict JSON: unknown keys and ill-typed values throw ConfigError naming
// the key. Missing keys keep their defaults.
ExperimentConfig ParseExperimentConfig(const std::string& json_text);
std::string RenderExperimentConfig(const ExperimentConfig& cfg);
// Throws ConfigError mentioning `path` when the file cannot be read.
ExperimentConfig LoadExperimentConfig(const std::string& path);

// "paper": 10^6 steps per epoch, alpha = 1e-6. "desk": the reduced-budget
// profile used for tests and CI.
void ApplyProfile(ExperimentConfig& cfg, const std::string& profile);

inline constexpr int64_t kPaperStepsPerEpoch = 1000000;
inline constexpr double kPaperAlpha = 1e-6;
inline constexpr int64_t kDeskStepsPerEpoch = 10000;
extern const double kDeskAlpha;

}  // namespace bbeq

#endif  // BBEQ_CONFIG_H_
