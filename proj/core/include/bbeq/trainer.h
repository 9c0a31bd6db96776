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

#ifndef BBEQ_TRAINER_H_
#define BBEQ_TRAINER_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "bbeq/checkpoint.h"
#include "bbeq/config.h"
#include "bbeq/eval.h"
#include "bbeq/games.h"
#include "bbeq/strategy.h"

namespace bbeq {

struct RunArtifacts {
  std::string run_dir;
  std::string metrics_csv;
  std::string config_json;
  std::string summary_json;
  std::vector<std::string> strategy_csvs;  // index = epoch
  std::vector<std::string> checkpoints;    // index = epoch
  std::vector<EvalReport> reports;         // epochs run by this call only
};

// He-initialized profile for the configured game and architectures.
StrategyProfile InitialProfile(const Game& game, const ExperimentConfig& cfg);

// Runs epochs x steps_per_epoch distributed iterations under
// <output_dir>/<run_id>. Epoch 0 evaluates the initial profile. Every
// epoch appends metrics rows and writes strategy samples and a checkpoint.
RunArtifacts Train(const ExperimentConfig& cfg);

// Continues from a checkpoint written by Train up to cfg.epochs. The
// metrics file is cut back to the checkpoint's epoch first, so the result
// is identical to an uninterrupted run.
RunArtifacts Resume(const std::string& checkpoint_path,
                    std::optional<int> epochs = std::nullopt);

struct SweepRun {
  int noise_dim = 0;
  int trial = 0;
  uint64_t seed = 0;
  RunArtifacts artifacts;
};

// trials x noise_dims independent runs with distinct derived seeds, under
// <output_dir>/noise<d>_trial<t>, plus <output_dir>/sweep.json.
std::vector<SweepRun> Sweep(const ExperimentConfig& base,
                            const std::vector<int>& noise_dims, int trials);
uint64_t SweepSeed(uint64_t master_seed, int noise_dim, int trial);

// Strategy sample CSV: player,sample,obs_0..,action_0.. One block of
// `n_samples` rows per (player, observation). With no observation list the
// observations come from the game's own state distribution.
void WriteStrategySamples(std::ostream& out, const Game& game,
                          const StrategySet& strategies,
                          const std::vector<int>& players, int n_samples,
                          RngStream& rng,
                          const std::vector<std::vector<double>>& observations = {});

}  // namespace bbeq

#endif  // BBEQ_TRAINER_H_
