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


#include "bbeq/trainer.h"

#include <filesystem>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "bbeq/checkpoint.h"
#include "bbeq/errors.h"
#include "test_util.h"

namespace bbeq {
namespace {

using testing::CountLines;
using testing::FirstLine;
using testing::ReadAll;
using testing::ScratchDir;

ExperimentConfig Small(const std::string& dir) {
  ExperimentConfig cfg;
  cfg.run_id = "small";
  cfg.output_dir = dir;
  cfg.seed = 21;
  cfg.noise_dim = 1;
  cfg.hidden = {4};
  cfg.epochs = 3;
  cfg.steps_per_epoch = 40;
  cfg.dynamics.alpha = 1e-3;
  cfg.estimator.sigma = 0.05;
  cfg.eval.n_obs_samples = 10;
  cfg.eval.n_state_samples = 20;
  cfg.eval.grid_resolution = 20;
  cfg.n_strategy_samples = 5;
  return cfg;
}

std::string Golden(const std::string& name) {
  return ReadAll(std::string(BBEQ_GOLDEN_DIR) + "/" + name);
}

TEST(TrainerTest, WritesAllArtifacts) {
  const ExperimentConfig cfg = Small(ScratchDir("trainer_artifacts"));
  const RunArtifacts art = Train(cfg);
  EXPECT_EQ(FirstLine(art.metrics_csv) + "\n", Golden("metrics_header.csv"));
  // Header plus one row per player for epochs 0..3.
  EXPECT_EQ(CountLines(art.metrics_csv), 1u + 4 * 2);
  EXPECT_EQ(art.reports.size(), 4u);
  ASSERT_EQ(art.strategy_csvs.size(), 4u);
  for (const auto& path : art.strategy_csvs) {
    EXPECT_EQ(FirstLine(path) + "\n", Golden("strategy_header_auction.csv"));
    EXPECT_EQ(CountLines(path), 1u + 2 * 5);
  }
  EXPECT_EQ(ParseExperimentConfig(ReadAll(art.config_json)), cfg);
  const std::string summary = ReadAll(art.summary_json);
  EXPECT_NE(summary.find("final_nashconv"), std::string::npos);
  const Checkpoint last = LoadCheckpoint(art.checkpoints.back());
  EXPECT_EQ(last.epoch, 3);
  EXPECT_EQ(last.state.iteration, 3u * 40);
}

TEST(TrainerTest, ZeroStepsKeepsInitialProfile) {
  ExperimentConfig cfg = Small(ScratchDir("trainer_zero"));
  cfg.steps_per_epoch = 0;
  cfg.epochs = 2;
  const RunArtifacts art = Train(cfg);
  const auto game = MakeGame(cfg.game);
  const StrategyProfile init = InitialProfile(*game, cfg);
  for (const auto& path : art.checkpoints) {
    EXPECT_EQ(LoadCheckpoint(path).state.profile, init);
  }
  EXPECT_EQ(art.reports.size(), 3u);
}

TEST(TrainerTest, MetricsAreByteIdenticalAcrossRuns) {
  const RunArtifacts a = Train(Small(ScratchDir("trainer_det_a")));
  const RunArtifacts b = Train(Small(ScratchDir("trainer_det_b")));
  EXPECT_EQ(ReadAll(a.metrics_csv), ReadAll(b.metrics_csv));
  EXPECT_EQ(ReadAll(a.strategy_csvs.back()), ReadAll(b.strategy_csvs.back()));
  ExperimentConfig other = Small(ScratchDir("trainer_det_c"));
  other.seed = 22;
  EXPECT_NE(ReadAll(Train(other).metrics_csv), ReadAll(a.metrics_csv));
}

TEST(TrainerTest, ResumeReproducesUninterruptedRun) {
  const RunArtifacts full = Train(Small(ScratchDir("trainer_full")));
  const std::string full_metrics = ReadAll(full.metrics_csv);
  const std::string full_last = ReadAll(full.checkpoints.back());

  const RunArtifacts resumed = Resume(full.checkpoints[1]);
  EXPECT_EQ(ReadAll(resumed.metrics_csv), full_metrics);
  EXPECT_EQ(ReadAll(resumed.checkpoints.back()), full_last);
  EXPECT_EQ(resumed.reports.size(), 2u);

  // Extending the run adds epochs after the last one.
  const RunArtifacts longer = Resume(full.checkpoints.back(), 4);
  EXPECT_EQ(CountLines(longer.metrics_csv), 1u + 5 * 2);
  EXPECT_EQ(ReadAll(longer.metrics_csv).rfind(full_metrics, 0), 0u);
}

TEST(TrainerTest, SweepRunsEveryNoiseAndTrial) {
  const std::string dir = ScratchDir("trainer_sweep");
  ExperimentConfig cfg = Small(dir);
  cfg.epochs = 1;
  cfg.steps_per_epoch = 5;
  const auto runs = Sweep(cfg, {0, 2}, 2);
  ASSERT_EQ(runs.size(), 4u);
  std::set<uint64_t> seeds;
  for (const auto& r : runs) {
    seeds.insert(r.seed);
    EXPECT_EQ(r.seed, SweepSeed(cfg.seed, r.noise_dim, r.trial));
    EXPECT_TRUE(std::filesystem::exists(r.artifacts.metrics_csv));
    const Checkpoint c = LoadCheckpoint(r.artifacts.checkpoints.back());
    EXPECT_EQ(c.state.profile[0].arch.noise_dim, r.noise_dim);
  }
  EXPECT_EQ(seeds.size(), 4u);
  EXPECT_TRUE(std::filesystem::exists(dir + "/sweep.json"));
  EXPECT_THROW(Sweep(cfg, {}, 1), ConfigError);
}

TEST(TrainerTest, DivergenceAbortsWithStep) {
  ExperimentConfig cfg = Small(ScratchDir("trainer_nan"));
  cfg.dynamics.alpha = 1e306;
  cfg.steps_per_epoch = 50;
  try {
    Train(cfg);
    FAIL() << "expected NonFiniteError";
  } catch (const NonFiniteError& e) {
    EXPECT_LT(e.step(), 50u);
  }
}

TEST(StrategySamplesTest, FixedObservationsAndHeaders) {
  GameConfig g;
  g.kind = GameKind::kBlotto;
  auto game = MakeGame(g);
  ExperimentConfig cfg;
  cfg.game = g;
  const StrategySet s = MakeStrategySet(InitialProfile(*game, cfg));
  std::ostringstream out;
  RngStream rng(1, 0);
  WriteStrategySamples(out, *game, s, {1}, 3, rng);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header + "\n", Golden("strategy_header_blotto.csv"));

  GameConfig a;
  auto auction = MakeGame(a);
  cfg.game = a;
  const StrategySet sa = MakeStrategySet(InitialProfile(*auction, cfg));
  std::ostringstream fixed;
  WriteStrategySamples(fixed, *auction, sa, {0}, 2, rng, {{0.0}, {0.5}});
  const std::string text = fixed.str();
  EXPECT_NE(text.find("\n0,1,0.5,"), std::string::npos);
  std::ostringstream bad;
  EXPECT_THROW(WriteStrategySamples(bad, *auction, sa, {0}, 2, rng, {{0.1, 0.2}}),
               std::invalid_argument);
}

}  // namespace
}  // namespace bbeq
