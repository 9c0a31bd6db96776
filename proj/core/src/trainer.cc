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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bbeq/errors.h"
#include "json_io.h"

namespace bbeq {
namespace {

namespace fs = std::filesystem;

constexpr uint64_t kInitTag = 0x696e6974ULL;
constexpr uint64_t kEvalTag = 0x6576616cULL;
constexpr uint64_t kDumpTag = 0x64756d70ULL;
constexpr uint64_t kSweepTag = 0x7377656570ULL;

std::string EpochName(const std::string& prefix, int epoch,
                      const std::string& ext) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%04d%s", prefix.c_str(), epoch, ext.c_str());
  return buf;
}

std::string RunDir(const ExperimentConfig& cfg) {
  const fs::path root = cfg.output_dir.empty() ? fs::path(".") : fs::path(cfg.output_dir);
  return (root / cfg.run_id).string();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out.flush()) throw std::runtime_error("cannot write " + path);
}

std::vector<int> AllPlayers(const Game& game) {
  std::vector<int> players(game.NumPlayers());
  for (int i = 0; i < game.NumPlayers(); ++i) players[i] = i;
  return players;
}

// Rows of the metrics file, header excluded, with epoch <= max_epoch.
std::vector<std::string> MetricsRowsUpTo(const std::string& path,
                                         int max_epoch) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<std::string> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    const int epoch = std::stoi(line.substr(first + 1, second - first - 1));
    if (epoch <= max_epoch) rows.push_back(line);
  }
  return rows;
}

void WriteSummary(const std::string& path, const ExperimentConfig& cfg,
                  const std::string& metrics_path) {
  internal::Json epochs = internal::Json::array();
  std::ifstream in(metrics_path);
  std::string line;
  std::getline(in, line);
  int last_epoch = -1;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 7) continue;
    const int epoch = std::stoi(cells[1]);
    if (epoch == last_epoch) continue;
    last_epoch = epoch;
    epochs.push_back({{"epoch", epoch}, {"nashconv", std::stod(cells[6])}});
  }
  internal::Json j;
  j["run_id"] = cfg.run_id;
  j["seed"] = cfg.seed;
  j["game"] = GameKindName(cfg.game.kind);
  j["epochs"] = cfg.epochs;
  j["steps_per_epoch"] = cfg.steps_per_epoch;
  j["nashconv"] = epochs;
  if (!epochs.empty()) {
    j["initial_nashconv"] = epochs.front()["nashconv"];
    j["final_nashconv"] = epochs.back()["nashconv"];
  }
  WriteFile(path, internal::Render(j));
}

// Shared epoch loop of Train and Resume. Epoch `start` is evaluated only
// when `evaluate_start` is set (a fresh run's epoch 0).
RunArtifacts RunEpochs(const ExperimentConfig& cfg, TrainingState state,
                       int start, bool evaluate_start) {
  const std::unique_ptr<Game> game = MakeGame(cfg.game);
  RunArtifacts art;
  art.run_dir = RunDir(cfg);
  art.metrics_csv = (fs::path(art.run_dir) / "metrics.csv").string();
  art.config_json = (fs::path(art.run_dir) / "config.json").string();
  art.summary_json = (fs::path(art.run_dir) / "summary.json").string();
  const fs::path strat_dir = fs::path(art.run_dir) / "strategies";
  const fs::path ckpt_dir = fs::path(art.run_dir) / "checkpoints";
  fs::create_directories(strat_dir);
  fs::create_directories(ckpt_dir);
  for (int e = 0; e <= cfg.epochs; ++e) {
    art.strategy_csvs.push_back((strat_dir / EpochName("epoch_", e, ".csv")).string());
    art.checkpoints.push_back((ckpt_dir / EpochName("epoch_", e, ".json")).string());
  }

  std::ofstream metrics(art.metrics_csv, std::ios::binary | std::ios::app);
  if (!metrics) throw std::runtime_error("cannot write " + art.metrics_csv);

  WorkerPool pool(*game, std::move(state), cfg.estimator, cfg.dynamics,
                  cfg.EffectiveWorkers(), cfg.n_hosts);

  auto finish_epoch = [&](int epoch, double wall_ms) {
    const TrainingState& s = pool.state();
    RngStream eval_rng(cfg.seed, DeriveStreamId({kEvalTag, static_cast<uint64_t>(epoch)}));
    EvalReport report = EstimateNashConv(*game, s.profile, cfg.eval, eval_rng);
    WriteMetricsRows(metrics, cfg.run_id, epoch, report,
                     cfg.record_wall_time ? wall_ms : 0.0, cfg.seed);
    if (!metrics.flush()) throw std::runtime_error("cannot write " + art.metrics_csv);
    art.reports.push_back(std::move(report));

    if (cfg.n_strategy_samples > 0) {
      std::ofstream out(art.strategy_csvs[epoch], std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write " + art.strategy_csvs[epoch]);
      RngStream dump_rng(cfg.seed, DeriveStreamId({kDumpTag, static_cast<uint64_t>(epoch)}));
      WriteStrategySamples(out, *game, MakeStrategySet(s.profile), AllPlayers(*game),
                           cfg.n_strategy_samples, dump_rng);
    }
    SaveCheckpoint(Checkpoint{cfg, epoch, s}, art.checkpoints[epoch]);
  };

  using Clock = std::chrono::steady_clock;
  if (evaluate_start) finish_epoch(start, 0.0);
  for (int epoch = start + 1; epoch <= cfg.epochs; ++epoch) {
    const auto t0 = Clock::now();
    pool.Run(static_cast<uint64_t>(cfg.steps_per_epoch));
    const double wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    finish_epoch(epoch, wall_ms);
  }
  metrics.close();
  WriteSummary(art.summary_json, cfg, art.metrics_csv);
  return art;
}

}  // namespace

StrategyProfile InitialProfile(const Game& game, const ExperimentConfig& cfg) {
  StrategyProfile profile;
  for (int i = 0; i < game.NumPlayers(); ++i) {
    PlayerPolicy p;
    p.arch = DefaultArchitecture(game, i, cfg.NoiseDimFor(i), cfg.hidden);
    RngStream rng(cfg.seed, DeriveStreamId({kInitTag, static_cast<uint64_t>(i)}));
    p.params = HeInit(p.arch, rng);
    profile.push_back(std::move(p));
  }
  return profile;
}

RunArtifacts Train(const ExperimentConfig& cfg) {
  cfg.Validate();
  const std::unique_ptr<Game> game = MakeGame(cfg.game);
  const std::string run_dir = RunDir(cfg);
  fs::create_directories(run_dir);
  WriteFile((fs::path(run_dir) / "config.json").string(), RenderExperimentConfig(cfg));
  {
    std::ofstream metrics((fs::path(run_dir) / "metrics.csv").string(),
                          std::ios::binary | std::ios::trunc);
    if (!metrics) throw std::runtime_error("cannot write metrics in " + run_dir);
    WriteMetricsHeader(metrics);
  }
  TrainingState state = InitialTrainingState(InitialProfile(*game, cfg), cfg.seed);
  return RunEpochs(cfg, std::move(state), 0, true);
}

RunArtifacts Resume(const std::string& checkpoint_path,
                    std::optional<int> epochs) {
  Checkpoint ckpt = LoadCheckpoint(checkpoint_path);
  ExperimentConfig cfg = ckpt.config;
  if (epochs) cfg.epochs = *epochs;
  cfg.Validate();
  const std::string run_dir = RunDir(cfg);
  const std::string metrics_path = (fs::path(run_dir) / "metrics.csv").string();
  std::vector<std::string> rows;
  if (fs::exists(metrics_path)) rows = MetricsRowsUpTo(metrics_path, ckpt.epoch);
  {
    std::ofstream metrics(metrics_path, std::ios::binary | std::ios::trunc);
    if (!metrics) throw std::runtime_error("cannot write " + metrics_path);
    WriteMetricsHeader(metrics);
    for (const auto& r : rows) metrics << r << "\n";
  }
  WriteFile((fs::path(run_dir) / "config.json").string(), RenderExperimentConfig(cfg));
  return RunEpochs(cfg, std::move(ckpt.state), ckpt.epoch, false);
}

uint64_t SweepSeed(uint64_t master_seed, int noise_dim, int trial) {
  return DeriveStreamId({master_seed, kSweepTag, static_cast<uint64_t>(noise_dim),
                         static_cast<uint64_t>(trial)});
}

std::vector<SweepRun> Sweep(const ExperimentConfig& base,
                            const std::vector<int>& noise_dims, int trials) {
  if (trials < 1) throw ConfigError("trials", "must be >= 1");
  if (noise_dims.empty()) throw ConfigError("noise_dims", "must not be empty");
  std::vector<SweepRun> runs;
  internal::Json manifest = internal::Json::array();
  for (int d : noise_dims) {
    for (int t = 0; t < trials; ++t) {
      ExperimentConfig cfg = base;
      cfg.noise_dim = d;
      cfg.noise_dims.clear();
      cfg.seed = SweepSeed(base.seed, d, t);
      cfg.run_id = "noise" + std::to_string(d) + "_trial" + std::to_string(t);
      SweepRun run{d, t, cfg.seed, Train(cfg)};
      manifest.push_back({{"run_id", cfg.run_id},
                          {"noise_dim", d},
                          {"trial", t},
                          {"seed", cfg.seed},
                          {"metrics", fs::path(run.artifacts.metrics_csv)
                                          .lexically_relative(base.output_dir.empty()
                                                                  ? fs::path(".")
                                                                  : fs::path(base.output_dir))
                                          .string()}});
      runs.push_back(std::move(run));
    }
  }
  internal::Json j;
  j["game"] = GameKindName(base.game.kind);
  j["runs"] = manifest;
  const fs::path root = base.output_dir.empty() ? fs::path(".") : fs::path(base.output_dir);
  WriteFile((root / "sweep.json").string(), internal::Render(j));
  return runs;
}

void WriteStrategySamples(std::ostream& out, const Game& game,
                          const StrategySet& strategies,
                          const std::vector<int>& players, int n_samples,
                          RngStream& rng,
                          const std::vector<std::vector<double>>& observations) {
  const int dim = game.ActionDim();
  int obs_cols = 0;
  for (int p : players) obs_cols = std::max(obs_cols, game.ObsDim(p));
  out << "player,sample";
  for (int k = 0; k < obs_cols; ++k) out << ",obs_" << k;
  for (int k = 0; k < dim; ++k) out << ",action_" << k;
  out << "\n";

  std::vector<double> state(game.StateDim()), action(dim);
  auto row = [&](int p, int s, const std::vector<double>& obs) {
    strategies.at(p)->Act(obs, rng, action);
    out << p << "," << s;
    for (int k = 0; k < obs_cols; ++k) {
      out << ",";
      if (k < static_cast<int>(obs.size())) out << FormatReal(obs[k]);
    }
    for (double a : action) out << "," << FormatReal(a);
    out << "\n";
  };
  for (int p : players) {
    if (observations.empty()) {
      for (int s = 0; s < n_samples; ++s) {
        game.SampleState(rng, state);
        row(p, s, game.Observe(state, p));
      }
      continue;
    }
    for (const auto& obs : observations) {
      if (static_cast<int>(obs.size()) != game.ObsDim(p)) {
        throw std::invalid_argument("observation has " + std::to_string(obs.size()) +
                                    " components, player " + std::to_string(p) +
                                    " observes " + std::to_string(game.ObsDim(p)));
      }
      for (int s = 0; s < n_samples; ++s) row(p, s, obs);
    }
  }
}

}  // namespace bbeq
