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

#include "cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "bbeq/analytic.h"
#include "bbeq/checkpoint.h"
#include "bbeq/config.h"
#include "bbeq/errors.h"
#include "bbeq/eval.h"
#include "bbeq/games.h"
#include "bbeq/trainer.h"
#include "json.hpp"

namespace bbeq::cli {
namespace {

namespace fs = std::filesystem;

// Usage or configuration problem: exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string OutputRoot(const std::string& flag, const std::string& from_config) {
  if (!flag.empty()) return flag;
  if (!from_config.empty()) return from_config;
  if (const char* env = std::getenv("BBEQ_OUT"); env && *env) return env;
  return "runs";
}

std::vector<double> ParseList(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a number: " + item);
    }
  }
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// --game: a kind name, an inline JSON object or a JSON file.
GameConfig ParseGameSpec(const std::string& spec) {
  for (const char* kind : {"blotto", "auction", "chopstick", "visibility"}) {
    if (spec == kind) {
      GameConfig g;
      g.kind = ParseGameKind(spec);
      return g;
    }
  }
  const std::string text = !spec.empty() && spec.front() == '{' ? spec : ReadFile(spec);
  // Reuse the experiment parser for the game section so errors name keys.
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError("game", std::string("invalid JSON: ") + e.what());
  }
  nlohmann::ordered_json wrapper;
  wrapper["game"] = doc;
  return ParseExperimentConfig(wrapper.dump()).game;
}

struct Target {
  std::unique_ptr<Game> game;
  StrategySet strategies;
  int epoch = 0;
};

// --profile analytic:<kind> | checkpoint:<path> | <path>.
Target LoadTarget(const std::string& profile, const std::string& game_spec,
                  int players, int price_rank) {
  Target t;
  const std::string analytic = "analytic:";
  if (profile.rfind(analytic, 0) == 0) {
    AnalyticKind kind;
    try {
      kind = ParseAnalyticKind(profile.substr(analytic.size()));
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    const GameConfig g = game_spec.empty()
                             ? CanonicalGameConfig(kind, players, price_rank)
                             : ParseGameSpec(game_spec);
    t.game = MakeGame(g);
    try {
      t.strategies = MakeAnalyticProfile(kind, *t.game);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return t;
  }
  std::string path = profile;
  const std::string prefix = "checkpoint:";
  if (path.rfind(prefix, 0) == 0) path = path.substr(prefix.size());
  const Checkpoint ckpt = LoadCheckpoint(path);
  if (!game_spec.empty() && !(ParseGameSpec(game_spec) == ckpt.config.game)) {
    throw UsageError("--game does not match the checkpoint's game");
  }
  t.game = MakeGame(ckpt.config.game);
  t.strategies = MakeStrategySet(ckpt.state.profile);
  t.epoch = ckpt.epoch;
  return t;
}

std::vector<int> ParsePlayers(const std::string& spec, const Game& game) {
  std::vector<int> players;
  if (spec == "all") {
    for (int i = 0; i < game.NumPlayers(); ++i) players.push_back(i);
    return players;
  }
  for (double v : ParseList(spec)) {
    const int p = static_cast<int>(v);
    if (p != v || p < 0 || p >= game.NumPlayers()) {
      throw UsageError("invalid player: " + spec);
    }
    players.push_back(p);
  }
  if (players.empty()) throw UsageError("no players selected");
  return players;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Black-box equilibrium computation for continuous games", "bbeq"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "Train policies and write run artifacts");
  std::string config_path, out_dir, profile_name, resume_path;
  std::optional<uint64_t> seed;
  std::optional<int> epochs;
  train->add_option("--config", config_path, "Experiment config (JSON)");
  train->add_option("--seed", seed, "Master seed (overrides the config)");
  train->add_option("--out", out_dir, "Output root (default: $BBEQ_OUT or ./runs)");
  train->add_option("--profile", profile_name, "Budget profile")
      ->check(CLI::IsMember({"paper", "desk"}));
  train->add_option("--epochs", epochs, "Override the number of epochs");
  train->add_option("--resume", resume_path, "Continue from a checkpoint");

  // eval
  auto* eval = app.add_subcommand("eval", "Estimate NashConv of a profile");
  std::string eval_profile, game_spec, eval_out;
  int n_obs = 0, n_states = 0, grid = 0, players = 2, price_rank = 1;
  uint64_t eval_seed = 0;
  eval->add_option("--profile", eval_profile,
                   "analytic:<kind>, checkpoint:<path> or a checkpoint path")
      ->required();
  eval->add_option("--game", game_spec, "Game kind, inline JSON or JSON file");
  eval->add_option("--n-obs", n_obs, "Observation samples per player");
  eval->add_option("--n-states", n_states, "State samples per observation");
  eval->add_option("--grid", grid, "Points of one-dimensional action grids");
  eval->add_option("--players", players, "Players for analytic:<kind> games");
  eval->add_option("--price-rank", price_rank, "k for analytic:<kind> games");
  eval->add_option("--seed", eval_seed, "Evaluation seed");
  eval->add_option("--out", eval_out, "Directory for eval.csv (default: $BBEQ_OUT or ./runs)");

  // dump-strategy
  auto* dump = app.add_subcommand("dump-strategy", "Sample actions from a profile as CSV");
  std::string dump_ckpt, dump_profile, dump_obs, dump_players = "0", dump_out;
  int dump_samples = 10000;
  uint64_t dump_seed = 0;
  auto* ckpt_opt = dump->add_option("--checkpoint", dump_ckpt, "Checkpoint to sample");
  auto* prof_opt = dump->add_option("--profile", dump_profile, "analytic:<kind> instead of a checkpoint");
  ckpt_opt->excludes(prof_opt);
  dump->add_option("--samples", dump_samples, "Samples per player and observation");
  dump->add_option("--observations", dump_obs, "Comma-separated scalar observations");
  dump->add_option("--player", dump_players, "Player indices (comma-separated) or all");
  dump->add_option("--seed", dump_seed, "Sampling seed");
  dump->add_option("--out", dump_out, "Output CSV (default: stdout)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Train over noise dimensions and trials");
  std::string sweep_config, sweep_out, sweep_profile, noise_dims_text = "0,2";
  int trials = 1;
  std::optional<uint64_t> sweep_seed;
  sweep->add_option("--config", sweep_config, "Base experiment config (JSON)");
  sweep->add_option("--noise-dims", noise_dims_text, "Comma-separated noise dimensions");
  sweep->add_option("--trials", trials, "Trials per noise dimension");
  sweep->add_option("--seed", sweep_seed, "Master seed");
  sweep->add_option("--profile", sweep_profile, "Budget profile")
      ->check(CLI::IsMember({"paper", "desk"}));
  sweep->add_option("--out", sweep_out, "Output root (default: $BBEQ_OUT or ./runs)");

  try {
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "bbeq: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (train->parsed()) {
      if (!resume_path.empty()) {
        Resume(resume_path, epochs);
        return kExitOk;
      }
      if (config_path.empty()) throw UsageError("train needs --config or --resume");
      ExperimentConfig cfg = LoadExperimentConfig(config_path);
      if (!profile_name.empty()) ApplyProfile(cfg, profile_name);
      if (seed) cfg.seed = *seed;
      if (epochs) cfg.epochs = *epochs;
      cfg.output_dir = OutputRoot(out_dir, cfg.output_dir);
      cfg.Validate();
      const RunArtifacts art = Train(cfg);
      out << art.metrics_csv << "\n";
      return kExitOk;
    }
    if (eval->parsed()) {
      Target t = LoadTarget(eval_profile, game_spec, players, price_rank);
      EvalConfig ec;
      if (n_obs > 0) ec.n_obs_samples = n_obs;
      if (n_states > 0) ec.n_state_samples = n_states;
      if (grid > 0) ec.grid_resolution = grid;
      RngStream rng(eval_seed, 0);
      const EvalReport report = EstimateNashConv(*t.game, t.strategies, ec, rng);
      out << EvalReportJson(report);
      const fs::path dir = OutputRoot(eval_out, "");
      fs::create_directories(dir);
      std::ofstream csv(dir / "eval.csv", std::ios::binary | std::ios::trunc);
      if (!csv) throw std::runtime_error("cannot write " + (dir / "eval.csv").string());
      WriteMetricsHeader(csv);
      WriteMetricsRows(csv, "eval", t.epoch, report, 0.0, eval_seed);
      return kExitOk;
    }
    if (dump->parsed()) {
      if (dump_ckpt.empty() == dump_profile.empty()) {
        throw UsageError("dump-strategy needs --checkpoint or --profile");
      }
      if (dump_samples < 0) throw UsageError("--samples must be >= 0");
      Target t;
      try {
        t = LoadTarget(dump_ckpt.empty() ? dump_profile : "checkpoint:" + dump_ckpt,
                       "", 2, 1);
      } catch (const ConfigError& e) {
        throw UsageError(e.what());
      }
      std::vector<std::vector<double>> observations;
      for (double o : ParseList(dump_obs)) observations.push_back({o});
      const std::vector<int> selected = ParsePlayers(dump_players, *t.game);
      RngStream rng(dump_seed, 0);
      if (dump_out.empty()) {
        WriteStrategySamples(out, *t.game, t.strategies, selected, dump_samples,
                             rng, observations);
      } else {
        std::ofstream file(dump_out, std::ios::binary | std::ios::trunc);
        if (!file) throw std::runtime_error("cannot write " + dump_out);
        WriteStrategySamples(file, *t.game, t.strategies, selected, dump_samples,
                             rng, observations);
      }
      return kExitOk;
    }
    if (sweep->parsed()) {
      ExperimentConfig cfg;
      if (!sweep_config.empty()) cfg = LoadExperimentConfig(sweep_config);
      if (!sweep_profile.empty()) ApplyProfile(cfg, sweep_profile);
      if (sweep_seed) cfg.seed = *sweep_seed;
      cfg.output_dir = OutputRoot(sweep_out, cfg.output_dir);
      std::vector<int> dims;
      for (double d : ParseList(noise_dims_text)) {
        if (d < 0 || d != static_cast<int>(d)) throw UsageError("invalid noise dimension");
        dims.push_back(static_cast<int>(d));
      }
      const auto runs = Sweep(cfg, dims, trials);
      for (const auto& r : runs) out << r.artifacts.metrics_csv << "\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "bbeq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "bbeq: invalid configuration: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "bbeq: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace bbeq::cli
