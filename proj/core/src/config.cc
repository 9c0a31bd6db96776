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

#include "bbeq/config.h"

#include <fstream>
#include <sstream>

#include "bbeq/errors.h"
#include "json_io.h"

namespace bbeq {

// Largest step that stayed stable across seeds on the complete-information
// all-pay auction with 10^4-step epochs; 3e-4 already diverges on some seeds.
const double kDeskAlpha = 1e-4;

int ExperimentConfig::NoiseDimFor(int player) const {
  if (!noise_dims.empty()) return noise_dims.at(player);
  return noise_dim;
}

int ExperimentConfig::EffectiveWorkers() const {
  return n_workers > 0 ? n_workers : game.n_players * estimator.n_samples;
}

void ExperimentConfig::Validate() const {
  try {
    game.Validate();
  } catch (const std::exception& e) {
    throw ConfigError("game", e.what());
  }
  if (noise_dim < 0) throw ConfigError("noise_dim", "must be >= 0");
  if (!noise_dims.empty()) {
    if (static_cast<int>(noise_dims.size()) != game.n_players) {
      throw ConfigError("noise_dims", "needs one entry per player");
    }
    for (int d : noise_dims) {
      if (d < 0) throw ConfigError("noise_dims", "must be >= 0");
    }
  }
  for (int h : hidden) {
    if (h < 1) throw ConfigError("hidden", "layer widths must be >= 1");
  }
  try {
    estimator.Validate();
  } catch (const std::exception& e) {
    throw ConfigError("estimator", e.what());
  }
  try {
    dynamics.Validate();
  } catch (const std::exception& e) {
    throw ConfigError("alpha", e.what());
  }
  if (n_workers < 0) throw ConfigError("n_workers", "must be >= 0");
  if (n_hosts < 1) throw ConfigError("n_hosts", "must be >= 1");
  if (epochs < 1) throw ConfigError("epochs", "must be >= 1");
  if (steps_per_epoch < 0) throw ConfigError("steps_per_epoch", "must be >= 0");
  try {
    eval.Validate();
  } catch (const std::exception& e) {
    throw ConfigError("eval", e.what());
  }
  if (n_strategy_samples < 0) {
    throw ConfigError("n_strategy_samples", "must be >= 0");
  }
}

void ApplyProfile(ExperimentConfig& cfg, const std::string& profile) {
  if (profile == "paper") {
    cfg.steps_per_epoch = kPaperStepsPerEpoch;
    cfg.dynamics.alpha = kPaperAlpha;
  } else if (profile == "desk") {
    cfg.steps_per_epoch = kDeskStepsPerEpoch;
    cfg.dynamics.alpha = kDeskAlpha;
  } else {
    throw ConfigError("profile", "expected paper or desk, got " + profile);
  }
}

namespace internal {

Json ToJson(const EvalConfig& c) {
  Json j;
  j["n_obs_samples"] = c.n_obs_samples;
  j["n_state_samples"] = c.n_state_samples;
  j["grid_resolution"] = c.grid_resolution;
  j["simplex_divisions"] = c.simplex_divisions;
  j["multi_item_resolution"] = c.multi_item_resolution;
  j["n_opponent_action_samples"] = c.n_opponent_action_samples;
  return j;
}

void ReadValue(const Json& j, const std::string& path, EvalConfig& out) {
  ObjectReader r(j, path);
  r.Optional("n_obs_samples", out.n_obs_samples);
  r.Optional("n_state_samples", out.n_state_samples);
  r.Optional("grid_resolution", out.grid_resolution);
  r.Optional("simplex_divisions", out.simplex_divisions);
  r.Optional("multi_item_resolution", out.multi_item_resolution);
  r.Optional("n_opponent_action_samples", out.n_opponent_action_samples);
  r.Finish();
  try {
    out.Validate();
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

Json ToJson(const ExperimentConfig& c) {
  Json j;
  j["run_id"] = c.run_id;
  j["seed"] = c.seed;
  j["game"] = ToJson(c.game);
  j["noise_dim"] = c.noise_dim;
  j["noise_dims"] = c.noise_dims;
  j["hidden"] = c.hidden;
  j["estimator"] = ToJson(c.estimator);
  const Json dyn = ToJson(c.dynamics);
  for (const auto& item : dyn.items()) j[item.key()] = item.value();
  j["n_workers"] = c.n_workers;
  j["n_hosts"] = c.n_hosts;
  j["assignment_rule"] = AssignmentRuleName(c.assignment_rule);
  j["epochs"] = c.epochs;
  j["steps_per_epoch"] = c.steps_per_epoch;
  j["eval"] = ToJson(c.eval);
  j["n_strategy_samples"] = c.n_strategy_samples;
  j["output_dir"] = c.output_dir;
  j["record_wall_time"] = c.record_wall_time;
  return j;
}

void ReadValue(const Json& j, const std::string& path, ExperimentConfig& out) {
  ObjectReader r(j, path);
  r.Optional("run_id", out.run_id);
  r.Optional("seed", out.seed);
  r.Optional("game", out.game);
  r.Optional("noise_dim", out.noise_dim);
  r.Optional("noise_dims", out.noise_dims);
  r.Optional("hidden", out.hidden);
  r.Optional("estimator", out.estimator);
  {
    // Dynamics keys live at the top level.
    Json dyn = Json::object();
    for (const char* key : {"dynamics", "alpha", "beta"}) {
      if (r.Has(key)) dyn[key] = r.Raw(key);
    }
    ReadValue(dyn, path, out.dynamics);
  }
  r.Optional("n_workers", out.n_workers);
  r.Optional("n_hosts", out.n_hosts);
  if (r.Has("assignment_rule")) {
    std::string rule;
    ReadValue(r.Raw("assignment_rule"), JoinKey(path, "assignment_rule"), rule);
    try {
      out.assignment_rule = ParseAssignmentRule(rule);
    } catch (const std::exception& e) {
      throw ConfigError(JoinKey(path, "assignment_rule"), e.what());
    }
  }
  r.Optional("epochs", out.epochs);
  r.Optional("steps_per_epoch", out.steps_per_epoch);
  r.Optional("eval", out.eval);
  r.Optional("n_strategy_samples", out.n_strategy_samples);
  r.Optional("output_dir", out.output_dir);
  r.Optional("record_wall_time", out.record_wall_time);
  r.Finish();
  out.Validate();
}

}  // namespace internal

ExperimentConfig ParseExperimentConfig(const std::string& json_text) {
  ExperimentConfig cfg;
  internal::ReadValue(internal::ParseText(json_text, "config"), "", cfg);
  return cfg;
}

std::string RenderExperimentConfig(const ExperimentConfig& cfg) {
  return internal::Render(internal::ToJson(cfg));
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ParseExperimentConfig(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(e.key(), e.detail() + " (in " + path + ")");
  }
}

}  // namespace bbeq
