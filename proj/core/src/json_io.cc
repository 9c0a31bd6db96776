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

#include "json_io.h"

#include <cmath>

#include <limits>

namespace bbeq::internal {

std::string JoinKey(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

ObjectReader::ObjectReader(const Json& j, std::string path)
    : obj_(j), path_(std::move(path)) {
  if (!j.is_object()) throw ConfigError(path_, "expected an object");
}

const Json& ObjectReader::Raw(const std::string& key) {
  seen_.insert(key);
  if (!obj_.contains(key)) throw ConfigError(JoinKey(path_, key), "missing");
  return obj_.at(key);
}

void ObjectReader::Finish() const {
  for (const auto& item : obj_.items()) {
    if (!seen_.count(item.key())) {
      throw ConfigError(JoinKey(path_, item.key()), "unknown key");
    }
  }
}

void ReadValue(const Json& j, const std::string& path, bool& out) {
  if (!j.is_boolean()) throw ConfigError(path, "expected a boolean");
  out = j.get<bool>();
}

void ReadValue(const Json& j, const std::string& path, int64_t& out) {
  if (j.is_number_unsigned()) {
    const uint64_t v = j.get<uint64_t>();
    if (v > static_cast<uint64_t>(std::numeric_limits<int64_t>::max())) {
      throw ConfigError(path, "integer out of range");
    }
    out = static_cast<int64_t>(v);
    return;
  }
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  out = j.get<int64_t>();
}

void ReadValue(const Json& j, const std::string& path, int& out) {
  int64_t v = 0;
  ReadValue(j, path, v);
  if (v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max()) {
    throw ConfigError(path, "integer out of range");
  }
  out = static_cast<int>(v);
}

void ReadValue(const Json& j, const std::string& path, uint64_t& out) {
  if (!j.is_number_unsigned()) {
    throw ConfigError(path, "expected a non-negative integer");
  }
  out = j.get<uint64_t>();
}

void ReadValue(const Json& j, const std::string& path, uint32_t& out) {
  uint64_t v = 0;
  ReadValue(j, path, v);
  if (v > std::numeric_limits<uint32_t>::max()) {
    throw ConfigError(path, "integer out of range");
  }
  out = static_cast<uint32_t>(v);
}

void ReadValue(const Json& j, const std::string& path, double& out) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  out = j.get<double>();
}

void ReadValue(const Json& j, const std::string& path, std::string& out) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  out = j.get<std::string>();
}

namespace {

// Runs a name parser, turning its exception into a ConfigError at `path`.
template <typename Parse>
auto ParseName(const Json& j, const std::string& path, Parse parse) {
  std::string name;
  ReadValue(j, path, name);
  try {
    return parse(name);
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace

Json ToJson(const OutputHead& head) {
  Json j;
  j["kind"] = HeadKindName(head.kind);
  j["scale_source"] = head.scale_source == OutputHead::ScaleSource::kConstant
                          ? "constant"
                          : "observation";
  j["scale"] = head.scale;
  j["scale_index"] = head.scale_index;
  if (head.clamp) {
    j["clamp"] = Json::array({head.clamp->first, head.clamp->second});
  } else {
    j["clamp"] = nullptr;
  }
  return j;
}

void ReadValue(const Json& j, const std::string& path, OutputHead& out) {
  ObjectReader r(j, path);
  if (r.Has("kind")) out.kind = ParseName(r.Raw("kind"), JoinKey(path, "kind"), ParseHeadKind);
  if (r.Has("scale_source")) {
    std::string src;
    ReadValue(r.Raw("scale_source"), JoinKey(path, "scale_source"), src);
    if (src == "constant") {
      out.scale_source = OutputHead::ScaleSource::kConstant;
    } else if (src == "observation") {
      out.scale_source = OutputHead::ScaleSource::kFromObservation;
    } else {
      throw ConfigError(JoinKey(path, "scale_source"), "unknown value " + src);
    }
  }
  r.Optional("scale", out.scale);
  r.Optional("scale_index", out.scale_index);
  if (r.Has("clamp")) {
    const Json& c = r.Raw("clamp");
    if (c.is_null()) {
      out.clamp.reset();
    } else {
      std::vector<double> v;
      ReadValue(c, JoinKey(path, "clamp"), v);
      if (v.size() != 2) throw ConfigError(JoinKey(path, "clamp"), "expected [lo, hi]");
      out.clamp = std::make_pair(v[0], v[1]);
    }
  }
  r.Finish();
}

Json ToJson(const PolicyArchitecture& arch) {
  Json j;
  j["obs_dim"] = arch.obs_dim;
  j["noise_dim"] = arch.noise_dim;
  j["hidden"] = arch.hidden;
  j["action_dim"] = arch.action_dim;
  j["head"] = ToJson(arch.head);
  return j;
}

void ReadValue(const Json& j, const std::string& path, PolicyArchitecture& out) {
  ObjectReader r(j, path);
  r.Optional("obs_dim", out.obs_dim);
  r.Optional("noise_dim", out.noise_dim);
  r.Optional("hidden", out.hidden);
  r.Optional("action_dim", out.action_dim);
  r.Optional("head", out.head);
  r.Finish();
  try {
    out.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

Json ToJson(const PlayerPolicy& policy) {
  Json j;
  j["arch"] = ToJson(policy.arch);
  j["params"] = policy.params;
  return j;
}

void ReadValue(const Json& j, const std::string& path, PlayerPolicy& out) {
  ObjectReader r(j, path);
  r.Required("arch", out.arch);
  r.Required("params", out.params);
  r.Finish();
  if (out.params.size() != ParamCount(out.arch)) {
    throw ConfigError(JoinKey(path, "params"),
                      "expected " + std::to_string(ParamCount(out.arch)) +
                          " parameters");
  }
}

Json ToJson(const GameConfig& g) {
  Json j;
  j["kind"] = GameKindName(g.kind);
  j["n_players"] = g.n_players;
  j["battlefields"] = g.battlefields;
  j["random_budgets"] = g.random_budgets;
  j["budgets"] = g.budgets;
  j["values"] = g.values;
  j["value_structure"] = ValueStructureName(g.value_structure);
  j["payment"] = PaymentRuleName(g.payment);
  j["price_rank"] = g.price_rank;
  j["bid_upper"] = g.bid_upper;
  return j;
}

void ReadValue(const Json& j, const std::string& path, GameConfig& out) {
  ObjectReader r(j, path);
  if (r.Has("kind")) out.kind = ParseName(r.Raw("kind"), JoinKey(path, "kind"), ParseGameKind);
  r.Optional("n_players", out.n_players);
  r.Optional("battlefields", out.battlefields);
  r.Optional("random_budgets", out.random_budgets);
  r.Optional("budgets", out.budgets);
  r.Optional("values", out.values);
  if (r.Has("value_structure")) {
    out.value_structure = ParseName(r.Raw("value_structure"),
                                    JoinKey(path, "value_structure"),
                                    ParseValueStructure);
  }
  if (r.Has("payment")) {
    out.payment = ParseName(r.Raw("payment"), JoinKey(path, "payment"),
                            ParsePaymentRule);
  }
  r.Optional("price_rank", out.price_rank);
  r.Optional("bid_upper", out.bid_upper);
  r.Finish();
  try {
    out.Validate();
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

Json ToJson(const EstimatorConfig& c) {
  Json j;
  j["smoothing"] = SmoothingName(c.smoothing);
  j["stencil"] = StencilName(c.stencil);
  j["sigma"] = c.sigma;
  j["n_samples"] = c.n_samples;
  j["common_random_numbers"] = c.common_random_numbers;
  j["episodes_per_eval"] = c.episodes_per_eval;
  return j;
}

void ReadValue(const Json& j, const std::string& path, EstimatorConfig& out) {
  ObjectReader r(j, path);
  if (r.Has("smoothing")) {
    out.smoothing = ParseName(r.Raw("smoothing"), JoinKey(path, "smoothing"),
                              ParseSmoothing);
  }
  if (r.Has("stencil")) {
    out.stencil =
        ParseName(r.Raw("stencil"), JoinKey(path, "stencil"), ParseStencil);
  }
  r.Optional("sigma", out.sigma);
  r.Optional("n_samples", out.n_samples);
  r.Optional("common_random_numbers", out.common_random_numbers);
  r.Optional("episodes_per_eval", out.episodes_per_eval);
  r.Finish();
  try {
    out.Validate();
  } catch (const std::exception& e) {
    throw ConfigError(path, e.what());
  }
}

Json ToJson(const DynamicsConfig& c) {
  Json j;
  j["dynamics"] = DynamicsKindName(c.kind);
  j["alpha"] = c.alpha;
  if (c.beta) {
    j["beta"] = *c.beta;
  } else {
    j["beta"] = nullptr;
  }
  return j;
}

void ReadValue(const Json& j, const std::string& path, DynamicsConfig& out) {
  ObjectReader r(j, path);
  if (r.Has("dynamics")) {
    out.kind = ParseName(r.Raw("dynamics"), JoinKey(path, "dynamics"),
                         ParseDynamicsKind);
  }
  r.Optional("alpha", out.alpha);
  r.Optional("beta", out.beta);
  r.Finish();
  try {
    out.Validate();
  } catch (const std::exception& e) {
    const bool alpha_ok = out.alpha > 0.0 && std::isfinite(out.alpha);
    throw ConfigError(JoinKey(path, alpha_ok ? "beta" : "alpha"), e.what());
  }
}

Json ToJson(const PlayerOptimizerState& s) {
  Json j;
  j["prev_gradient"] = s.prev_gradient;
  j["has_prev"] = s.has_prev;
  j["steps"] = s.steps;
  return j;
}

void ReadValue(const Json& j, const std::string& path,
               PlayerOptimizerState& out) {
  ObjectReader r(j, path);
  r.Required("prev_gradient", out.prev_gradient);
  r.Required("has_prev", out.has_prev);
  r.Required("steps", out.steps);
  r.Finish();
}

Json ToJson(const TrainingState& s) {
  Json j;
  j["seed"] = s.seed;
  j["iteration"] = s.iteration;
  Json profile = Json::array();
  for (const auto& p : s.profile) profile.push_back(ToJson(p));
  j["profile"] = profile;
  Json opt = Json::array();
  for (const auto& o : s.optimizer) opt.push_back(ToJson(o));
  j["optimizer"] = opt;
  return j;
}

void ReadValue(const Json& j, const std::string& path, TrainingState& out) {
  ObjectReader r(j, path);
  r.Required("seed", out.seed);
  r.Required("iteration", out.iteration);
  r.Required("profile", out.profile);
  r.Required("optimizer", out.optimizer);
  r.Finish();
  if (out.optimizer.size() != out.profile.size()) {
    throw ConfigError(JoinKey(path, "optimizer"),
                      "one optimizer state per player required");
  }
}

Json ToJson(const RngStream::State& s) {
  Json j;
  j["seed"] = s.seed;
  j["stream_id"] = s.stream_id;
  j["block"] = s.block;
  j["buffered"] = s.buffered;
  j["buffer"] = Json::array({s.buffer[0], s.buffer[1]});
  j["has_spare_normal"] = s.has_spare_normal;
  j["spare_normal"] = s.spare_normal;
  return j;
}

void ReadValue(const Json& j, const std::string& path, RngStream::State& out) {
  ObjectReader r(j, path);
  r.Required("seed", out.seed);
  r.Required("stream_id", out.stream_id);
  r.Required("block", out.block);
  r.Required("buffered", out.buffered);
  std::vector<uint64_t> buffer;
  r.Required("buffer", buffer);
  if (buffer.size() != 2) throw ConfigError(JoinKey(path, "buffer"), "expected 2 words");
  out.buffer = {buffer[0], buffer[1]};
  r.Required("has_spare_normal", out.has_spare_normal);
  r.Required("spare_normal", out.spare_normal);
  r.Finish();
  if (out.buffered > 2) throw ConfigError(JoinKey(path, "buffered"), "must be <= 2");
}

Json ParseText(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", what + ": " + e.what());
  }
}

std::string Render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace bbeq::internal
