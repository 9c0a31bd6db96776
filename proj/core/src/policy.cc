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

#include "bbeq/policy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bbeq {
namespace {

inline double Elu(double x) { return x > 0.0 ? x : std::expm1(x); }

void CheckSize(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string("Forward: ") + what + " has size " +
                                std::to_string(got) + ", expected " +
                                std::to_string(want));
  }
}

}  // namespace

OutputHead OutputHead::SoftmaxConstant(double budget) {
  OutputHead h;
  h.kind = HeadKind::kSoftmaxScaled;
  h.scale_source = ScaleSource::kConstant;
  h.scale = budget;
  return h;
}

OutputHead OutputHead::SoftmaxFromObservation(int index) {
  OutputHead h;
  h.kind = HeadKind::kSoftmaxScaled;
  h.scale_source = ScaleSource::kFromObservation;
  h.scale_index = index;
  return h;
}

OutputHead OutputHead::AbsoluteValue() {
  OutputHead h;
  h.kind = HeadKind::kAbsoluteValue;
  return h;
}

OutputHead OutputHead::Identity() { return OutputHead{}; }

OutputHead OutputHead::ClampedIdentity(double lo, double hi) {
  OutputHead h;
  h.clamp = std::make_pair(lo, hi);
  return h;
}

std::string HeadKindName(HeadKind kind) {
  switch (kind) {
    case HeadKind::kSoftmaxScaled:
      return "softmax_scaled";
    case HeadKind::kAbsoluteValue:
      return "absolute_value";
    case HeadKind::kIdentity:
      return "identity";
  }
  return "identity";
}

HeadKind ParseHeadKind(const std::string& name) {
  if (name == "softmax_scaled") return HeadKind::kSoftmaxScaled;
  if (name == "absolute_value") return HeadKind::kAbsoluteValue;
  if (name == "identity") return HeadKind::kIdentity;
  throw std::invalid_argument("unknown head kind: " + name);
}

void PolicyArchitecture::Validate() const {
  if (obs_dim < 0 || noise_dim < 0) {
    throw std::invalid_argument("PolicyArchitecture: negative dimension");
  }
  if (action_dim < 1) {
    throw std::invalid_argument("PolicyArchitecture: action_dim must be >= 1");
  }
  for (int width : hidden) {
    if (width < 1) {
      throw std::invalid_argument("PolicyArchitecture: hidden width < 1");
    }
  }
  if (head.kind == HeadKind::kSoftmaxScaled &&
      head.scale_source == OutputHead::ScaleSource::kFromObservation &&
      (head.scale_index < 0 || head.scale_index >= obs_dim)) {
    throw std::invalid_argument(
        "PolicyArchitecture: softmax scale index outside observation");
  }
}

std::size_t ParamCount(const PolicyArchitecture& arch) {
  std::size_t count = 0;
  int fan_in = arch.input_dim();
  for (int width : arch.hidden) {
    count += static_cast<std::size_t>(fan_in) * width + width;
    fan_in = width;
  }
  count += static_cast<std::size_t>(fan_in) * arch.action_dim + arch.action_dim;
  return count;
}

ParamVector HeInit(const PolicyArchitecture& arch, RngStream& rng) {
  arch.Validate();
  ParamVector params;
  params.reserve(ParamCount(arch));
  int fan_in = arch.input_dim();
  auto add_layer = [&](int fan_out) {
    const double stddev = std::sqrt(2.0 / fan_in);
    for (int i = 0; i < fan_in * fan_out; ++i) {
      params.push_back(stddev * rng.StandardNormal());
    }
    params.insert(params.end(), fan_out, 0.0);
    fan_in = fan_out;
  };
  for (int width : arch.hidden) add_layer(width);
  add_layer(arch.action_dim);
  return params;
}

void Forward(const PolicyArchitecture& arch, std::span<const double> params,
             std::span<const double> observation, std::span<const double> noise,
             std::span<double> action) {
  CheckSize(params.size(), ParamCount(arch), "params");
  CheckSize(observation.size(), arch.obs_dim, "observation");
  CheckSize(noise.size(), arch.noise_dim, "noise");
  CheckSize(action.size(), arch.action_dim, "action");

  thread_local std::vector<double> in_buf;
  thread_local std::vector<double> out_buf;
  in_buf.assign(observation.begin(), observation.end());
  in_buf.insert(in_buf.end(), noise.begin(), noise.end());

  const double* p = params.data();
  const std::size_t n_layers = arch.hidden.size() + 1;
  for (std::size_t layer = 0; layer < n_layers; ++layer) {
    const bool last = layer + 1 == n_layers;
    const int fan_in = static_cast<int>(in_buf.size());
    const int fan_out = last ? arch.action_dim : arch.hidden[layer];
    const double* bias = p + static_cast<std::size_t>(fan_in) * fan_out;
    out_buf.resize(fan_out);
    for (int o = 0; o < fan_out; ++o) {
      const double* row = p + static_cast<std::size_t>(o) * fan_in;
      double acc = bias[o];
      for (int i = 0; i < fan_in; ++i) acc += row[i] * in_buf[i];
      out_buf[o] = last ? acc : Elu(acc);
    }
    p = bias + fan_out;
    std::swap(in_buf, out_buf);
  }

  const OutputHead& head = arch.head;
  switch (head.kind) {
    case HeadKind::kSoftmaxScaled: {
      const double scale =
          head.scale_source == OutputHead::ScaleSource::kConstant
              ? head.scale
              : observation[head.scale_index];
      const double max_logit = *std::max_element(in_buf.begin(), in_buf.end());
      double total = 0.0;
      for (int k = 0; k < arch.action_dim; ++k) {
        action[k] = std::exp(in_buf[k] - max_logit);
        total += action[k];
      }
      for (double& a : action) a = scale * (a / total);
      break;
    }
    case HeadKind::kAbsoluteValue:
      for (int k = 0; k < arch.action_dim; ++k) action[k] = std::fabs(in_buf[k]);
      break;
    case HeadKind::kIdentity:
      std::copy(in_buf.begin(), in_buf.end(), action.begin());
      break;
  }
  if (head.clamp) {
    for (double& a : action) a = std::clamp(a, head.clamp->first, head.clamp->second);
  }
}

std::vector<double> Forward(const PolicyArchitecture& arch,
                            std::span<const double> params,
                            std::span<const double> observation,
                            std::span<const double> noise) {
  std::vector<double> action(arch.action_dim);
  Forward(arch, params, observation, noise, action);
  return action;
}

void SampleAction(const PolicyArchitecture& arch, std::span<const double> params,
                  std::span<const double> observation, RngStream& rng,
                  std::span<double> action) {
  thread_local std::vector<double> noise;
  noise.resize(arch.noise_dim);
  rng.StandardNormal(noise);
  Forward(arch, params, observation, noise, action);
}

std::vector<double> SampleAction(const PolicyArchitecture& arch,
                                 std::span<const double> params,
                                 std::span<const double> observation,
                                 RngStream& rng) {
  std::vector<double> action(arch.action_dim);
  SampleAction(arch, params, observation, rng, action);
  return action;
}

}  // namespace bbeq
