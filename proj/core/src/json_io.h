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

// JSON helpers shared by the config, checkpoint and snapshot readers.
// Internal: not installed, so the public headers stay free of json.hpp.

#ifndef BBEQ_SRC_JSON_IO_H_
#define BBEQ_SRC_JSON_IO_H_

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "bbeq/config.h"
#include "bbeq/distributed.h"
#include "bbeq/dynamics.h"
#include "bbeq/errors.h"
#include "bbeq/estimator.h"
#include "bbeq/games.h"
#include "bbeq/policy.h"
#include "bbeq/prng.h"
#include "json.hpp"

namespace bbeq::internal {

using Json = nlohmann::ordered_json;

std::string JoinKey(const std::string& path, const std::string& key);

// Reads a JSON object field by field and rejects keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path);

  const std::string& path() const { return path_; }
  bool Has(const std::string& key) const { return obj_.contains(key); }
  const Json& Raw(const std::string& key);

  // Leaves `out` at its default when the key is absent.
  template <typename T>
  void Optional(const std::string& key, T& out) {
    if (!obj_.contains(key)) {
      seen_.insert(key);
      return;
    }
    Required(key, out);
  }

  template <typename T>
  void Required(const std::string& key, T& out) {
    seen_.insert(key);
    if (!obj_.contains(key)) throw ConfigError(JoinKey(path_, key), "missing");
    Read(obj_.at(key), JoinKey(path_, key), out);
  }

  // Throws on the first key that was never read.
  void Finish() const;

  template <typename T>
  static void Read(const Json& j, const std::string& path, T& out);

 private:
  const Json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

void ReadValue(const Json& j, const std::string& path, bool& out);
void ReadValue(const Json& j, const std::string& path, int& out);
void ReadValue(const Json& j, const std::string& path, int64_t& out);
void ReadValue(const Json& j, const std::string& path, uint64_t& out);
void ReadValue(const Json& j, const std::string& path, uint32_t& out);
void ReadValue(const Json& j, const std::string& path, double& out);
void ReadValue(const Json& j, const std::string& path, std::string& out);

// Domain types. Each ToJson writes every field; each ReadValue accepts
// partial objects (missing keys keep defaults) and rejects unknown keys.
Json ToJson(const OutputHead& head);
void ReadValue(const Json& j, const std::string& path, OutputHead& out);
Json ToJson(const PolicyArchitecture& arch);
void ReadValue(const Json& j, const std::string& path, PolicyArchitecture& out);
Json ToJson(const PlayerPolicy& policy);
void ReadValue(const Json& j, const std::string& path, PlayerPolicy& out);
Json ToJson(const GameConfig& game);
void ReadValue(const Json& j, const std::string& path, GameConfig& out);
Json ToJson(const EstimatorConfig& cfg);
void ReadValue(const Json& j, const std::string& path, EstimatorConfig& out);
Json ToJson(const DynamicsConfig& cfg);
void ReadValue(const Json& j, const std::string& path, DynamicsConfig& out);
Json ToJson(const PlayerOptimizerState& s);
void ReadValue(const Json& j, const std::string& path,
               PlayerOptimizerState& out);
Json ToJson(const TrainingState& s);
void ReadValue(const Json& j, const std::string& path, TrainingState& out);
Json ToJson(const EvalConfig& cfg);
void ReadValue(const Json& j, const std::string& path, EvalConfig& out);
Json ToJson(const ExperimentConfig& cfg);
void ReadValue(const Json& j, const std::string& path, ExperimentConfig& out);
Json ToJson(const RngStream::State& s);
void ReadValue(const Json& j, const std::string& path, RngStream::State& out);

template <typename T>
void ReadValue(const Json& j, const std::string& path, std::vector<T>& out) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  out.clear();
  out.resize(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    ReadValue(j[k], path + "[" + std::to_string(k) + "]", out[k]);
  }
}

template <typename T>
void ReadValue(const Json& j, const std::string& path, std::optional<T>& out) {
  if (j.is_null()) {
    out.reset();
    return;
  }
  T v{};
  ReadValue(j, path, v);
  out = v;
}

template <typename T>
void ObjectReader::Read(const Json& j, const std::string& path, T& out) {
  ReadValue(j, path, out);
}

// Parses text, reporting syntax errors as ConfigError.
Json ParseText(const std::string& text, const std::string& what);
// Pretty JSON text; doubles printed with round-trip precision.
std::string Render(const Json& j);

}  // namespace bbeq::internal

#endif  // BBEQ_SRC_JSON_IO_H_
