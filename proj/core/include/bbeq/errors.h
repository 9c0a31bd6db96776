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

#ifndef BBEQ_ERRORS_H_
#define BBEQ_ERRORS_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bbeq {

// A configuration, checkpoint or snapshot document failed to parse or
// validate. key() names the offending key path, e.g. "game.n_players".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message),
        key_(std::move(key)),
        detail_(message) {}
  const std::string& key() const { return key_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string key_;
  std::string detail_;
};

// A parameter became NaN or infinite. step() is the 0-based global
// iteration whose update produced it.
class NonFiniteError : public std::runtime_error {
 public:
  explicit NonFiniteError(uint64_t step)
      : std::runtime_error("non-finite parameter after step " +
                           std::to_string(step)),
        step_(step) {}
  uint64_t step() const { return step_; }

 private:
  uint64_t step_;
};

}  // namespace bbeq

#endif  // BBEQ_ERRORS_H_
