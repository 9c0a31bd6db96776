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

#include "bbeq/checkpoint.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bbeq/errors.h"
#include "json_io.h"

namespace bbeq {
namespace {

constexpr int kFormatVersion = 1;

}  // namespace

std::string RenderCheckpoint(const Checkpoint& c) {
  internal::Json j;
  j["format_version"] = kFormatVersion;
  j["epoch"] = c.epoch;
  j["config"] = internal::ToJson(c.config);
  j["state"] = internal::ToJson(c.state);
  return internal::Render(j);
}

Checkpoint ParseCheckpoint(const std::string& text) {
  const internal::Json j = internal::ParseText(text, "checkpoint");
  internal::ObjectReader r(j, "");
  int version = 0;
  r.Required("format_version", version);
  if (version != kFormatVersion) {
    throw ConfigError("format_version",
                      "unsupported version " + std::to_string(version));
  }
  Checkpoint c;
  r.Required("epoch", c.epoch);
  r.Required("config", c.config);
  r.Required("state", c.state);
  r.Finish();
  if (c.state.profile.size() != static_cast<std::size_t>(c.config.game.n_players)) {
    throw ConfigError("state.profile", "player count does not match config");
  }
  return c;
}

void SaveCheckpoint(const Checkpoint& checkpoint, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out << RenderCheckpoint(checkpoint);
    if (!out.flush()) throw std::runtime_error("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read checkpoint " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return ParseCheckpoint(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(e.key(), e.detail() + " (in " + path + ")");
  }
}

}  // namespace bbeq
