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

#ifndef BBEQ_TESTS_TEST_UTIL_H_
#define BBEQ_TESTS_TEST_UTIL_H_

#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "bbeq/games.h"
#include "bbeq/policy.h"
#include "bbeq/prng.h"

namespace bbeq::testing {

// One player, no state, payoff g . a. With a policy that has no inputs and
// no hidden layers the action is the bias vector, so utility is exactly
// linear in the parameters.
class LinearGame final : public Game {
 public:
  explicit LinearGame(std::vector<double> g, int n_players = 1)
      : Game(MakeConfig(n_players)), g_(std::move(g)) {}

  std::string Name() const override { return "linear"; }
  int StateDim() const override { return 0; }
  int ObsDim(int) const override { return 0; }
  int ActionDim() const override { return static_cast<int>(g_.size()); }
  OutputHead Head(int) const override { return OutputHead::Identity(); }
  ActionSpace GetActionSpace(int) const override {
    ActionSpace s;
    s.dim = ActionDim();
    return s;
  }
  void SampleState(RngStream&, std::span<double>) const override {}
  void Observe(std::span<const double>, int, std::span<double>) const override {}
  void SampleStateGivenObs(int, std::span<const double>, RngStream&,
                           std::span<double>) const override {}
  void Payoff(std::span<const double>, std::span<const double> actions,
              RngStream&, std::span<double> payoffs) const override {
    const std::size_t d = g_.size();
    for (int i = 0; i < NumPlayers(); ++i) {
      payoffs[i] = std::inner_product(g_.begin(), g_.end(),
                                      actions.begin() + i * d, 0.0);
    }
  }

  PlayerPolicy BiasPolicy(std::vector<double> bias) const {
    PlayerPolicy p;
    p.arch.hidden = {};
    p.arch.action_dim = ActionDim();
    p.arch.head = OutputHead::Identity();
    p.params = std::move(bias);
    return p;
  }

 private:
  static GameConfig MakeConfig(int n_players) {
    GameConfig c;
    c.kind = GameKind::kVisibility;
    c.n_players = n_players;
    return c;
  }
  std::vector<double> g_;
};

// Fresh, empty scratch directory under the build tree.
inline std::string ScratchDir(const std::string& name) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "bbeq_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

inline std::string ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string FirstLine(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  return line;
}

inline std::size_t CountLines(const std::string& path) {
  std::ifstream in(path);
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace bbeq::testing

#endif  // BBEQ_TESTS_TEST_UTIL_H_
