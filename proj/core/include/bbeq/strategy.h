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

#ifndef BBEQ_STRATEGY_H_
#define BBEQ_STRATEGY_H_

#include <memory>
#include <span>
#include <vector>

#include "bbeq/policy.h"
#include "bbeq/prng.h"

namespace bbeq {

// An observation-conditioned action distribution.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual void Act(std::span<const double> observation, RngStream& rng,
                   std::span<double> action) const = 0;
};

using StrategySet = std::vector<std::shared_ptr<const Strategy>>;

class PolicyStrategy final : public Strategy {
 public:
  explicit PolicyStrategy(PlayerPolicy policy) : policy_(std::move(policy)) {}

  void Act(std::span<const double> observation, RngStream& rng,
           std::span<double> action) const override {
    SampleAction(policy_.arch, policy_.params, observation, rng, action);
  }

  const PlayerPolicy& policy() const { return policy_; }

 private:
  PlayerPolicy policy_;
};

inline StrategySet MakeStrategySet(const StrategyProfile& profile) {
  StrategySet set;
  set.reserve(profile.size());
  for (const PlayerPolicy& p : profile) {
    set.push_back(std::make_shared<PolicyStrategy>(p));
  }
  return set;
}

}  // namespace bbeq

#endif  // BBEQ_STRATEGY_H_
