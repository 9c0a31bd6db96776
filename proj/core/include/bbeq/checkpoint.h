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

#ifndef BBEQ_CHECKPOINT_H_
#define BBEQ_CHECKPOINT_H_

#include <string>

#include "bbeq/config.h"
#include "bbeq/distributed.h"

namespace bbeq {

// Everything needed to continue a run bit-exactly after `epoch` epochs.
// Training randomness is counter-based, so (seed, iteration) inside the
// training state stands in for the generator state.
struct Checkpoint {
  ExperimentConfig config;
  int epoch = 0;
  TrainingState state;

  bool operator==(const Checkpoint&) const = default;
};

std::string RenderCheckpoint(const Checkpoint& checkpoint);
Checkpoint ParseCheckpoint(const std::string& text);

// Writes through a temporary file and a rename.
void SaveCheckpoint(const Checkpoint& checkpoint, const std::string& path);
// Throws ConfigError mentioning `path` if unreadable or malformed.
Checkpoint LoadCheckpoint(const std::string& path);

}  // namespace bbeq

#endif  // BBEQ_CHECKPOINT_H_
