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

#ifndef BBEQ_PRNG_H_
#define BBEQ_PRNG_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace bbeq {

// Counter-based random stream built on Philox4x32-10.
//
// The 64-bit seed is the Philox key and (stream_id, block) is the 128-bit
// counter, so a stream is a pure function of (seed, stream_id) and any number
// of substreams can be derived without communication. Each Philox block
// yields two 64-bit words.
//
// Normal variates use the Marsaglia polar method on 53-bit uniforms in
// (-1, 1); the second variate of each accepted pair is cached and is part of
// the serialized state. The only transcendental calls are std::log and
// std::sqrt.
//
// A stream is single-owner. Copying a stream forks an identical sequence.
class RngStream {
 public:
  // Full generator state, enough to resume bit-exactly.
  struct State {
    uint64_t seed = 0;
    uint64_t stream_id = 0;
    uint64_t block = 0;     // next Philox block to generate
    uint32_t buffered = 0;  // words left in the output buffer (0..2)
    std::array<uint64_t, 2> buffer{};
    bool has_spare_normal = false;
    double spare_normal = 0.0;

    bool operator==(const State&) const = default;
  };

  RngStream(uint64_t seed, uint64_t stream_id);
  explicit RngStream(const State& state);

  uint64_t NextU64();

  // Uniform on [0, 1) with 53 bits of resolution.
  double NextUniform01();

  // Uniform on [lo, hi]. Throws std::invalid_argument when lo > hi.
  double Uniform(double lo, double hi);

  double StandardNormal();
  void StandardNormal(std::span<double> out);
  std::vector<double> StandardNormal(std::size_t n);

  // Uniform integer in [0, n). n must be positive.
  uint64_t UniformInt(uint64_t n);

  // Independent substream with the same seed. Does not advance this stream.
  RngStream Split(uint64_t child) const;

  uint64_t seed() const { return seed_; }
  uint64_t stream_id() const { return stream_id_; }
  State state() const;

 private:
  void Refill();

  uint64_t seed_;
  uint64_t stream_id_;
  uint64_t block_ = 0;
  uint32_t buffered_ = 0;
  std::array<uint64_t, 2> buffer_{};
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

RngStream SeedStream(uint64_t seed, uint64_t stream_id);

// Hash-combines identifiers into a stream id (SplitMix64 finalizer chain).
// Used to key substreams by (purpose tag, iteration, worker, ...).
uint64_t DeriveStreamId(std::initializer_list<uint64_t> parts);

// One Philox4x32-10 block. Exposed for known-answer tests.
std::array<uint32_t, 4> Philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key);

}  // namespace bbeq

#endif  // BBEQ_PRNG_H_
