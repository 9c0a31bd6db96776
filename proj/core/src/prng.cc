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

#include "bbeq/prng.h"

#include <cmath>
#include <stdexcept>

namespace bbeq {
namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void MulHiLo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
  const uint64_t product = static_cast<uint64_t>(a) * b;
  hi = static_cast<uint32_t>(product >> 32);
  lo = static_cast<uint32_t>(product);
}

inline uint64_t SplitMix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::array<uint32_t, 4> Philox4x32(std::array<uint32_t, 4> ctr,
                                   std::array<uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    uint32_t hi0, lo0, hi1, lo1;
    MulHiLo(kPhiloxM0, ctr[0], hi0, lo0);
    MulHiLo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

RngStream::RngStream(uint64_t seed, uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {}

RngStream::RngStream(const State& s)
    : seed_(s.seed),
      stream_id_(s.stream_id),
      block_(s.block),
      buffered_(s.buffered),
      buffer_(s.buffer),
      has_spare_normal_(s.has_spare_normal),
      spare_normal_(s.spare_normal) {
  if (buffered_ > 2) throw std::invalid_argument("RngStream: bad buffer count");
}

RngStream::State RngStream::state() const {
  return State{seed_,   stream_id_,        block_,      buffered_,
               buffer_, has_spare_normal_, spare_normal_};
}

void RngStream::Refill() {
  const std::array<uint32_t, 4> ctr = {
      static_cast<uint32_t>(block_), static_cast<uint32_t>(block_ >> 32),
      static_cast<uint32_t>(stream_id_),
      static_cast<uint32_t>(stream_id_ >> 32)};
  const std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed_),
                                       static_cast<uint32_t>(seed_ >> 32)};
  const std::array<uint32_t, 4> out = Philox4x32(ctr, key);
  ++block_;
  // Consumed back to front: buffer_[1] first, then buffer_[0].
  buffer_[1] = (static_cast<uint64_t>(out[1]) << 32) | out[0];
  buffer_[0] = (static_cast<uint64_t>(out[3]) << 32) | out[2];
  buffered_ = 2;
}

uint64_t RngStream::NextU64() {
  if (buffered_ == 0) Refill();
  return buffer_[--buffered_];
}

double RngStream::NextUniform01() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

double RngStream::Uniform(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("Uniform: lo > hi");
  if (lo == hi) return lo;
  const double x = lo + (hi - lo) * NextUniform01();
  return x > hi ? hi : x;
}

uint64_t RngStream::UniformInt(uint64_t n) {
  if (n == 0) throw std::invalid_argument("UniformInt: n == 0");
  // Lemire's multiply-shift with rejection; exact for every n.
  const uint64_t threshold = (0 - n) % n;
  while (true) {
    const unsigned __int128 m =
        static_cast<unsigned __int128>(NextU64()) * static_cast<unsigned __int128>(n);
    if (static_cast<uint64_t>(m) >= threshold) {
      return static_cast<uint64_t>(m >> 64);
    }
  }
}

double RngStream::StandardNormal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  double u, v, s;
  do {
    u = 2.0 * NextUniform01() - 1.0;
    v = 2.0 * NextUniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  has_spare_normal_ = true;
  return u * factor;
}

void RngStream::StandardNormal(std::span<double> out) {
  for (double& x : out) x = StandardNormal();
}

std::vector<double> RngStream::StandardNormal(std::size_t n) {
  std::vector<double> out(n);
  StandardNormal(out);
  return out;
}

RngStream RngStream::Split(uint64_t child) const {
  return RngStream(seed_, DeriveStreamId({stream_id_, child}));
}

RngStream SeedStream(uint64_t seed, uint64_t stream_id) {
  return RngStream(seed, stream_id);
}

uint64_t DeriveStreamId(std::initializer_list<uint64_t> parts) {
  uint64_t h = 0x6A09E667F3BCC909ull;
  for (uint64_t p : parts) h = SplitMix64(h ^ SplitMix64(p));
  return h;
}

}  // namespace bbeq
