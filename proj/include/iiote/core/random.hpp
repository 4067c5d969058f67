// Copyright 2026 The iiote Authors. All Rights Reserved.
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
// =============================================================================

#pragma once

#include <array>
#include <cstdint>

namespace iiote {

// Seed of a deterministic stream. Identical seeds give bit-identical integer
// and uniform streams on every platform.
struct Seed {
  std::uint64_t value = 0;

  constexpr Seed() = default;
  constexpr explicit Seed(std::uint64_t v) : value(v) {}
  friend constexpr bool operator==(Seed, Seed) = default;
};

// One step of SplitMix64: state += 0x9E3779B97F4A7C15, then the
// Stafford variant 13 finalizer. Used to expand a Seed into generator state
// and to derive independent sub-streams.
std::uint64_t splitmix64(std::uint64_t& state);

// xoshiro256** 1.0 (Blackman & Vigna). State transition and output are
// documented in README.md so that ports reproduce the streams exactly.
class Rng {
 public:
  explicit Rng(Seed seed);

  // Independent stream number `stream` under `seed`. Used to give each
  // worker, chunk or trial block its own generator so that parallel and
  // serial executions consume identical numbers.
  static Rng for_stream(Seed seed, std::uint64_t stream);

  std::uint64_t next_u64();

  // (next_u64() >> 11) * 2^-53, in [0, 1).
  double next_uniform();

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_uniform(); }

  // Uniform integer in [lo, hi], rejection-sampled so every value is
  // equally likely.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  bool bernoulli(double p) { return next_uniform() < p; }

  // Box-Muller, one uniform pair per call (the second variate is discarded
  // so the stream position does not depend on call history).
  double normal(double mean = 0.0, double stddev = 1.0);

  double exponential(double rate);

  // Knuth's multiplication method; means above 30 are split into summed
  // sub-draws.
  std::int64_t poisson(double mean);

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace iiote
