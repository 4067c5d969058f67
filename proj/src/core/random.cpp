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

#include "iiote/core/random.hpp"

#include <cmath>
#include <numbers>

#include "iiote/core/error.hpp"

namespace iiote {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng::Rng(Seed seed) {
  std::uint64_t sm = seed.value;
  for (auto& word : s_) word = splitmix64(sm);
}

Rng Rng::for_stream(Seed seed, std::uint64_t stream) {
  std::uint64_t a = seed.value;
  std::uint64_t b = stream ^ 0xD1B54A32D192ED03ULL;
  return Rng(Seed(splitmix64(a) ^ rotl(splitmix64(b), 17)));
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InvalidArgument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next_u64());
  // Largest multiple of span that fits; draws above it are rejected.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span + 1) % span;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x > limit);
  return lo + static_cast<std::int64_t>(x % span);
}

double Rng::normal(double mean, double stddev) {
  const double u1 = 1.0 - next_uniform();  // (0, 1]
  const double u2 = next_uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::exponential(double rate) {
  if (!(rate > 0.0)) throw InvalidArgument("exponential: rate must be > 0");
  return -std::log1p(-next_uniform()) / rate;
}

std::int64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw InvalidArgument("poisson: mean must be finite and >= 0");
  }
  std::int64_t total = 0;
  while (mean > 0.0) {
    const double part = std::min(mean, 30.0);
    mean -= part;
    const double limit = std::exp(-part);
    double prod = next_uniform();
    while (prod > limit) {
      ++total;
      prod *= next_uniform();
    }
  }
  return total;
}

}  // namespace iiote
