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

#include "iiote/nbiot/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "iiote/core/error.hpp"

namespace iiote::nbiot {

ReservationEstimate monte_carlo_reservation(const RadioConfig& cfg, long periods, Seed seed,
                                            int backoff) {
  if (periods < 1000) throw InvalidArgument("monte_carlo_reservation: need at least 1000 periods");
  if (backoff < 1) throw InvalidArgument("monte_carlo_reservation: backoff must be >= 1");
  if (cfg.K < 1 || cfg.N_rmax < 1) throw InvalidArgument("monte_carlo_reservation: K, N_rmax >= 1");
  Rng rng(seed);
  const long warmup = periods / 10;

  // Slot k % (backoff + 1) holds the attempt numbers of devices retrying in period k.
  std::vector<std::vector<int>> pending(static_cast<std::size_t>(backoff) + 1);
  std::vector<int> contenders;
  std::vector<int> preamble;
  std::vector<int> uses(static_cast<std::size_t>(cfg.K));

  ReservationEstimate est;
  double contenders_total = 0.0;
  for (long k = 0; k < periods; ++k) {
    auto& slot = pending[static_cast<std::size_t>(k % (backoff + 1))];
    contenders.assign(slot.begin(), slot.end());
    slot.clear();
    const auto fresh = rng.poisson(cfg.lambda_a());
    contenders.insert(contenders.end(), static_cast<std::size_t>(fresh), 1);

    std::fill(uses.begin(), uses.end(), 0);
    preamble.resize(contenders.size());
    for (std::size_t i = 0; i < contenders.size(); ++i) {
      preamble[i] = static_cast<int>(rng.uniform_int(0, cfg.K - 1));
      ++uses[static_cast<std::size_t>(preamble[i])];
    }
    const bool counted = k >= warmup;
    if (counted) contenders_total += static_cast<double>(contenders.size());
    for (std::size_t i = 0; i < contenders.size(); ++i) {
      const bool ok = uses[static_cast<std::size_t>(preamble[i])] == 1 && rng.bernoulli(cfg.p_d);
      if (counted) {
        ++est.attempts;
        if (ok) ++est.successes;
      }
      if (!ok && contenders[i] < cfg.N_rmax) {
        const long when = k + rng.uniform_int(1, backoff);
        pending[static_cast<std::size_t>(when % (backoff + 1))].push_back(contenders[i] + 1);
      }
    }
  }
  const double counted_periods = static_cast<double>(periods - warmup);
  est.lambda_tot = contenders_total / counted_periods;
  est.p_rr = est.attempts ? static_cast<double>(est.successes) / static_cast<double>(est.attempts)
                          : cfg.p_d;
  return est;
}

namespace {

constexpr long kTrialBlock = 4096;

struct BlockSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

BlockSums pow_block(int miners, double lambda_c, long begin, long end, Seed seed, long block) {
  Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(block));
  BlockSums s;
  for (long i = begin; i < end; ++i) {
    double first = std::numeric_limits<double>::infinity();
    for (int m = 0; m < miners; ++m) first = std::min(first, rng.exponential(lambda_c));
    s.sum += first;
    s.sum_sq += first * first;
  }
  return s;
}

PowEstimate finish(const std::vector<BlockSums>& blocks, long trials) {
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& b : blocks) {
    sum += b.sum;
    sum_sq += b.sum_sq;
  }
  const double n = static_cast<double>(trials);
  PowEstimate e;
  e.mean = sum / n;
  const double var = trials > 1 ? std::max(0.0, (sum_sq - n * e.mean * e.mean) / (n - 1.0)) : 0.0;
  e.std_error = std::sqrt(var / n);
  return e;
}

void check_pow_args(int miners, double lambda_c, long trials) {
  if (miners < 1) throw InvalidArgument("pow_latency_oracle: M must be >= 1");
  if (!(lambda_c > 0.0)) throw InvalidArgument("pow_latency_oracle: lambda_c must be > 0");
  if (trials < 1) throw InvalidArgument("pow_latency_oracle: trials must be >= 1");
}

}  // namespace

PowEstimate pow_latency_oracle_serial(int miners, double lambda_c, long trials, Seed seed) {
  check_pow_args(miners, lambda_c, trials);
  const long blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<BlockSums> sums(static_cast<std::size_t>(blocks));
  for (long b = 0; b < blocks; ++b) {
    sums[static_cast<std::size_t>(b)] =
        pow_block(miners, lambda_c, b * kTrialBlock, std::min(trials, (b + 1) * kTrialBlock), seed, b);
  }
  return finish(sums, trials);
}

PowEstimate pow_latency_oracle_parallel(int miners, double lambda_c, long trials, Seed seed) {
  check_pow_args(miners, lambda_c, trials);
  const long blocks = (trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<BlockSums> sums(static_cast<std::size_t>(blocks));
#pragma omp parallel for schedule(static)
  for (long b = 0; b < blocks; ++b) {
    sums[static_cast<std::size_t>(b)] =
        pow_block(miners, lambda_c, b * kTrialBlock, std::min(trials, (b + 1) * kTrialBlock), seed, b);
  }
  return finish(sums, trials);
}

}  // namespace iiote::nbiot
