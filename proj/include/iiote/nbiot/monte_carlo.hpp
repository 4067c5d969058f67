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

#include <cstdint>

#include "iiote/core/random.hpp"
#include "iiote/nbiot/model.hpp"

namespace iiote::nbiot {

struct ReservationEstimate {
  double p_rr = 0.0;        // successes / attempts after warm-up
  double lambda_tot = 0.0;  // mean contenders per period after warm-up
  long attempts = 0;
  long successes = 0;
};

// Slotted simulation of the random-access channel. Each period Poisson(lambda_a)
// new devices and the backlogged retransmitters pick one of K preambles; a
// device succeeds iff nobody else picked its preamble and an independent
// p_d coin succeeds. Failed devices retry after a uniform 1..backoff periods
// until N_rmax attempts are used. The first 10% of periods are discarded.
ReservationEstimate monte_carlo_reservation(const RadioConfig& cfg, long periods, Seed seed,
                                            int backoff = 10);

struct PowEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Mean of min over M Exp(lambda_c) draws. Trials run in blocks of 4096, block
// b drawing from stream b of the seed; the parallel version reduces blocks in
// order and matches the serial reference bit for bit.
PowEstimate pow_latency_oracle_serial(int miners, double lambda_c, long trials, Seed seed);
PowEstimate pow_latency_oracle_parallel(int miners, double lambda_c, long trials, Seed seed);

}  // namespace iiote::nbiot
