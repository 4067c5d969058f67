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
#include <vector>

#include "iiote/core/random.hpp"
#include "iiote/core/units.hpp"
#include "iiote/learning/problem.hpp"

namespace iiote::learning {

struct QuantizerConfig {
  int bits = 2;  // per coordinate, 1..32

  void validate() const;
};

// Stochastic uniform quantization of a vector onto 2^bits levels spanning
// [-range, range]. `range` is the 32-bit side value of the message.
struct QuantizedMessage {
  float range = 0.0f;
  int bits = 0;
  std::vector<std::uint32_t> levels;

  Bits payload() const;
  RealVector dequantize() const;
};

// payload = bits * dim + 32.
Bits quantized_payload(int bits, int dim);
Bits full_precision_payload(int dim);

// range = max |delta_i| rounded up to the next float. Each coordinate rounds to
// one of its two neighbouring levels with probabilities that make the
// dequantized value unbiased. One uniform draw per coordinate.
QuantizedMessage quantize(const RealVector& delta, const QuantizerConfig& config, Rng& rng);

// Threshold sequence xi_k = xi0 * alpha^k.
struct CensorSchedule {
  double xi0 = 0.1;
  double alpha = 0.9;

  void validate() const;
  double threshold(long k) const;
};

// Transmit iff ||current - last_sent||_2 > threshold (strict).
bool censor_decision(const RealVector& current, const RealVector& last_sent, double threshold);

}  // namespace iiote::learning
