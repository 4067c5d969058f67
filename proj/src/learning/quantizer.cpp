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

#include "iiote/learning/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "iiote/core/error.hpp"

namespace iiote::learning {

void QuantizerConfig::validate() const {
  if (bits < 1 || bits > 32) throw DomainError("quantizer.bits must be in 1..32");
}

Bits quantized_payload(int bits, int dim) {
  return Bits(static_cast<double>(bits) * dim + 32.0);
}

Bits full_precision_payload(int dim) { return Bits(32.0 * dim); }

Bits QuantizedMessage::payload() const {
  return quantized_payload(bits, static_cast<int>(levels.size()));
}

namespace {

double level_step(double range, int bits) {
  const double intervals = std::ldexp(1.0, bits) - 1.0;
  return 2.0 * range / intervals;
}

}  // namespace

RealVector QuantizedMessage::dequantize() const {
  RealVector out(static_cast<Eigen::Index>(levels.size()));
  if (range == 0.0f) {
    out.setZero();
    return out;
  }
  const double r = range;
  const double step = level_step(r, bits);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = -r + step * static_cast<double>(levels[i]);
  }
  return out;
}

QuantizedMessage quantize(const RealVector& delta, const QuantizerConfig& config, Rng& rng) {
  config.validate();
  QuantizedMessage msg;
  msg.bits = config.bits;
  msg.levels.assign(static_cast<std::size_t>(delta.size()), 0);

  const double max_abs = delta.size() > 0 ? delta.cwiseAbs().maxCoeff() : 0.0;
  float range = static_cast<float>(max_abs);
  if (static_cast<double>(range) < max_abs) {
    range = std::nextafter(range, std::numeric_limits<float>::infinity());
  }
  msg.range = range;
  if (range == 0.0f) return msg;

  const double r = range;
  const double step = level_step(r, config.bits);
  const double top = std::ldexp(1.0, config.bits) - 1.0;
  for (Eigen::Index i = 0; i < delta.size(); ++i) {
    const double pos = std::clamp((delta[i] + r) / step, 0.0, top);
    const double lower = std::floor(pos);
    double idx = lower;
    if (rng.next_uniform() < pos - lower) idx += 1.0;
    msg.levels[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(std::min(idx, top));
  }
  return msg;
}

void CensorSchedule::validate() const {
  if (!(xi0 >= 0.0)) throw DomainError("censor.xi0 must be >= 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("censor.alpha must be in (0, 1]");
}

double CensorSchedule::threshold(long k) const {
  return xi0 * std::pow(alpha, static_cast<double>(k));
}

bool censor_decision(const RealVector& current, const RealVector& last_sent, double threshold) {
  if (!(threshold >= 0.0)) throw InvalidArgument("censor_decision: threshold must be >= 0");
  return (current - last_sent).norm() > threshold;
}

}  // namespace iiote::learning
