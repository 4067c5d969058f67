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

#include "iiote/learning/comm_energy.hpp"

#include <cmath>

#include "iiote/core/error.hpp"

namespace iiote::learning {

void CommEnergyModel::validate() const {
  if (!(bandwidth_hz > 0.0)) throw DomainError("energy.bandwidth_hz must be > 0");
  if (!(slot_s > 0.0)) throw DomainError("energy.slot_s must be > 0");
  if (!(noise_psd > 0.0)) throw DomainError("energy.noise_psd must be > 0");
  for (double g : gains) {
    if (!(g > 0.0)) throw DomainError("energy.gains must all be > 0");
  }
}

CommEnergyModel CommEnergyModel::with_random_gains(int workers, Seed seed, double base_gain) {
  CommEnergyModel m;
  Rng rng = Rng::for_stream(seed, 0x6761696eULL);
  m.gains.resize(static_cast<std::size_t>(workers));
  for (auto& g : m.gains) g = base_gain * rng.uniform(0.5, 1.5);
  return m;
}

Joules message_energy(Bits payload, const CommEnergyModel& model, double gain, int share) {
  if (!(gain > 0.0)) throw InvalidArgument("message_energy: gain must be > 0");
  if (share < 1) throw InvalidArgument("message_energy: share must be >= 1");
  if (payload.value() == 0.0) return Joules(0.0);
  const double w = model.bandwidth_hz / share;
  const double t = model.slot_s;
  const double rate = payload.value() / (t * w);
  return Joules(t * (model.noise_psd * w / gain) * std::expm1(rate * std::log(2.0)));
}

}  // namespace iiote::learning
