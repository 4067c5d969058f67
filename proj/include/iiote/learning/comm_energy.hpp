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

#include <vector>

#include "iiote/core/random.hpp"
#include "iiote/core/units.hpp"

namespace iiote::learning {

// Shannon-capacity energy model for one uplink message.
struct CommEnergyModel {
  double bandwidth_hz = 1e6;
  double slot_s = 1e-3;
  double noise_psd = 1e-12;  // W/Hz
  std::vector<double> gains;  // per worker

  void validate() const;

  // Gains uniform in [0.5, 1.5] * base_gain.
  static CommEnergyModel with_random_gains(int workers, Seed seed, double base_gain = 1e-6);
};

// Energy to send `payload` bits within one slot over `bandwidth_hz / share`:
//   E = T * (N0 * W' / gain) * (2^(payload / (T * W')) - 1),   W' = W / share.
// `share` is the number of transmitters splitting the band in the same phase.
Joules message_energy(Bits payload, const CommEnergyModel& model, double gain, int share = 1);

}  // namespace iiote::learning
