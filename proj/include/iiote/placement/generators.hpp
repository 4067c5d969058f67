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

#include "iiote/core/random.hpp"
#include "iiote/placement/instance.hpp"

namespace iiote::placement {

// Heterogeneous device network of M nodes: the first round(0.6 M) are wired.
// Link probabilities 0.8 wired-wired, 0.5 wireless-wireless, 0.4 mixed; link
// energy 0.2 when both ends are wired and 0.8 otherwise. R_n uniform in 1..8,
// P_n uniform in [1, 3], C_n uniform in [0.5, 1.5]. Links are redrawn until
// the graph is connected.
NetGraph generate_network(int nodes, Seed seed);

// "long": a path t0 -> t1 -> ... ; "wide": t0 fans out to every middle
// component, which all feed t(N-1). R_t uniform in 1..8, O_t uniform in
// [0.5, 1.5], S_t in {1, 2}. Throws InvalidShape for N < 2 (long) or N < 3
// (wide).
AppGraph generate_application(AppShape shape, int components, Seed seed);

}  // namespace iiote::placement
