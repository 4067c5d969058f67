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
#include <optional>

#include "iiote/placement/instance.hpp"

namespace iiote::placement {

// Assignment index i encodes component t on node (i / M^t) % M.
struct EnumerationBest {
  std::uint64_t index = 0;
  double cost = 0.0;
};

// Scans indices [0, M^N) and returns the feasible one of least E_t (lowest
// index on ties). The OpenMP version splits the range into fixed blocks and
// reduces them in block order, so both return the same answer.
std::optional<EnumerationBest> enumerate_serial(const AppGraph& app, const NetGraph& net);
std::optional<EnumerationBest> enumerate_parallel(const AppGraph& app, const NetGraph& net);

std::vector<int> decode_assignment(std::uint64_t index, int components, int nodes);

}  // namespace iiote::placement
