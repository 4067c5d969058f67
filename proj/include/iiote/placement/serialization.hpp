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

#include <iosfwd>
#include <string>

#include "iiote/placement/instance.hpp"

namespace iiote::placement {

struct Instance {
  AppGraph app;
  NetGraph net;
};

// YAML document with `application` (shape, components with R_t/O_t/S_t,
// edges as [from, to]) and `network` (nodes with kind/P_n/R_n/C_n, links with
// a/b/T_l). Errors carry the field path and line number.
Instance read_instance(const std::string& path);
Instance parse_instance(const std::string& text);
void write_instance(std::ostream& out, const Instance& instance);

}  // namespace iiote::placement
