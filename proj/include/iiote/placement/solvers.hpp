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

#include <chrono>
#include <optional>

#include "iiote/placement/instance.hpp"

namespace iiote::placement {

enum class SolveStatus { optimal, time_budget_exceeded };

struct SolveResult {
  Assignment assignment;
  SolveStatus status = SolveStatus::optimal;
  double objective = 0.0;    // value of the solver's own objective
  double lower_bound = 0.0;  // proven bound on the objective
  long nodes_explored = 0;

  double gap() const { return objective - lower_bound; }
};

enum class Execution { serial, parallel };

// Exact placement by depth-first branch-and-bound over components in
// decreasing R_t order, nodes in increasing id order. The bound is the cost
// of the partial assignment plus, for each unassigned component, its
// cheapest device cost. Among optimal assignments the first in that search
// order wins. Throws Infeasible. When the budget runs out the best
// assignment found so far is returned with status time_budget_exceeded.
SolveResult solve_optimal(const AppGraph& app, const NetGraph& net,
                          std::optional<std::chrono::duration<double>> time_budget = std::nullopt);

// Linear surrogate: the pairwise network term is replaced by O_t times the
// mean energy of the hosting node's links. The separable problem keeps the
// capacity constraints and is solved exactly by branch-and-bound; the
// returned energies are recomputed with the true objective.
SolveResult solve_heuristic(const AppGraph& app, const NetGraph& net);

// Exhaustive enumeration of all M^N maps. Throws TooLarge when M^N > 1e7 and
// Infeasible when no map satisfies the capacities.
SolveResult brute_force_optimal(const AppGraph& app, const NetGraph& net,
                                Execution exec = Execution::parallel);

// Aggregate resource check done before any search.
void check_capacity(const AppGraph& app, const NetGraph& net);

}  // namespace iiote::placement
