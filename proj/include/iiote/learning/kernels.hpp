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

#include <span>

#include "iiote/learning/problem.hpp"
#include "iiote/learning/topology.hpp"

namespace iiote::learning {

// argmin_theta f(theta) + dual_sum^T theta + (rho/2) sum_j ||theta - neighbor_j||^2
// where dual_sum = sum_j sign_j lambda_j. Solved exactly:
//   (2 G + rho |J| I) theta = 2 A^T b - dual_sum + rho sum_j neighbor_j.
RealVector primal_update(const LocalProblem& problem, std::span<const RealVector> neighbor_models,
                         const RealVector& dual_sum, double rho);

// lambda + rho (left - right).
RealVector dual_update(const RealVector& lambda, const RealVector& theta_left,
                       const RealVector& theta_right, double rho);

// Inputs shared by every worker of one update phase.
struct GroupUpdate {
  std::span<const int> workers;
  std::span<const LocalProblem> problems;
  const Topology* topology;
  std::span<const RealVector> visible;  // last model each worker transmitted
  std::span<const RealVector> duals;    // one per topology edge
  double rho;
};

// Serial reference: models[w] = primal_update(...) for each w in workers.
void primal_group_serial(const GroupUpdate& in, std::span<RealVector> models);
// OpenMP version; bit-identical to the serial reference.
void primal_group_parallel(const GroupUpdate& in, std::span<RealVector> models);

// Dual ascent on every edge from the visible models.
void dual_all_serial(std::span<const Edge> edges, std::span<const RealVector> visible, double rho,
                     std::span<RealVector> duals);
void dual_all_parallel(std::span<const Edge> edges, std::span<const RealVector> visible, double rho,
                       std::span<RealVector> duals);

}  // namespace iiote::learning
