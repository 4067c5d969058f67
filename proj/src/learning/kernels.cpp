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

#include "iiote/learning/kernels.hpp"

#include "iiote/core/error.hpp"

namespace iiote::learning {

RealVector primal_update(const LocalProblem& problem, std::span<const RealVector> neighbor_models,
                         const RealVector& dual_sum, double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("primal_update: rho must be > 0");
  const int d = problem.dim();
  RealMatrix lhs = 2.0 * problem.gram();
  lhs.diagonal().array() += rho * static_cast<double>(neighbor_models.size());
  RealVector rhs = 2.0 * problem.moment() - dual_sum;
  for (const auto& m : neighbor_models) rhs += rho * m;

  if (d == 1) {
    if (!(lhs(0, 0) > 0.0)) throw SingularSystem("primal_update: singular local system");
    return rhs / lhs(0, 0);
  }
  Eigen::LLT<RealMatrix> llt(lhs);
  if (llt.info() != Eigen::Success) throw SingularSystem("primal_update: singular local system");
  return llt.solve(rhs);
}

RealVector dual_update(const RealVector& lambda, const RealVector& theta_left,
                       const RealVector& theta_right, double rho) {
  return lambda + rho * (theta_left - theta_right);
}

namespace {

RealVector update_one(const GroupUpdate& in, int w) {
  const auto& inc = in.topology->incident(w);
  std::vector<RealVector> neighbors;
  neighbors.reserve(inc.size());
  RealVector dual_sum = RealVector::Zero(in.problems[w].dim());
  for (const auto& e : inc) {
    neighbors.push_back(in.visible[e.neighbor]);
    dual_sum += static_cast<double>(e.sign) * in.duals[e.edge];
  }
  return primal_update(in.problems[w], neighbors, dual_sum, in.rho);
}

}  // namespace

void primal_group_serial(const GroupUpdate& in, std::span<RealVector> models) {
  for (int w : in.workers) models[w] = update_one(in, w);
}

void primal_group_parallel(const GroupUpdate& in, std::span<RealVector> models) {
  const auto count = static_cast<long>(in.workers.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) {
    const int w = in.workers[i];
    models[w] = update_one(in, w);
  }
}

void dual_all_serial(std::span<const Edge> edges, std::span<const RealVector> visible, double rho,
                     std::span<RealVector> duals) {
  for (std::size_t e = 0; e < edges.size(); ++e) {
    duals[e] = dual_update(duals[e], visible[edges[e].left], visible[edges[e].right], rho);
  }
}

void dual_all_parallel(std::span<const Edge> edges, std::span<const RealVector> visible, double rho,
                       std::span<RealVector> duals) {
  const auto count = static_cast<long>(edges.size());
#pragma omp parallel for schedule(static)
  for (long e = 0; e < count; ++e) {
    duals[e] = dual_update(duals[e], visible[edges[e].left], visible[edges[e].right], rho);
  }
}

}  // namespace iiote::learning
