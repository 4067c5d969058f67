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

#include "iiote/learning/problem.hpp"

#include <cmath>

#include "iiote/core/error.hpp"

namespace iiote::learning {

LocalProblem::LocalProblem(LossKind kind, RealMatrix a, RealVector b, double regularization)
    : kind_(kind), a_(std::move(a)), b_(std::move(b)), reg_(regularization) {
  if (a_.rows() < 1 || a_.cols() < 1) {
    throw InvalidArgument("LocalProblem: need at least one sample and one feature");
  }
  if (a_.rows() != b_.size()) {
    throw InvalidArgument("LocalProblem: data rows and targets differ in length");
  }
  if (!(reg_ >= 0.0)) throw InvalidArgument("LocalProblem: regularization must be >= 0");
  if (!a_.allFinite() || !b_.allFinite()) {
    throw InvalidArgument("LocalProblem: non-finite data");
  }
  gram_ = a_.transpose() * a_;
  gram_.diagonal().array() += reg_;
  moment_ = a_.transpose() * b_;
}

LocalProblem LocalProblem::scalar_quadratic(double a) {
  return LocalProblem(LossKind::quadratic_scalar, RealMatrix::Ones(1, 1),
                      RealVector::Constant(1, a));
}

double LocalProblem::objective(const RealVector& theta) const {
  return (a_ * theta - b_).squaredNorm() + reg_ * theta.squaredNorm();
}

RealVector centralized_solution(std::span<const LocalProblem> problems) {
  if (problems.empty()) throw InvalidArgument("centralized_solution: no problems");
  const int d = problems.front().dim();
  RealMatrix gram = RealMatrix::Zero(d, d);
  RealVector moment = RealVector::Zero(d);
  for (const auto& p : problems) {
    if (p.dim() != d) throw InvalidArgument("centralized_solution: dimension mismatch");
    gram += p.gram();
    moment += p.moment();
  }
  Eigen::FullPivLU<RealMatrix> lu(gram);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw SingularSystem("centralized_solution: aggregate system is rank deficient");
  }
  return lu.solve(moment);
}

double total_objective(std::span<const LocalProblem> problems, std::span<const RealVector> models) {
  double total = 0.0;
  for (std::size_t n = 0; n < problems.size(); ++n) total += problems[n].objective(models[n]);
  return total;
}

std::vector<LocalProblem> synthetic_linear_regression(int workers, int dim, int samples,
                                                      double noise, Seed seed,
                                                      double regularization) {
  if (workers < 1 || dim < 1 || samples < 1) {
    throw InvalidArgument("synthetic_linear_regression: sizes must be positive");
  }
  Rng rng = Rng::for_stream(seed, 0x64617461ULL);  // "data"
  RealVector truth(dim);
  for (int j = 0; j < dim; ++j) truth[j] = rng.normal();
  const double scale = 1.0 / std::sqrt(static_cast<double>(samples));

  std::vector<LocalProblem> out;
  out.reserve(workers);
  for (int n = 0; n < workers; ++n) {
    RealMatrix a(samples, dim);
    for (int i = 0; i < samples; ++i) {
      for (int j = 0; j < dim; ++j) a(i, j) = scale * rng.normal();
    }
    RealVector b = a * truth;
    for (int i = 0; i < samples; ++i) b[i] += noise * rng.normal();
    out.emplace_back(LossKind::linear_regression, std::move(a), std::move(b), regularization);
  }
  return out;
}

std::vector<LocalProblem> scalar_quadratics(std::span<const double> centers) {
  std::vector<LocalProblem> out;
  out.reserve(centers.size());
  for (double c : centers) out.push_back(LocalProblem::scalar_quadratic(c));
  return out;
}

}  // namespace iiote::learning
