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
#include <vector>

#include <Eigen/Dense>

#include "iiote/core/random.hpp"

namespace iiote::learning {

using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

enum class LossKind { quadratic_scalar, linear_regression };

// f(theta) = ||A theta - b||^2 + regularization * ||theta||^2.
//
// The scalar quadratic (theta - a)^2 is the 1x1 case A = [1], b = [a].
class LocalProblem {
 public:
  LocalProblem(LossKind kind, RealMatrix a, RealVector b, double regularization = 0.0);

  static LocalProblem scalar_quadratic(double a);

  LossKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(a_.cols()); }
  int samples() const { return static_cast<int>(a_.rows()); }
  const RealMatrix& data() const { return a_; }
  const RealVector& targets() const { return b_; }
  double regularization() const { return reg_; }

  double objective(const RealVector& theta) const;

  // A^T A + reg I, the half Hessian of f.
  const RealMatrix& gram() const { return gram_; }
  // A^T b.
  const RealVector& moment() const { return moment_; }

 private:
  LossKind kind_;
  RealMatrix a_;
  RealVector b_;
  double reg_;
  RealMatrix gram_;
  RealVector moment_;
};

// Exact minimizer of sum_n f_n(theta) over one shared theta. Throws
// SingularSystem when the aggregate system is rank deficient.
RealVector centralized_solution(std::span<const LocalProblem> problems);

double total_objective(std::span<const LocalProblem> problems, std::span<const RealVector> models);

// Synthetic regression data: features ~ N(0, 1/samples), true model ~ N(0, 1),
// targets = A theta_true + noise * N(0, 1). Features are scaled so that each
// local Gram matrix is close to the identity.
std::vector<LocalProblem> synthetic_linear_regression(int workers, int dim, int samples,
                                                      double noise, Seed seed,
                                                      double regularization = 0.0);

std::vector<LocalProblem> scalar_quadratics(std::span<const double> centers);

}  // namespace iiote::learning
