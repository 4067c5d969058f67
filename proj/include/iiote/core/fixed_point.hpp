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

#include <cmath>
#include <concepts>
#include <functional>
#include <string>

#include "iiote/core/error.hpp"

namespace iiote {

inline constexpr double kFixedPointTol = 1e-9;
inline constexpr long kFixedPointMaxIter = 100000;

// Iterates x <- f(x) until |f(x) - x| <= tol. Throws NonConvergence after
// max_iter evaluations.
double fixed_point(const std::function<double(double)>& f, double x0,
                   double tol = kFixedPointTol, long max_iter = kFixedPointMaxIter);

// Same contract for an arbitrary state type. `distance(a, b)` measures the
// change between successive iterates.
template <typename State, typename Step, typename Distance>
  requires std::invocable<Distance&, const State&, const State&>
State fixed_point(Step&& step, State x, Distance&& distance,
                  double tol = kFixedPointTol, long max_iter = kFixedPointMaxIter) {
  if (!(tol > 0.0) || max_iter < 1) {
    throw InvalidArgument("fixed_point: tol must be > 0 and max_iter >= 1");
  }
  for (long i = 0; i < max_iter; ++i) {
    State next = step(x);
    const double change = distance(next, x);
    x = std::move(next);
    if (change <= tol) return x;
    if (!std::isfinite(change)) break;
  }
  throw NonConvergence("fixed point iteration did not converge after " +
                           std::to_string(max_iter) + " iterations",
                       0.0, max_iter);
}

}  // namespace iiote
