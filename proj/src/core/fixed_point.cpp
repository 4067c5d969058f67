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

#include "iiote/core/fixed_point.hpp"

namespace iiote {

double fixed_point(const std::function<double(double)>& f, double x0, double tol,
                   long max_iter) {
  if (!(tol > 0.0) || max_iter < 1) {
    throw InvalidArgument("fixed_point: tol must be > 0 and max_iter >= 1");
  }
  double x = x0;
  for (long i = 0; i < max_iter; ++i) {
    const double fx = f(x);
    if (std::abs(fx - x) <= tol) return x;
    if (!std::isfinite(fx)) {
      throw NonConvergence("fixed point iteration diverged", fx, i + 1);
    }
    x = fx;
  }
  throw NonConvergence("fixed point iteration did not converge after " +
                           std::to_string(max_iter) + " iterations",
                       x, max_iter);
}

}  // namespace iiote
