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
#include <compare>
#include <string>

#include "iiote/core/error.hpp"

namespace iiote {

namespace detail {

struct NonNegative {
  static bool valid(double v) { return std::isfinite(v) && v >= 0.0; }
  static constexpr const char* range = ">= 0";
};

struct UnitInterval {
  static bool valid(double v) { return v >= 0.0 && v <= 1.0; }
  static constexpr const char* range = "in [0, 1]";
};

}  // namespace detail

// A non-negative real carrying its unit in the type. Construction checks the
// range; arithmetic that could leave the range goes through value().
template <typename Tag, typename Range = detail::NonNegative>
class Quantity {
 public:
  constexpr Quantity() = default;

  explicit Quantity(double v) : value_(v) {
    if (!Range::valid(v)) {
      throw DomainError(std::string(Tag::name) + " must be " + Range::range +
                        ", got " + std::to_string(v));
    }
  }

  constexpr double value() const { return value_; }

  friend Quantity operator+(Quantity a, Quantity b) { return Quantity(a.value_ + b.value_); }
  Quantity& operator+=(Quantity o) { return *this = *this + o; }
  friend Quantity operator*(Quantity a, double k) { return Quantity(a.value_ * k); }
  friend Quantity operator*(double k, Quantity a) { return Quantity(a.value_ * k); }

  friend constexpr auto operator<=>(Quantity, Quantity) = default;

 private:
  double value_ = 0.0;
};

struct JoulesTag { static constexpr const char* name = "Joules"; };
struct SecondsTag { static constexpr const char* name = "Seconds"; };
struct BitsTag { static constexpr const char* name = "Bits"; };
struct WattsTag { static constexpr const char* name = "Watts"; };
struct ProbabilityTag { static constexpr const char* name = "Probability"; };

using Joules = Quantity<JoulesTag>;
using Seconds = Quantity<SecondsTag>;
using Bits = Quantity<BitsTag>;
using Watts = Quantity<WattsTag>;
using Probability = Quantity<ProbabilityTag, detail::UnitInterval>;

inline Joules operator*(Watts p, Seconds t) { return Joules(p.value() * t.value()); }

}  // namespace iiote
