// Copyright 2026 The omlab Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "omlab/error.hpp"

namespace omlab {

// An L^p exponent p > 1 together with its conjugate p/(p-1).  The conjugate
// is stored rather than recomputed, so conjugate().conjugate() is the same
// object bit for bit.
class Exponent {
 public:
  explicit Exponent(double p) : p_(p), q_(p / (p - 1.0)) {
    if (!(p > 1.0) || !std::isfinite(p)) {
      throw DomainError("exponent must be a finite real > 1, got " + std::to_string(p));
    }
  }

  double value() const noexcept { return p_; }
  double conjugate_value() const noexcept { return q_; }
  double p_star() const noexcept { return std::max(p_, q_); }

  Exponent conjugate() const noexcept { return Exponent(q_, p_); }

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  Exponent(double p, double q) noexcept : p_(p), q_(q) {}

  double p_;
  double q_;
};

}  // namespace omlab
