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

#include <vector>

#include "omlab/exponent.hpp"
#include "omlab/laguerre.hpp"

namespace omlab::analysis {

inline constexpr double kDefaultRootTolerance = 1e-12;
// Coefficient of the interpolated Beurling-Ahlfors estimate 1.575 (p* - 1).
inline constexpr double kInterpolationCoefficient = 1.575;

struct ReferenceConstants {
  double burkholder;   // p* - 1
  double thm1_left;    // sqrt((p^2 - p) / 2)
  double thm1_right;   // sqrt(2 / (p^2 - p))
  double ba_sqrt;      // sqrt(2 (p^2 - p))
  double ba_interp;    // 1.575 (p* - 1)
};

ReferenceConstants reference_constants(const Exponent& p);

// A constant derived from a certified root, with a first-order error bound
// |dC/dz| * (bracket width).
struct RootConstant {
  double value;
  double error_bound;
  laguerre::RootCertificate certificate;
};

// (1/sqrt 2) z / (1 - z) for 1 < p' <= 2.
RootConstant c_left(const Exponent& p_prime, double tol = kDefaultRootTolerance,
                    laguerre::Branch branch = laguerre::Branch::regular);

// sqrt 2 (1 - z) / z for p >= 2.
RootConstant c_right(const Exponent& p, double tol = kDefaultRootTolerance,
                     laguerre::Branch branch = laguerre::Branch::regular);

struct ConjectureResult {
  double residual;
  double error_bound;
  RootConstant right;
  RootConstant left;
};

// |c_right(p) - c_left(p / (p - 1))| for p >= 2.
ConjectureResult conjecture_residual(const Exponent& p, double tol = kDefaultRootTolerance,
                                     laguerre::Branch branch = laguerre::Branch::regular);

struct ConstantsRow {
  double p;
  double p_prime;
  double burkholder;
  double thm1_left;
  double thm1_right;  // evaluated at the conjugate exponent
  double z_p;
  double z_p_prime;
  double c_right;
  double c_left_at_conjugate;
  double conjecture_residual;
  double ba_sqrt;
  double ba_interp;
  // not part of the CSV contract
  double residual_error_bound;
};

ConstantsRow constants_row(const Exponent& p, double tol = kDefaultRootTolerance,
                           laguerre::Branch branch = laguerre::Branch::regular);

// Grid points p_min + i * step for i = 0 .. floor((p_max - p_min)/step + 1e-9).
std::vector<double> grid(double p_min, double p_max, double step);

// One row per grid point; requires 2 <= p_min <= p_max and step > 0.
std::vector<ConstantsRow> constants_table(double p_min, double p_max, double step,
                                          double tol = kDefaultRootTolerance,
                                          laguerre::Branch branch = laguerre::Branch::regular);

}  // namespace omlab::analysis
