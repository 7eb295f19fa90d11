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

#include <span>
#include <string_view>
#include <vector>

#include "omlab/exponent.hpp"

namespace omlab::laguerre {

// Solutions of s L'' + (1 - s) L' + p L = 0.
//   regular: the power series 1F1(-p; 1; s), equal to 1 at s = 0.
//   second:  an independent solution with a logarithmic singularity at 0,
//            obtained by integrating the ODE from s = 1 with initial data
//            orthogonal to the regular solution's (L(1), L'(1)).
enum class Branch { regular, second };

std::string_view to_string(Branch b) noexcept;
Branch branch_from_string(std::string_view name);

inline constexpr double kMaxS = 2.0;
inline constexpr int kMaxTerms = 200;
inline constexpr double kTailThreshold = 1e-15;
inline constexpr int kScanPoints = 2048;
inline constexpr double kScanEdge = 1e-6;
inline constexpr double kMinRootExponent = 1.01;
inline constexpr double kMaxRootExponent = 64.0;
inline constexpr double kMinTolerance = 1e-14;

// Value and first two derivatives at one point.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// Throws DomainError for s outside [0, 2] (or s <= 0 on the second branch)
// and ConvergenceError if the series tail bound is not met in kMaxTerms terms.
double eval(double p, double s, Branch branch = Branch::regular);
double eval_derivative(double p, double s, Branch branch = Branch::regular);
Jet eval_jet(double p, double s, Branch branch = Branch::regular);

// Evaluates the second branch at each of `points`, which must be sorted in
// decreasing order (one inward integration sweep from s = 1).
std::vector<Jet> sweep_second(double p, std::span<const double> points);

struct RootCertificate {
  Exponent p;
  Branch branch;
  double bracket_lo;
  double bracket_hi;
  double root;
  double tolerance;

  double width() const noexcept { return bracket_hi - bracket_lo; }
};

// Smallest sign change of the chosen branch in (0, 1), located on a uniform
// grid of `scan_points` points, bisected to a bracket of width <= tolerance and
// Newton-polished.  Throws DomainError for p outside (1.01, 64], tolerance
// < 1e-14 or fewer than 2 scan points; NoSignChange if the scan finds no root
// (a grid too coarse can step over an even number of roots).
RootCertificate least_positive_root(const Exponent& p, double tolerance = 1e-12,
                                    Branch branch = Branch::regular, int scan_points = kScanPoints);

}  // namespace omlab::laguerre
