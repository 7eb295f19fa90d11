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

#include <cstdint>
#include <string>
#include <vector>

#include "omlab/exponent.hpp"
#include "omlab/linalg.hpp"

// Burkholder's function u and minorant v on R^2 x R^2 for 1 < p <= 2, with the
// second-order machinery behind the supermartingale argument.
namespace omlab::bellman {

struct Point2x2 {
  Vec2 x;
  Vec2 y;
};

struct BellmanSample {
  Point2x2 point;
  Mat2 H;
  Mat2 K;
  Exponent p;
};

inline constexpr double kDefaultFdStep = 1e-4;

// p (1 - 1/p*)^(p-1); RangeError for p > 2.
double alpha(const Exponent& p);

// ||y||^p - (p* - 1)^p ||x||^p, as ||y||^2 - ||x||^2 at p = 2.
double v_value(const Point2x2& pt, const Exponent& p);

// alpha_p (||y|| - (p* - 1)||x||)(||x|| + ||y||)^(p-1); RangeError for p > 2.
// At p = 2 this is evaluated as ||y||^2 - ||x||^2.
double u_value(const Point2x2& pt, const Exponent& p);

double majorization_gap(const Point2x2& pt, const Exponent& p);

// u <= 1e-12 on the set ||y|| <= ||x||.  PreconditionError off that set.
bool diagonal_negativity(const Point2x2& pt, const Exponent& p);

// Central second difference of G(t) = u(x + t h, y + t k) with h, k the
// columns `direction_index` (1 or 2) of H and K.
double g_second_fd(const BellmanSample& s, int direction_index, double step = kDefaultFdStep);

// Richardson combination of g_second_fd at step and step/2.
double g_second_richardson(const BellmanSample& s, int direction_index, double step = kDefaultFdStep);

// Closed-form G''(0) along (h, k), by the chain rule through ||x|| and ||y||.
// Requires x != 0 and y != 0.
double g_second_analytic(const Point2x2& pt, Vec2 h, Vec2 k, const Exponent& p);

// Sum of the Richardson second differences over both columns.  Throws
// NonConformalError / SubordinationError when H is not conformal or
// ||K||_F^2 > p/(2(p-1)) ||H||_F^2.
double ito_trace(const BellmanSample& s, double step = kDefaultFdStep);

// Normalizer used to scale traces and decomposition terms:
// (1 + ||H||_F^2) (||x|| + ||y||)^(p-2).
double trace_scale(const BellmanSample& s);

enum class AExponent { corrected, printed };

struct ABTerms {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
};

// Decomposition G''(0) = -alpha_p (A + B + C) along a single direction pair:
//   A = p(p-1)(|h|^2 - |k|^2)(|x|+|y|)^e,   e = p-2 (corrected) or p-1 (printed)
//   B = (2-p) p (|h|^2 - (x/|x|, h)^2) |x|^-1 (|x|+|y|)^(p-1)
//   C = -G''(0)/alpha_p - A - B, with G'' from g_second_analytic.
ABTerms ab_terms(const Point2x2& pt, Vec2 h, Vec2 k, const Exponent& p,
                 AExponent exponent = AExponent::corrected);

// Column-summed decomposition: the terms the Ito drift of u(X, Y) carries.
ABTerms ab_terms_trace(const BellmanSample& s, AExponent exponent = AExponent::corrected);

// (e.H_1)^2 + (e.H_2)^2; equals ||H||_F^2 / 2 when H is conformal.
double half_projection(Vec2 e, const Mat2& H);

// Points too close to x = 0, y = 0 or the contact set ||y|| = (p*-1)||x||.
bool near_nonsmooth(const Point2x2& pt, const Exponent& p);

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::uint64_t checked = 0;
  std::uint64_t rejected = 0;
  double worst = 0.0;  // largest observed violation measure (<= limit passes)
  double limit = 0.0;
  bool has_witness = false;
  BellmanSample witness{{}, {}, {}, Exponent(2.0)};
};

struct CheckReport {
  Exponent p;
  std::uint64_t seed;
  std::uint64_t samples;
  double fd_step;
  std::vector<PropertyResult> properties;

  bool passed() const noexcept;
};

// Randomized property suites: majorization, diagonal negativity, concavity
// trace, column-summed C >= 0, finite-difference vs closed-form G'', and the
// half-projection identity.  RangeError for p > 2.
CheckReport run_checks(const Exponent& p, std::uint64_t samples, std::uint64_t seed,
                       double fd_step = kDefaultFdStep);

}  // namespace omlab::bellman
