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

#include <array>
#include <cmath>

namespace omlab {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) noexcept { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
inline double norm_sq(Vec2 a) noexcept { return dot(a, a); }
inline double norm(Vec2 a) noexcept { return std::hypot(a.x, a.y); }

// 2x2 integrand matrix.  Row i holds the stochastic derivatives of coordinate
// process i against Brownian coordinates 1 and 2; columns are the directions
// H_1 and H_2 along which the process moves per unit Brownian increment.
struct Mat2 {
  std::array<std::array<double, 2>, 2> h{{{0.0, 0.0}, {0.0, 0.0}}};

  static Mat2 identity() noexcept { return from_rows(1.0, 0.0, 0.0, 1.0); }
  static Mat2 zero() noexcept { return {}; }
  static Mat2 from_rows(double a, double b, double c, double d) noexcept {
    Mat2 m;
    m.h = {{{a, b}, {c, d}}};
    return m;
  }
  // scale * [[cos, -sin], [sin, cos]]
  static Mat2 rotation(double angle, double scale = 1.0) noexcept {
    const double c = scale * std::cos(angle);
    const double s = scale * std::sin(angle);
    return from_rows(c, -s, s, c);
  }

  Vec2 column(int j) const noexcept { return {h[0][j], h[1][j]}; }
  Vec2 row(int i) const noexcept { return {h[i][0], h[i][1]}; }

  double frobenius_sq() const noexcept {
    return h[0][0] * h[0][0] + h[0][1] * h[0][1] + h[1][0] * h[1][0] + h[1][1] * h[1][1];
  }

  Vec2 apply(Vec2 v) const noexcept {
    return {h[0][0] * v.x + h[0][1] * v.y, h[1][0] * v.x + h[1][1] * v.y};
  }

  friend Mat2 operator*(double s, const Mat2& m) noexcept {
    return from_rows(s * m.h[0][0], s * m.h[0][1], s * m.h[1][0], s * m.h[1][1]);
  }
  friend Mat2 operator*(const Mat2& a, const Mat2& b) noexcept {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.h[i][j] = a.h[i][0] * b.h[0][j] + a.h[i][1] * b.h[1][j];
    return r;
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

// Rows orthogonal and of equal norm, relative to the squared Frobenius norm.
inline bool is_conformal(const Mat2& m, double rel_tol = 1e-12) noexcept {
  const Vec2 r1 = m.row(0);
  const Vec2 r2 = m.row(1);
  const double scale = m.frobenius_sq();
  return std::abs(dot(r1, r2)) <= rel_tol * scale &&
         std::abs(norm_sq(r1) - norm_sq(r2)) <= rel_tol * scale;
}

}  // namespace omlab
