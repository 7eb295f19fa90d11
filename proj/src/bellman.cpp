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

#include "omlab/bellman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "omlab/error.hpp"
#include "omlab/rng.hpp"

namespace omlab::bellman {
namespace {

constexpr double kMinFdStep = 1e-6;

void require_left_range(const Exponent& p, const char* what) {
  if (p.value() > 2.0) {
    throw RangeError(std::string(what) + ": requires 1 < p <= 2, got p = " + std::to_string(p.value()));
  }
}

double g_at(const BellmanSample& s, Vec2 h, Vec2 k, double t) {
  return u_value({s.point.x + t * h, s.point.y + t * k}, s.p);
}

// ||v + t d|| - ||v||, free of cancellation.
double norm_increment(Vec2 v, Vec2 d, double t) {
  const double n0 = norm(v);
  const double n1 = norm(v + t * d);
  const double denom = n0 + n1;
  return denom > 0.0 ? t * (2.0 * dot(v, d) + t * norm_sq(d)) / denom : 0.0;
}

// G(t) - G(0) for G(t) = u(x + t h, y + t k), assembled from the increments of
// ||x||, ||y|| and (||x|| + ||y||)^(p-1) so that no two O(u) values are
// subtracted.
double g_increment(const BellmanSample& s, Vec2 h, Vec2 k, double t) {
  const Vec2 x = s.point.x;
  const Vec2 y = s.point.y;
  if (s.p.value() == 2.0) {
    return t * (2.0 * dot(y, k) + t * norm_sq(k)) - t * (2.0 * dot(x, h) + t * norm_sq(h));
  }
  const double a = norm(x);
  const double b = norm(y);
  const double sum = a + b;
  if (!(sum > 0.0)) return g_at(s, h, k, t) - g_at(s, h, k, 0.0);
  const double da = norm_increment(x, h, t);
  const double db = norm_increment(y, k, t);
  const double c = s.p.p_star() - 1.0;
  const double e = s.p.value() - 1.0;
  const double pw = std::pow(sum, e);
  const double dpw = pw * std::expm1(e * std::log1p((da + db) / sum));
  return alpha(s.p) * ((db - c * da) * (pw + dpw) + (b - c * a) * dpw);
}

double subordination_factor(const Exponent& p) { return p.value() / (2.0 * (p.value() - 1.0)); }

}  // namespace

double alpha(const Exponent& p) {
  require_left_range(p, "alpha");
  return p.value() * std::pow(1.0 - 1.0 / p.p_star(), p.value() - 1.0);
}

double v_value(const Point2x2& pt, const Exponent& p) {
  const double pv = p.value();
  if (pv == 2.0) {
    const double a = norm(pt.x);
    const double b = norm(pt.y);
    return b * b - a * a;
  }
  return std::pow(norm(pt.y), pv) - std::pow(p.p_star() - 1.0, pv) * std::pow(norm(pt.x), pv);
}

double u_value(const Point2x2& pt, const Exponent& p) {
  require_left_range(p, "u_value");
  const double a = norm(pt.x);
  const double b = norm(pt.y);
  if (p.value() == 2.0) return b * b - a * a;
  return alpha(p) * (b - (p.p_star() - 1.0) * a) * std::pow(a + b, p.value() - 1.0);
}

double majorization_gap(const Point2x2& pt, const Exponent& p) { return u_value(pt, p) - v_value(pt, p); }

bool diagonal_negativity(const Point2x2& pt, const Exponent& p) {
  if (norm(pt.y) > norm(pt.x)) {
    throw PreconditionError("diagonal_negativity: requires ||y|| <= ||x||");
  }
  return u_value(pt, p) <= 1e-12;
}

double g_second_fd(const BellmanSample& s, int direction_index, double step) {
  require_left_range(s.p, "g_second_fd");
  if (direction_index != 1 && direction_index != 2) {
    throw ArgumentError("g_second_fd: direction_index must be 1 or 2");
  }
  if (!(step >= kMinFdStep) || !std::isfinite(step)) {
    throw PreconditionError("g_second_fd: step " + std::to_string(step) + " below 1e-6 (cancellation)");
  }
  if (!(norm(s.point.x) > 10.0 * step)) {
    throw PreconditionError("g_second_fd: point within 10*step of x = 0");
  }
  const Vec2 h = s.H.column(direction_index - 1);
  const Vec2 k = s.K.column(direction_index - 1);
  return (g_increment(s, h, k, step) + g_increment(s, h, k, -step)) / (step * step);
}

double g_second_richardson(const BellmanSample& s, int direction_index, double step) {
  const double coarse = g_second_fd(s, direction_index, step);
  const double fine = g_second_fd(s, direction_index, 0.5 * step);
  return (4.0 * fine - coarse) / 3.0;
}

double g_second_analytic(const Point2x2& pt, Vec2 h, Vec2 k, const Exponent& p) {
  const double al = alpha(p);
  const double pv = p.value();
  const double c = p.p_star() - 1.0;
  const double a = norm(pt.x);
  const double b = norm(pt.y);
  if (!(a > 0.0)) throw DomainError("g_second_analytic: x = 0");

  const double ap = dot(pt.x, h) / a;
  const double app = (norm_sq(h) - ap * ap) / a;
  // At y = 0 the mixed partial vanishes, so G is C^2 along the ray y = t k.
  double bp = 0.0;
  double bpp = 0.0;
  if (b > 0.0) {
    bp = dot(pt.y, k) / b;
    bpp = (norm_sq(k) - bp * bp) / b;
  } else {
    bp = norm(k);
  }

  const double s = a + b;
  const double sp2 = std::pow(s, pv - 2.0);
  const double lin = b - c * a;
  const double d = (pv - 1.0) * (pv - 2.0) * lin * std::pow(s, pv - 3.0);
  const double faa = -2.0 * c * (pv - 1.0) * sp2 + d;
  const double fbb = 2.0 * (pv - 1.0) * sp2 + d;
  const double fab = (pv - 1.0) * (1.0 - c) * sp2 + d;
  const double fa = -c * s * sp2 + (pv - 1.0) * lin * sp2;
  const double fb = s * sp2 + (pv - 1.0) * lin * sp2;
  return al * (faa * ap * ap + 2.0 * fab * ap * bp + fbb * bp * bp + fa * app + fb * bpp);
}

double ito_trace(const BellmanSample& s, double step) {
  require_left_range(s.p, "ito_trace");
  if (!is_conformal(s.H)) {
    throw NonConformalError("ito_trace: H is not conformal (rows must be orthogonal with equal norms)");
  }
  if (s.K.frobenius_sq() > subordination_factor(s.p) * s.H.frobenius_sq() * (1.0 + 1e-12)) {
    throw SubordinationError("ito_trace: ||K||_F^2 exceeds p/(2(p-1)) ||H||_F^2");
  }
  return g_second_richardson(s, 1, step) + g_second_richardson(s, 2, step);
}

double trace_scale(const BellmanSample& s) {
  return (1.0 + s.H.frobenius_sq()) * std::pow(norm(s.point.x) + norm(s.point.y), s.p.value() - 2.0);
}

ABTerms ab_terms(const Point2x2& pt, Vec2 h, Vec2 k, const Exponent& p, AExponent exponent) {
  require_left_range(p, "ab_terms");
  const double a = norm(pt.x);
  if (!(a > 0.0)) throw DomainError("ab_terms: x = 0");
  const double pv = p.value();
  const double s = a + norm(pt.y);
  const double e = exponent == AExponent::corrected ? pv - 2.0 : pv - 1.0;
  const double xh = dot(pt.x, h) / a;

  ABTerms t;
  t.A = pv * (pv - 1.0) * (norm_sq(h) - norm_sq(k)) * std::pow(s, e);
  t.B = (2.0 - pv) * pv * (norm_sq(h) - xh * xh) / a * std::pow(s, pv - 1.0);
  t.C = -g_second_analytic(pt, h, k, p) / alpha(p) - t.A - t.B;
  return t;
}

ABTerms ab_terms_trace(const BellmanSample& s, AExponent exponent) {
  ABTerms sum;
  for (int j = 0; j < 2; ++j) {
    const ABTerms t = ab_terms(s.point, s.H.column(j), s.K.column(j), s.p, exponent);
    sum.A += t.A;
    sum.B += t.B;
    sum.C += t.C;
  }
  return sum;
}

double half_projection(Vec2 e, const Mat2& H) {
  if (std::abs(norm(e) - 1.0) > 1e-12) {
    throw PreconditionError("half_projection: e must be a unit vector");
  }
  const double p1 = dot(e, H.column(0));
  const double p2 = dot(e, H.column(1));
  return p1 * p1 + p2 * p2;
}

bool near_nonsmooth(const Point2x2& pt, const Exponent& p) {
  const double a = norm(pt.x);
  const double b = norm(pt.y);
  const double s = a + b;
  if (!(s > 0.0)) return true;
  return a < 1e-3 * s || b < 1e-3 * s || std::abs(b - (p.p_star() - 1.0) * a) < 1e-6 * s;
}

bool CheckReport::passed() const noexcept {
  return std::all_of(properties.begin(), properties.end(), [](const auto& r) { return r.passed; });
}

namespace {

Vec2 normal_vec(rng::Stream& g) {
  const double a = g.normal();
  return {a, g.normal()};
}

// Magnitudes spread over two decades around 1.
double log_scale(rng::Stream& g) { return std::pow(10.0, 2.0 * g.uniform() - 1.0); }

Mat2 random_conformal(rng::Stream& g, double scale) {
  Mat2 m = Mat2::rotation(2.0 * std::numbers::pi * g.uniform(), scale);
  if (g.uniform() < 0.5) m = m * Mat2::from_rows(1.0, 0.0, 0.0, -1.0);
  return m;
}

// K with ||K||_F^2 = fraction * bound; the fraction is pinned to 0 or 1 on
// some draws so both edges of the admissible set get exercised.
Mat2 random_subordinate(rng::Stream& g, double bound_sq) {
  const double u = g.uniform();
  const double fraction = u < 0.1 ? 0.0 : (u < 0.2 ? 1.0 : std::sqrt(g.uniform()));
  Mat2 m = Mat2::from_rows(g.normal(), g.normal(), g.normal(), g.normal());
  const double f = m.frobenius_sq();
  if (fraction == 0.0 || f == 0.0) return Mat2::zero();
  return std::sqrt(fraction * bound_sq / f) * m;
}

void record(PropertyResult& r, double measure, const BellmanSample& s) {
  ++r.checked;
  r.worst = std::max(r.worst, measure);
  if (measure > r.limit && r.passed) {
    r.passed = false;
    r.has_witness = true;
    r.witness = s;
  }
}

PropertyResult make(const char* name, double limit) {
  PropertyResult r;
  r.name = name;
  r.limit = limit;
  r.worst = -std::numeric_limits<double>::infinity();
  return r;
}

}  // namespace

CheckReport run_checks(const Exponent& p, std::uint64_t samples, std::uint64_t seed, double fd_step) {
  require_left_range(p, "run_checks");
  if (samples == 0) throw ArgumentError("run_checks: samples must be >= 1");
  const double factor = subordination_factor(p);
  CheckReport report{p, seed, samples, fd_step, {}};

  {
    rng::Stream g(seed, 1);
    PropertyResult r = make("majorization", 1e-12);
    PropertyResult exact = make("p2-identity", 1e-12);
    for (std::uint64_t i = 0; i < samples; ++i) {
      const Point2x2 pt{log_scale(g) * normal_vec(g), log_scale(g) * normal_vec(g)};
      const double u = u_value(pt, p);
      const double v = v_value(pt, p);
      const BellmanSample s{pt, Mat2::zero(), Mat2::zero(), p};
      record(r, -(u - v) / (1.0 + std::abs(u) + std::abs(v)), s);
      if (p.value() == 2.0) record(exact, std::abs(u - v), s);
    }
    report.properties.push_back(r);
    if (p.value() == 2.0) report.properties.push_back(exact);
  }

  {
    rng::Stream g(seed, 2);
    PropertyResult r = make("diagonal-negativity", 1e-12);
    for (std::uint64_t i = 0; i < samples; ++i) {
      const Vec2 x = log_scale(g) * normal_vec(g);
      Vec2 y = normal_vec(g);
      const double ny = norm(y);
      y = ny > 0.0 ? (g.uniform() * norm(x) / ny) * y : y;
      const Point2x2 pt{x, y};
      if (norm(pt.y) > norm(pt.x)) {
        ++r.rejected;
        continue;
      }
      const BellmanSample s{pt, Mat2::zero(), Mat2::zero(), p};
      record(r, diagonal_negativity(pt, p) ? std::max(0.0, u_value(pt, p)) : 1.0, s);
    }
    report.properties.push_back(r);
  }

  {
    rng::Stream g(seed, 3);
    PropertyResult trace = make("concavity-trace", 1e-6);
    PropertyResult decomposition = make("decomposition-C", 1e-8);
    PropertyResult fd = make("fd-vs-analytic", 1e-6);
    std::uint64_t attempts = 0;
    while (trace.checked < samples && attempts < 20 * samples) {
      ++attempts;
      const double sx = 0.5 + 1.5 * g.uniform();
      const Point2x2 pt{sx * normal_vec(g), sx * normal_vec(g)};
      const Mat2 H = random_conformal(g, 0.2 + 1.8 * g.uniform());
      const Mat2 K = random_subordinate(g, factor * H.frobenius_sq());
      const BellmanSample s{pt, H, K, p};
      double reach = 0.0;
      for (int j = 0; j < 2; ++j) reach = std::max({reach, norm(H.column(j)), norm(K.column(j))});
      const double margin = 100.0 * fd_step * std::max(1.0, reach);
      if (near_nonsmooth(pt, p) || norm(pt.x) < margin || norm(pt.y) < margin) {
        ++trace.rejected;
        continue;
      }
      const double scale = trace_scale(s);
      record(trace, ito_trace(s, fd_step) / scale, s);
      record(decomposition, -ab_terms_trace(s).C / scale, s);
      for (int j = 1; j <= 2; ++j) {
        const double exact = g_second_analytic(pt, H.column(j - 1), K.column(j - 1), p);
        const double approx = g_second_richardson(s, j, fd_step);
        record(fd, std::abs(approx - exact) / std::max(1.0, std::abs(exact)), s);
      }
    }
    fd.rejected = decomposition.rejected = trace.rejected;
    if (trace.checked < samples) trace.passed = false;
    report.properties.push_back(trace);
    report.properties.push_back(decomposition);
    report.properties.push_back(fd);
  }

  {
    rng::Stream g(seed, 4);
    PropertyResult r = make("half-projection", 1e-12);
    for (std::uint64_t i = 0; i < samples; ++i) {
      const Mat2 H = random_conformal(g, log_scale(g));
      const double theta = 2.0 * std::numbers::pi * g.uniform();
      const Vec2 e{std::cos(theta), std::sin(theta)};
      record(r, std::abs(half_projection(e, H) - 0.5 * H.frobenius_sq()), {{}, H, Mat2::zero(), p});
    }
    report.properties.push_back(r);
  }
  return report;
}

}  // namespace omlab::bellman
