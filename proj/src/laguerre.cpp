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

#include "omlab/laguerre.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "omlab/error.hpp"

namespace omlab::laguerre {
namespace {

void check_support(double p, double s, Branch branch) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw DomainError("laguerre: p must be a finite real > 0, got " + std::to_string(p));
  }
  if (!(s >= 0.0 && s <= kMaxS)) {
    throw DomainError("laguerre: s = " + std::to_string(s) + " outside [0, 2]");
  }
  if (branch == Branch::second && !(s > 0.0)) {
    throw DomainError("laguerre: the second branch is singular at s = 0");
  }
}

// Term-wise summation of 1F1(-p; 1; s) and its first two derivatives.
//
// With t_n = c_n s^n the successive ratios of all three series are bounded by
// rho_n = s (n + p) / ((n + 1)(n - 1)) for n >= 2, which decreases in n, so
// once rho_n < 1 the remaining tail of each series is below |term| / (1 - rho_n).
Jet series_jet(double p, double s) {
  Jet jet{1.0, 0.0, 0.0};
  double coeff = 1.0;  // c_n
  double pm1 = 1.0;    // s^(n-1)
  double pm2 = 0.0;    // s^(n-2)
  for (int n = 1; n <= kMaxTerms; ++n) {
    const double nd = static_cast<double>(n);
    coeff *= (nd - 1.0 - p) / (nd * nd);
    const double p0 = pm1 * s;
    const double t0 = coeff * p0;
    const double t1 = nd * coeff * pm1;
    const double t2 = n >= 2 ? nd * (nd - 1.0) * coeff * pm2 : 0.0;
    jet.value += t0;
    jet.d1 += t1;
    jet.d2 += t2;
    if (coeff == 0.0) return jet;  // integer p: the series terminates
    if (n >= 2) {
      const double rho = s * (nd + p) / ((nd + 1.0) * (nd - 1.0));
      if (rho < 1.0) {
        const double tail = std::max({std::abs(t0), std::abs(t1), std::abs(t2)}) / (1.0 - rho);
        if (tail < kTailThreshold) return jet;
      }
    }
    pm2 = pm1;
    pm1 = p0;
  }
  throw ConvergenceError("laguerre: series tail bound not met within " + std::to_string(kMaxTerms) +
                         " terms (p = " + std::to_string(p) + ", s = " + std::to_string(s) + ")");
}

// (y, y') for the ODE y'' = -((1 - s) y' + p y) / s.
using State = std::array<double, 2>;

State rhs(double p, double s, const State& y) { return {y[1], -((1.0 - s) * y[1] + p * y[0]) / s}; }

State rk4(double p, double s, const State& y, double h) {
  const State k1 = rhs(p, s, y);
  const State k2 = rhs(p, s + 0.5 * h, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
  const State k3 = rhs(p, s + 0.5 * h, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
  const State k4 = rhs(p, s + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
  return {y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
          y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

constexpr double kOdeRelTol = 1e-13;
constexpr double kOdeAbsTol = 1e-15;
constexpr long kOdeMaxSteps = 2'000'000;

// Adaptive RK4 with step doubling and local extrapolation.  `h` carries the
// last accepted step size between calls.
State integrate(double p, double s0, State y, double s1, double& h) {
  const double dir = s1 < s0 ? -1.0 : 1.0;
  double s = s0;
  h = dir * std::max(std::abs(h), 1e-8);
  for (long n = 0; n < kOdeMaxSteps; ++n) {
    const double remaining = s1 - s;
    if (remaining * dir <= 0.0) return y;
    // never step more than half-way to the singular point at 0
    double step = dir * std::min({std::abs(h), std::abs(remaining), 0.5 * s});
    const bool last = std::abs(step) == std::abs(remaining);

    const State full = rk4(p, s, y, step);
    const State half = rk4(p, s + 0.5 * step, rk4(p, s, y, 0.5 * step), 0.5 * step);
    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double scale = kOdeAbsTol + kOdeRelTol * std::max(std::abs(y[i]), std::abs(half[i]));
      err = std::max(err, std::abs(half[i] - full[i]) / (15.0 * scale));
    }
    const double factor = err == 0.0 ? 4.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 4.0);
    if (err <= 1.0) {
      y = {half[0] + (half[0] - full[0]) / 15.0, half[1] + (half[1] - full[1]) / 15.0};
      s = last ? s1 : s + step;
      if (!last) h = step * factor;
    } else {
      h = step * factor;
    }
  }
  throw ConvergenceError("laguerre: ODE integration exceeded step cap (p = " + std::to_string(p) + ")");
}

State second_initial(double p) {
  const Jet reg = series_jet(p, 1.0);
  const double n = std::hypot(reg.value, reg.d1);
  return {-reg.d1 / n, reg.value / n};
}

Jet to_jet(double p, double s, const State& y) {
  return {y[0], y[1], -((1.0 - s) * y[1] + p * y[0]) / s};
}

int sign_class(double v) { return v > 0.0 ? 1 : 0; }

}  // namespace

std::string_view to_string(Branch b) noexcept { return b == Branch::regular ? "regular" : "second"; }

Branch branch_from_string(std::string_view name) {
  if (name == "regular") return Branch::regular;
  if (name == "second") return Branch::second;
  throw ArgumentError("unknown Laguerre branch '" + std::string(name) + "' (expected regular|second)");
}

Jet eval_jet(double p, double s, Branch branch) {
  check_support(p, s, branch);
  if (branch == Branch::regular) return series_jet(p, s);
  double h = 1e-3;
  return to_jet(p, s, integrate(p, 1.0, second_initial(p), s, h));
}

double eval(double p, double s, Branch branch) { return eval_jet(p, s, branch).value; }

double eval_derivative(double p, double s, Branch branch) { return eval_jet(p, s, branch).d1; }

std::vector<Jet> sweep_second(double p, std::span<const double> points) {
  for (double s : points) check_support(p, s, Branch::second);
  std::vector<Jet> out;
  out.reserve(points.size());
  State y = second_initial(p);
  double s = 1.0;
  double h = 1e-3;
  for (double target : points) {
    y = integrate(p, s, y, target, h);
    s = target;
    out.push_back(to_jet(p, s, y));
  }
  return out;
}

RootCertificate least_positive_root(const Exponent& p, double tolerance, Branch branch, int scan_points) {
  const double pv = p.value();
  if (!(pv > kMinRootExponent && pv <= kMaxRootExponent)) {
    throw DomainError("least_positive_root: p = " + std::to_string(pv) +
                      " outside the supported range (1.01, 64]");
  }
  if (!(tolerance >= kMinTolerance) || !std::isfinite(tolerance)) {
    throw DomainError("least_positive_root: tolerance must be >= 1e-14");
  }
  if (scan_points < 2) throw DomainError("least_positive_root: scan_points must be >= 2");

  std::vector<double> grid(scan_points);
  for (int i = 0; i < scan_points; ++i) {
    grid[i] = kScanEdge + (1.0 - 2.0 * kScanEdge) * static_cast<double>(i) / (scan_points - 1);
  }
  std::vector<double> values(scan_points);
  if (branch == Branch::regular) {
    for (int i = 0; i < scan_points; ++i) values[i] = series_jet(pv, grid[i]).value;
  } else {
    std::vector<double> inward(grid.rbegin(), grid.rend());
    const auto jets = sweep_second(pv, inward);
    for (int i = 0; i < scan_points; ++i) values[i] = jets[scan_points - 1 - i].value;
  }

  int first = -1;
  for (int i = 0; i + 1 < scan_points; ++i) {
    if (sign_class(values[i]) != sign_class(values[i + 1])) {
      first = i;
      break;
    }
  }
  if (first < 0) {
    throw NoSignChange("least_positive_root: no sign change of the " + std::string(to_string(branch)) +
                       " branch in (0, 1) for p = " + std::to_string(pv));
  }

  auto f = [&](double s) { return eval_jet(pv, s, branch); };
  double lo = grid[first];
  double hi = grid[first + 1];
  const int lo_class = sign_class(values[first]);
  for (int it = 0; it < 200 && hi - lo > tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sign_class(f(mid).value) == lo_class) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo > tolerance) {
    throw ConvergenceError("least_positive_root: bisection stalled above the requested tolerance");
  }

  double root = 0.5 * (lo + hi);
  Jet at = f(root);
  for (int it = 0; it < 3 && at.d1 != 0.0 && at.value != 0.0; ++it) {
    const double next = root - at.value / at.d1;
    if (!(next > lo && next < hi)) break;
    const Jet next_at = f(next);
    if (std::abs(next_at.value) >= std::abs(at.value)) break;
    root = next;
    at = next_at;
  }
  return RootCertificate{p, branch, lo, hi, root, tolerance};
}

}  // namespace omlab::laguerre
