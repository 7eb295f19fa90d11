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

#include "omlab/analysis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "omlab/error.hpp"

namespace omlab::analysis {

ReferenceConstants reference_constants(const Exponent& p) {
  const double pv = p.value();
  const double pp = pv * pv - pv;
  const double burkholder = p.p_star() - 1.0;
  return {burkholder, std::sqrt(pp / 2.0), std::sqrt(2.0 / pp), std::sqrt(2.0 * pp),
          kInterpolationCoefficient * burkholder};
}

RootConstant c_left(const Exponent& p_prime, double tol, laguerre::Branch branch) {
  if (p_prime.value() > 2.0) {
    throw DomainError("c_left: requires 1 < p' <= 2, got " + std::to_string(p_prime.value()));
  }
  const auto cert = laguerre::least_positive_root(p_prime, tol, branch);
  const double z = cert.root;
  const double one_minus = 1.0 - z;
  const double value = z / one_minus / std::numbers::sqrt2;
  const double slope = 1.0 / (std::numbers::sqrt2 * one_minus * one_minus);
  return {value, slope * cert.width(), cert};
}

RootConstant c_right(const Exponent& p, double tol, laguerre::Branch branch) {
  if (p.value() < 2.0) {
    throw DomainError("c_right: requires p >= 2, got " + std::to_string(p.value()));
  }
  const auto cert = laguerre::least_positive_root(p, tol, branch);
  const double z = cert.root;
  const double value = std::numbers::sqrt2 * (1.0 - z) / z;
  const double slope = std::numbers::sqrt2 / (z * z);
  return {value, slope * cert.width(), cert};
}

ConjectureResult conjecture_residual(const Exponent& p, double tol, laguerre::Branch branch) {
  if (p.value() < 2.0) {
    throw DomainError("conjecture_residual: requires p >= 2, got " + std::to_string(p.value()));
  }
  const RootConstant right = c_right(p, tol, branch);
  const RootConstant left = c_left(p.conjugate(), tol, branch);
  return {std::abs(right.value - left.value), right.error_bound + left.error_bound, right, left};
}

ConstantsRow constants_row(const Exponent& p, double tol, laguerre::Branch branch) {
  const ReferenceConstants ref = reference_constants(p);
  const ConjectureResult conj = conjecture_residual(p, tol, branch);
  const Exponent q = p.conjugate();
  return ConstantsRow{p.value(),
                      q.value(),
                      ref.burkholder,
                      ref.thm1_left,
                      reference_constants(q).thm1_right,
                      conj.right.certificate.root,
                      conj.left.certificate.root,
                      conj.right.value,
                      conj.left.value,
                      conj.residual,
                      ref.ba_sqrt,
                      ref.ba_interp,
                      conj.error_bound};
}

std::vector<double> grid(double p_min, double p_max, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ArgumentError("grid: step must be > 0");
  if (!(p_min <= p_max) || !std::isfinite(p_min) || !std::isfinite(p_max)) {
    throw ArgumentError("grid: requires p_min <= p_max");
  }
  const auto count = static_cast<std::size_t>(std::floor((p_max - p_min) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = p_min + static_cast<double>(i) * step;
  return out;
}

std::vector<ConstantsRow> constants_table(double p_min, double p_max, double step, double tol,
                                          laguerre::Branch branch) {
  if (!(p_min >= 2.0)) throw ArgumentError("constants_table: requires p_min >= 2");
  std::vector<ConstantsRow> rows;
  for (double p : grid(p_min, p_max, step)) rows.push_back(constants_row(Exponent(p), tol, branch));
  return rows;
}

}  // namespace omlab::analysis
