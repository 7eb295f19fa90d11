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

#include <cmath>
#include <string>

#include "omlab/error.hpp"
#include "omlab/simulator.hpp"

namespace omlab::sim {
namespace {

const Mat2 kReflect = Mat2::from_rows(1.0, 0.0, 0.0, -1.0);

// H = c R(theta) (optionally reflected), K = k_scale sqrt(factor) R(k_angle) H.
class ConstantStrategy final : public Strategy {
 public:
  explicit ConstantStrategy(Parameters params) : Strategy(std::move(params)) {
    const auto& pr = parameters();
    H_ = Mat2::rotation(pr.at("theta"), pr.at("c"));
    if (pr.at("reflect") != 0.0) H_ = H_ * kReflect;
    K_base_ = pr.at("k_angle") == 0.0 ? H_ : Mat2::rotation(pr.at("k_angle")) * H_;
    k_scale_ = pr.at("k_scale");
  }

  std::string_view name() const noexcept override { return "constant"; }

  Integrands rule(std::uint64_t, const PathState&, const PastSummary&, double factor) const override {
    const double s = k_scale_ * std::sqrt(factor);
    return {H_, s == 1.0 ? K_base_ : s * K_base_};
  }

 private:
  Mat2 H_;
  Mat2 K_base_;
  double k_scale_ = 1.0;
};

// H = c I; all of Y's admissible quadratic variation spent along one direction
// tied to the current Y: tangential (mode 0), so ||Y||^2 grows exactly by
// ||dY||^2, or radial (mode 1).
class AngleChaseStrategy final : public Strategy {
 public:
  explicit AngleChaseStrategy(Parameters params) : Strategy(std::move(params)) {
    c_ = parameters().at("c");
    k_scale_ = parameters().at("k_scale");
    radial_ = parameters().at("mode") != 0.0;
  }

  std::string_view name() const noexcept override { return "angle-chase"; }

  Integrands rule(std::uint64_t, const PathState& state, const PastSummary&, double factor) const override {
    const Mat2 H = Mat2::from_rows(c_, 0.0, 0.0, c_);
    const double m = k_scale_ * std::sqrt(factor * H.frobenius_sq());
    const double ny = std::sqrt(norm_sq(state.y));
    Vec2 dir = ny > 0.0 ? (1.0 / ny) * state.y : Vec2{1.0, 0.0};
    if (!radial_) dir = {-dir.y, dir.x};
    return {H, Mat2::from_rows(m * dir.x, 0.0, m * dir.y, 0.0)};
  }

 private:
  double c_ = 1.0;
  double k_scale_ = 1.0;
  bool radial_ = false;
};

// Unit vector along (a, b), or e_1 when (a, b) vanishes.
Vec2 unit(double a, double b) noexcept {
  const double n = std::sqrt(a * a + b * b);
  return n > 0.0 ? Vec2{a / n, b / n} : Vec2{1.0, 0.0};
}

// H and K scrambled from the current state by fixed linear mixing followed by
// normalization, so they vary path by path while staying predictable.
class RandomAdaptedStrategy final : public Strategy {
 public:
  explicit RandomAdaptedStrategy(Parameters params) : Strategy(std::move(params)) {
    c_ = parameters().at("c");
    k_scale_ = parameters().at("k_scale");
  }

  std::string_view name() const noexcept override { return "random-adapted"; }

  Integrands rule(std::uint64_t step, const PathState& s, const PastSummary&, double factor) const override {
    const double phase = 0.618033988749895 * static_cast<double>(step % 97) - 30.0;
    const Vec2 r = unit(3.1 * s.x.x - 1.7 * s.x.y + 2.3 * s.y.x + phase, 0.9 * s.y.y - 1.3 * s.x.x + 0.5);
    const double g = -1.3 * s.x.x + 2.9 * s.x.y - 0.7 * s.y.x + 3.7 * s.y.y;
    const double scale = c_ * (0.5 + 0.5 * g * g / (1.0 + g * g));
    Mat2 H = Mat2::from_rows(scale * r.x, -scale * r.y, scale * r.y, scale * r.x);
    if (s.x.x * s.y.y > 0.0) H = H * kReflect;
    const Vec2 m1 = unit(2.2 * s.x.x + 0.4 * s.x.y + 4.1 * s.y.x + 1.0, -1.9 * s.y.y + 0.6);
    const Vec2 m2 = unit(0.8 * s.x.x - 3.3 * s.x.y + 2.0, 1.6 * s.y.x + 2.7 * s.y.y - 0.3);
    // columns m1, m2: ||M||_F^2 = 2 up to rounding
    const Mat2 M = Mat2::from_rows(m1.x, m2.x, m1.y, m2.y);
    const double fraction = 0.5 * (1.0 + dot(r, m1));
    const double m = k_scale_ * std::sqrt(fraction * factor * H.frobenius_sq() / M.frobenius_sq());
    return {H, m * M};
  }

 private:
  double c_ = 1.0;
  double k_scale_ = 1.0;
};

// K = H until ||Y|| first exceeds `threshold`, then K = 0.
class FreezeAfterHitStrategy final : public Strategy {
 public:
  explicit FreezeAfterHitStrategy(Parameters params) : Strategy(std::move(params)) {
    c_ = parameters().at("c");
    threshold_ = parameters().at("threshold");
  }

  std::string_view name() const noexcept override { return "freeze-after-hit"; }

  Integrands rule(std::uint64_t, const PathState&, const PastSummary& past, double) const override {
    const Mat2 H = Mat2::from_rows(c_, 0.0, 0.0, c_);
    return {H, past.max_norm_y > threshold_ ? Mat2::zero() : H};
  }

 private:
  double c_ = 1.0;
  double threshold_ = 1.0;
};

std::string catalog_listing() {
  std::string out;
  for (const auto& n : strategy_names()) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

}  // namespace

std::vector<std::string> strategy_names() {
  return {"constant", "angle-chase", "random-adapted", "freeze-after-hit"};
}

Parameters default_parameters(std::string_view name) {
  if (name == "constant") return {{"c", 1.0}, {"theta", 0.0}, {"reflect", 0.0}, {"k_scale", 1.0}, {"k_angle", 0.0}};
  if (name == "angle-chase") return {{"c", 1.0}, {"k_scale", 1.0}, {"mode", 0.0}};
  if (name == "random-adapted") return {{"c", 1.0}, {"k_scale", 1.0}};
  if (name == "freeze-after-hit") return {{"c", 1.0}, {"threshold", 1.0}};
  throw ArgumentError("unknown strategy '" + std::string(name) + "'; available: " + catalog_listing());
}

std::unique_ptr<Strategy> make_strategy(std::string_view name, const Parameters& overrides) {
  Parameters params = default_parameters(name);
  for (const auto& [key, value] : overrides) {
    auto it = params.find(key);
    if (it == params.end()) {
      std::string known;
      for (const auto& kv : params) known += (known.empty() ? "" : ", ") + kv.first;
      throw ArgumentError("strategy '" + std::string(name) + "' has no parameter '" + key + "' (known: " + known + ")");
    }
    if (!std::isfinite(value)) throw ArgumentError("strategy parameter '" + key + "' must be finite");
    it->second = value;
  }
  if (name == "constant") return std::make_unique<ConstantStrategy>(std::move(params));
  if (name == "angle-chase") return std::make_unique<AngleChaseStrategy>(std::move(params));
  if (name == "random-adapted") return std::make_unique<RandomAdaptedStrategy>(std::move(params));
  return std::make_unique<FreezeAfterHitStrategy>(std::move(params));
}

}  // namespace omlab::sim
