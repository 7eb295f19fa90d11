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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omlab/exponent.hpp"
#include "omlab/linalg.hpp"

// Monte Carlo pairs (X, Y) of R^2-valued martingales driven by a planar
// Brownian motion: dX = H dW with H conformal, dY = K dW with
// ||K||_F^2 <= factor * ||H||_F^2.
namespace omlab::sim {

struct PathState {
  Vec2 x;
  Vec2 y;
  double qv_x = 0.0;
  double qv_y = 0.0;
  double t = 0.0;
};

// Running information a strategy may condition on (all of it known before the
// increment it is about to choose integrands for).
struct PastSummary {
  double max_norm_x = 0.0;
  double max_norm_y = 0.0;
};

struct Integrands {
  Mat2 H;
  Mat2 K;
};

using Parameters = std::map<std::string, double, std::less<>>;

class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::string_view name() const noexcept = 0;
  // Must return a conformal H and ||K||_F^2 <= factor * ||H||_F^2.
  virtual Integrands rule(std::uint64_t step, const PathState& state, const PastSummary& past,
                          double factor) const = 0;

  const Parameters& parameters() const noexcept { return params_; }

 protected:
  explicit Strategy(Parameters params) : params_(std::move(params)) {}

 private:
  Parameters params_;
};

// Built-in catalog: constant, angle-chase, random-adapted, freeze-after-hit.
// `overrides` replaces individual default parameters; unknown strategy or
// parameter names raise ArgumentError listing what is available.
std::unique_ptr<Strategy> make_strategy(std::string_view name, const Parameters& overrides = {});
std::vector<std::string> strategy_names();
Parameters default_parameters(std::string_view name);

enum class Normalization { theorem, proof };

// 1 for the theorem form, p / (2(p-1)) for the proof-internal form.
double subordination_factor(const Exponent& p, Normalization n) noexcept;

struct SimConfig {
  Exponent p = Exponent(2.0);
  double horizon = 1.0;
  std::uint64_t steps = 1000;
  std::uint64_t paths = 10000;
  std::uint64_t seed = 0;
  Vec2 initial_x;
  Vec2 initial_y;
  double subordination_factor = 1.0;
  std::uint64_t budget = 1'000'000'000;  // scalar Gaussian draws
  unsigned threads = 0;                  // 0: hardware concurrency, capped by OMLAB_THREADS
};

void validate(const SimConfig& config);

// One Euler step of the stochastic integrals; exact for integrands held
// constant over the step.  Throws StrategyViolation when H is not conformal or
// K breaks the subordination bound.
PathState step(const PathState& state, const Mat2& H, const Mat2& K, Vec2 dW, double dt, double factor,
               std::uint64_t path_index = 0, std::uint64_t step_index = 0);

// Terminal state of path `path_index`; a pure function of (config, strategy, path_index).
PathState run_path(const SimConfig& config, const Strategy& strategy, std::uint64_t path_index);

struct TrackPoint {
  double t = 0.0;
  double mean_u = 0.0;
  double half_width = 0.0;       // one standard error of mean_u
  double increment_stderr = 0.0;  // standard error of mean_u minus the previous checkpoint's mean
};

struct SimReport {
  double norm_x_p = 0.0;
  double norm_y_p = 0.0;
  double ratio = 0.0;
  double stderr_x = 0.0;
  double stderr_y = 0.0;
  double ratio_stderr = 0.0;
  double bound = 0.0;
  std::uint64_t paths_used = 0;
  Vec2 mean_x_terminal;
  Vec2 stderr_x_terminal;
  double mean_norm_x_sq = 0.0;
  double mean_qv_x = 0.0;
  double isometry_residual = 0.0;  // mean of ||X_T||^2 - ||X_0||^2 - <X>_T
  double isometry_stderr = 0.0;
  std::optional<std::vector<TrackPoint>> u_track;
};

// ||X_T||_p, ||Y_T||_p and their ratio; `track_checkpoints` > 0 also records
// mean u(X_t, Y_t) at that many evenly spaced times after 0.
SimReport estimate_norms(const SimConfig& config, const Strategy& strategy, std::uint64_t track_checkpoints = 0);

std::vector<TrackPoint> supermartingale_track(const SimConfig& config, const Strategy& strategy,
                                              std::uint64_t checkpoints);

// Pairwise (cascade) summation in index order.
double pairwise_sum(const double* data, std::size_t n) noexcept;

// Number of workers that will run, after applying OMLAB_THREADS.
unsigned resolve_workers(unsigned requested) noexcept;

}  // namespace omlab::sim
