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

#include "omlab/simulator.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "omlab/bellman.hpp"
#include "omlab/error.hpp"
#include "omlab/rng.hpp"

namespace omlab::sim {
namespace {

constexpr double kLedgerSlack = 1e-12;

constexpr std::uint64_t kDrawBlock = 512;

// Runs one path, writing u(X_t, Y_t) at the checkpoint steps into `u_out`.
// Draws are generated a block ahead; they depend only on (seed, path, step),
// so batching changes nothing but throughput.
PathState simulate_path(const SimConfig& cfg, const Strategy& strategy, std::uint64_t path,
                        const std::vector<std::uint64_t>& checkpoint_steps, double* u_out) {
  const double dt = cfg.horizon / static_cast<double>(cfg.steps);
  const double sqrt_dt = std::sqrt(dt);
  PathState state{cfg.initial_x, cfg.initial_y, 0.0, 0.0, 0.0};
  PastSummary past{norm(state.x), norm(state.y)};
  std::size_t next_checkpoint = 0;
  std::array<Vec2, kDrawBlock> draws;
  for (std::uint64_t block = 0; block < cfg.steps; block += kDrawBlock) {
    const std::uint64_t len = std::min(kDrawBlock, cfg.steps - block);
    for (std::uint64_t j = 0; j < len; ++j) {
      const auto [z1, z2] = rng::gaussian_pair(cfg.seed, path, static_cast<std::uint32_t>(block + j));
      draws[j] = {sqrt_dt * z1, sqrt_dt * z2};
    }
    for (std::uint64_t j = 0; j < len; ++j) {
      const std::uint64_t n = block + j;
      const Integrands m = strategy.rule(n, state, past, cfg.subordination_factor);
      state = step(state, m.H, m.K, draws[j], dt, cfg.subordination_factor, path, n);
      past.max_norm_x = std::max(past.max_norm_x, std::sqrt(norm_sq(state.x)));
      past.max_norm_y = std::max(past.max_norm_y, std::sqrt(norm_sq(state.y)));
      if (next_checkpoint < checkpoint_steps.size() && checkpoint_steps[next_checkpoint] == n + 1) {
        u_out[next_checkpoint++] = bellman::u_value({state.x, state.y}, cfg.p);
      }
    }
  }
  return state;
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // sample variance
};

Moments moments(const std::vector<double>& v) {
  const std::size_t n = v.size();
  Moments m;
  m.mean = pairwise_sum(v.data(), n) / static_cast<double>(n);
  if (n > 1) {
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = (v[i] - m.mean) * (v[i] - m.mean);
    m.var = pairwise_sum(sq.data(), n) / static_cast<double>(n - 1);
  }
  return m;
}

double covariance(const std::vector<double>& a, double ma, const std::vector<double>& b, double mb) {
  const std::size_t n = a.size();
  if (n < 2) return 0.0;
  std::vector<double> prod(n);
  for (std::size_t i = 0; i < n; ++i) prod[i] = (a[i] - ma) * (b[i] - mb);
  return pairwise_sum(prod.data(), n) / static_cast<double>(n - 1);
}

}  // namespace

double pairwise_sum(const double* data, std::size_t n) noexcept {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += data[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

unsigned resolve_workers(unsigned requested) noexcept {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("OMLAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

double subordination_factor(const Exponent& p, Normalization n) noexcept {
  return n == Normalization::theorem ? 1.0 : p.value() / (2.0 * (p.value() - 1.0));
}

void validate(const SimConfig& c) {
  if (c.p.value() > 2.0) throw RangeError("simulator: requires 1 < p <= 2");
  if (!(c.horizon > 0.0) || !std::isfinite(c.horizon)) throw ArgumentError("simulator: horizon must be > 0");
  if (c.steps < 1) throw ArgumentError("simulator: steps must be >= 1");
  if (c.steps > std::numeric_limits<std::uint32_t>::max()) throw ArgumentError("simulator: steps exceeds 2^32 - 1");
  if (c.paths < 1) throw ArgumentError("simulator: paths must be >= 1");
  if (!(c.subordination_factor > 0.0) || !std::isfinite(c.subordination_factor)) {
    throw ArgumentError("simulator: subordination factor must be > 0");
  }
  if (norm(c.initial_y) > norm(c.initial_x)) throw ArgumentError("simulator: requires ||Y_0|| <= ||X_0||");
  const double draws = 2.0 * static_cast<double>(c.steps) * static_cast<double>(c.paths);
  if (draws > static_cast<double>(c.budget)) {
    throw BudgetExceeded("simulator: " + std::to_string(static_cast<std::uint64_t>(draws)) +
                         " Gaussian draws exceed the budget of " + std::to_string(c.budget));
  }
}

PathState step(const PathState& s, const Mat2& H, const Mat2& K, Vec2 dW, double dt, double factor,
               std::uint64_t path_index, std::uint64_t step_index) {
  if (!is_conformal(H)) {
    throw StrategyViolation("H is not conformal", path_index, step_index);
  }
  const double hf = H.frobenius_sq();
  const double kf = K.frobenius_sq();
  if (kf > factor * hf * (1.0 + kLedgerSlack)) {
    throw StrategyViolation("||K||_F^2 exceeds the subordination bound", path_index, step_index);
  }
  PathState next{s.x + H.apply(dW), s.y + K.apply(dW), s.qv_x + hf * dt, s.qv_y + kf * dt, s.t + dt};
  if (next.qv_y > factor * next.qv_x * (1.0 + kLedgerSlack) + kLedgerSlack) {
    throw StrategyViolation("quadratic-variation ledger broken", path_index, step_index);
  }
  return next;
}

PathState run_path(const SimConfig& config, const Strategy& strategy, std::uint64_t path_index) {
  validate(config);
  if (path_index >= config.paths) throw ArgumentError("run_path: path_index out of range");
  return simulate_path(config, strategy, path_index, {}, nullptr);
}

SimReport estimate_norms(const SimConfig& cfg, const Strategy& strategy, std::uint64_t track_checkpoints) {
  validate(cfg);
  if (track_checkpoints > cfg.steps) throw ArgumentError("simulator: more checkpoints than steps");
  const std::size_t n = cfg.paths;
  const double pv = cfg.p.value();

  std::vector<std::uint64_t> checkpoints(track_checkpoints);
  for (std::uint64_t i = 0; i < track_checkpoints; ++i) {
    checkpoints[i] = ((i + 1) * cfg.steps) / track_checkpoints;
  }
  const std::size_t nc = checkpoints.size();

  std::vector<double> ax(n), ay(n), x1(n), x2(n), iso(n), qv(n), nx2(n);
  std::vector<double> u(n * nc);

  const std::uint64_t chunk = 64;
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> first_failure{std::numeric_limits<std::uint64_t>::max()};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t begin = next.fetch_add(chunk);
      if (begin >= n || begin > first_failure.load()) return;
      const std::uint64_t end = std::min<std::uint64_t>(n, begin + chunk);
      for (std::uint64_t i = begin; i < end; ++i) {
        try {
          const PathState t = simulate_path(cfg, strategy, i, checkpoints, u.data() + i * nc);
          const double nxt = norm(t.x);
          ax[i] = std::pow(nxt, pv);
          ay[i] = std::pow(norm(t.y), pv);
          x1[i] = t.x.x;
          x2[i] = t.x.y;
          nx2[i] = norm_sq(t.x);
          qv[i] = t.qv_x;
          iso[i] = (norm_sq(t.x) - norm_sq(cfg.initial_x)) - t.qv_x;
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (i < first_failure.load()) {
            first_failure.store(i);
            failure = std::current_exception();
          }
          break;
        }
      }
    }
  };

  const unsigned workers = std::min<std::uint64_t>(resolve_workers(cfg.threads), (n + chunk - 1) / chunk);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  SimReport r;
  r.paths_used = n;
  r.bound = std::sqrt(2.0 * cfg.subordination_factor / (pv * pv - pv));
  const double rn = static_cast<double>(n);
  const Moments mx = moments(ax);
  const Moments my = moments(ay);
  r.norm_x_p = std::pow(mx.mean, 1.0 / pv);
  r.norm_y_p = std::pow(my.mean, 1.0 / pv);
  r.stderr_x = mx.mean > 0.0 ? r.norm_x_p / (pv * mx.mean) * std::sqrt(mx.var / rn) : 0.0;
  r.stderr_y = my.mean > 0.0 ? r.norm_y_p / (pv * my.mean) * std::sqrt(my.var / rn) : 0.0;
  if (r.norm_x_p > 0.0) {
    r.ratio = r.norm_y_p / r.norm_x_p;
    if (my.mean > 0.0) {
      const double cov = covariance(ax, mx.mean, ay, my.mean);
      const double rel = my.var / (my.mean * my.mean) + mx.var / (mx.mean * mx.mean) -
                         2.0 * cov / (mx.mean * my.mean);
      r.ratio_stderr = r.ratio / pv * std::sqrt(std::max(0.0, rel) / rn);
    }
  } else {
    r.ratio = std::numeric_limits<double>::quiet_NaN();
  }
  const Moments m1 = moments(x1);
  const Moments m2 = moments(x2);
  r.mean_x_terminal = {m1.mean, m2.mean};
  r.stderr_x_terminal = {std::sqrt(m1.var / rn), std::sqrt(m2.var / rn)};
  r.mean_norm_x_sq = moments(nx2).mean;
  r.mean_qv_x = moments(qv).mean;
  const Moments mi = moments(iso);
  r.isometry_residual = mi.mean;
  r.isometry_stderr = std::sqrt(mi.var / rn);

  if (nc > 0) {
    std::vector<TrackPoint> track;
    std::vector<double> col(n), diff(n);
    const double u0 = bellman::u_value({cfg.initial_x, cfg.initial_y}, cfg.p);
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        col[i] = u[i * nc + c];
        diff[i] = col[i] - (c == 0 ? u0 : u[i * nc + c - 1]);
      }
      const Moments mc = moments(col);
      const Moments md = moments(diff);
      track.push_back({cfg.horizon * static_cast<double>(checkpoints[c]) / static_cast<double>(cfg.steps), mc.mean,
                       std::sqrt(mc.var / rn), std::sqrt(md.var / rn)});
    }
    r.u_track = std::move(track);
  }
  return r;
}

std::vector<TrackPoint> supermartingale_track(const SimConfig& config, const Strategy& strategy,
                                              std::uint64_t checkpoints) {
  if (checkpoints < 1) throw ArgumentError("supermartingale_track: checkpoints must be >= 1");
  return *estimate_norms(config, strategy, checkpoints).u_track;
}

}  // namespace omlab::sim
