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
#include <cstring>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "omlab/analysis.hpp"
#include "omlab/bellman.hpp"
#include "omlab/error.hpp"
#include "omlab/laguerre.hpp"
#include "omlab/omlab.h"
#include "omlab/simulator.hpp"
#include "omlab/version.hpp"

using namespace omlab;

struct omlab_table {
  std::vector<omlab_constants_row> rows;
};

struct omlab_sim_result {
  omlab_sim_report report;
  std::vector<omlab_track_point> track;
};

namespace {

thread_local std::string g_last_error;

template <class F>
omlab_status guarded(F&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return OMLAB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<omlab_status>(e.status());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return OMLAB_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OMLAB_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return OMLAB_E_INTERNAL;
  }
}

void require(const void* ptr, const char* what) {
  if (ptr == nullptr) throw ArgumentError(std::string(what) + " must not be null");
}

laguerre::Branch to_branch(omlab_branch b) {
  switch (b) {
    case OMLAB_BRANCH_REGULAR:
      return laguerre::Branch::regular;
    case OMLAB_BRANCH_SECOND:
      return laguerre::Branch::second;
  }
  throw ArgumentError("unknown branch value");
}

Vec2 vec(const double v[2]) { return {v[0], v[1]}; }
Mat2 mat(const double m[4]) { return Mat2::from_rows(m[0], m[1], m[2], m[3]); }

void copy_mat(const Mat2& m, double out[4]) {
  out[0] = m.h[0][0];
  out[1] = m.h[0][1];
  out[2] = m.h[1][0];
  out[3] = m.h[1][1];
}

omlab_constants_row to_c(const analysis::ConstantsRow& r) {
  return {r.p,       r.p_prime,           r.burkholder, r.thm1_left, r.thm1_right, r.z_p,
          r.z_p_prime, r.c_right,         r.c_left_at_conjugate, r.conjecture_residual, r.ba_sqrt,
          r.ba_interp, r.residual_error_bound, OMLAB_OK};
}

}  // namespace

extern "C" {

const char* omlab_version(void) { return omlab::kVersion; }

const char* omlab_last_error(void) { return g_last_error.c_str(); }

omlab_status omlab_laguerre_eval(double p, double s, omlab_branch branch, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = laguerre::eval(p, s, to_branch(branch));
  });
}

omlab_status omlab_laguerre_derivative(double p, double s, omlab_branch branch, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = laguerre::eval_derivative(p, s, to_branch(branch));
  });
}

omlab_status omlab_least_positive_root(double p, double tol, omlab_branch branch, unsigned scan_points,
                                       omlab_root_certificate* out) {
  return guarded([&] {
    require(out, "out");
    const auto b = to_branch(branch);
    if (scan_points > 1u << 24) throw DomainError("least_positive_root: scan_points above 2^24");
    const int points = scan_points == 0 ? laguerre::kScanPoints : static_cast<int>(scan_points);
    const auto cert = laguerre::least_positive_root(Exponent(p), tol, b, points);
    *out = {cert.p.value(),  branch,   cert.bracket_lo, cert.bracket_hi, cert.root,
            cert.tolerance, laguerre::eval(p, cert.bracket_lo, b), laguerre::eval(p, cert.bracket_hi, b)};
  });
}

omlab_status omlab_reference_constants_eval(double p, omlab_reference_constants* out) {
  return guarded([&] {
    require(out, "out");
    const auto r = analysis::reference_constants(Exponent(p));
    *out = {r.burkholder, r.thm1_left, r.thm1_right, r.ba_sqrt, r.ba_interp};
  });
}

omlab_status omlab_c_left(double p_prime, double tol, omlab_branch branch, double* value, double* error_bound) {
  return guarded([&] {
    require(value, "value");
    const auto c = analysis::c_left(Exponent(p_prime), tol, to_branch(branch));
    *value = c.value;
    if (error_bound) *error_bound = c.error_bound;
  });
}

omlab_status omlab_c_right(double p, double tol, omlab_branch branch, double* value, double* error_bound) {
  return guarded([&] {
    require(value, "value");
    const auto c = analysis::c_right(Exponent(p), tol, to_branch(branch));
    *value = c.value;
    if (error_bound) *error_bound = c.error_bound;
  });
}

omlab_status omlab_constants_table(double p_min, double p_max, double step, double tol, omlab_branch branch,
                                   omlab_table** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    auto table = std::make_unique<omlab_table>();
    for (const auto& r : analysis::constants_table(p_min, p_max, step, tol, to_branch(branch))) {
      table->rows.push_back(to_c(r));
    }
    *out = table.release();
  });
}

omlab_status omlab_conjecture_scan(double p_min, double p_max, double step, double tol, omlab_branch branch,
                                   omlab_table** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    if (!(p_min >= 2.0)) throw ArgumentError("conjecture scan: requires p_min >= 2");
    auto table = std::make_unique<omlab_table>();
    const auto b = to_branch(branch);
    for (double p : analysis::grid(p_min, p_max, step)) {
      try {
        table->rows.push_back(to_c(analysis::constants_row(Exponent(p), tol, b)));
      } catch (const NumericalError&) {
        const Exponent e(p);
        const auto ref = analysis::reference_constants(e);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        table->rows.push_back({p, e.conjugate_value(), ref.burkholder, ref.thm1_left,
                               analysis::reference_constants(e.conjugate()).thm1_right, nan, nan, nan, nan, nan,
                               ref.ba_sqrt, ref.ba_interp, nan, OMLAB_E_NUMERICAL});
      }
    }
    *out = table.release();
  });
}

size_t omlab_table_size(const omlab_table* table) { return table ? table->rows.size() : 0; }

omlab_status omlab_table_row(const omlab_table* table, size_t index, omlab_constants_row* out) {
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    if (index >= table->rows.size()) throw ArgumentError("table row index out of range");
    *out = table->rows[index];
  });
}

void omlab_table_destroy(omlab_table* table) { delete table; }

omlab_status omlab_bellman_u(double p, const double x[2], const double y[2], double* out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    require(out, "out");
    *out = bellman::u_value({vec(x), vec(y)}, Exponent(p));
  });
}

omlab_status omlab_bellman_v(double p, const double x[2], const double y[2], double* out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    require(out, "out");
    *out = bellman::v_value({vec(x), vec(y)}, Exponent(p));
  });
}

omlab_status omlab_ito_trace(double p, const double x[2], const double y[2], const double H[4], const double K[4],
                             double fd_step, double* out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    require(H, "H");
    require(K, "K");
    require(out, "out");
    *out = bellman::ito_trace({{vec(x), vec(y)}, mat(H), mat(K), Exponent(p)}, fd_step);
  });
}

omlab_status omlab_bellman_check(double p, uint64_t samples, uint64_t seed, double fd_step,
                                 omlab_bellman_report* out) {
  return guarded([&] {
    require(out, "out");
    const auto report = bellman::run_checks(Exponent(p), samples, seed, fd_step);
    if (report.properties.size() > OMLAB_MAX_PROPERTIES) throw Error("too many properties for the C report");
    *out = {};
    out->p = p;
    out->seed = seed;
    out->samples = samples;
    out->fd_step = fd_step;
    out->passed = report.passed() ? 1 : 0;
    out->count = report.properties.size();
    for (std::size_t i = 0; i < report.properties.size(); ++i) {
      const auto& r = report.properties[i];
      auto& o = out->properties[i];
      std::strncpy(o.name, r.name.c_str(), sizeof(o.name) - 1);
      o.passed = r.passed ? 1 : 0;
      o.checked = r.checked;
      o.rejected = r.rejected;
      o.worst = r.worst;
      o.limit = r.limit;
      o.has_witness = r.has_witness ? 1 : 0;
      const auto& w = r.witness;
      o.witness_x[0] = w.point.x.x;
      o.witness_x[1] = w.point.x.y;
      o.witness_y[0] = w.point.y.x;
      o.witness_y[1] = w.point.y.y;
      copy_mat(w.H, o.witness_H);
      copy_mat(w.K, o.witness_K);
    }
  });
}

void omlab_sim_config_init(omlab_sim_config* config) {
  if (!config) return;
  const sim::SimConfig d;
  *config = {};
  config->p = 1.5;
  config->horizon = d.horizon;
  config->steps = d.steps;
  config->paths = d.paths;
  config->seed = d.seed;
  config->normalization = OMLAB_NORM_THEOREM;
  config->budget = d.budget;
  config->threads = 0;
}

size_t omlab_strategy_count(void) { return sim::strategy_names().size(); }

const char* omlab_strategy_name(size_t index) {
  static const std::vector<std::string> names = sim::strategy_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

omlab_status omlab_simulate(const omlab_sim_config* config, const char* strategy, const omlab_param* params,
                            size_t param_count, uint64_t track_checkpoints, omlab_sim_result** out) {
  return guarded([&] {
    require(config, "config");
    require(strategy, "strategy");
    require(out, "out");
    *out = nullptr;
    if (param_count > 0) require(params, "params");
    sim::Parameters overrides;
    for (size_t i = 0; i < param_count; ++i) {
      require(params[i].name, "param name");
      overrides[params[i].name] = params[i].value;
    }
    const Exponent p(config->p);
    sim::SimConfig cfg;
    cfg.p = p;
    cfg.horizon = config->horizon;
    cfg.steps = config->steps;
    cfg.paths = config->paths;
    cfg.seed = config->seed;
    cfg.initial_x = vec(config->initial_x);
    cfg.initial_y = vec(config->initial_y);
    cfg.subordination_factor = sim::subordination_factor(
        p, config->normalization == OMLAB_NORM_PROOF ? sim::Normalization::proof : sim::Normalization::theorem);
    cfg.budget = config->budget;
    cfg.threads = config->threads;

    const auto strat = sim::make_strategy(strategy, overrides);
    const auto r = sim::estimate_norms(cfg, *strat, track_checkpoints);

    auto result = std::make_unique<omlab_sim_result>();
    result->report = {r.norm_x_p,
                      r.norm_y_p,
                      r.ratio,
                      r.stderr_x,
                      r.stderr_y,
                      r.ratio_stderr,
                      r.bound,
                      cfg.subordination_factor,
                      r.paths_used,
                      {r.mean_x_terminal.x, r.mean_x_terminal.y},
                      {r.stderr_x_terminal.x, r.stderr_x_terminal.y},
                      r.mean_norm_x_sq,
                      r.mean_qv_x,
                      r.isometry_residual,
                      r.isometry_stderr};
    if (r.u_track) {
      for (const auto& t : *r.u_track) result->track.push_back({t.t, t.mean_u, t.half_width, t.increment_stderr});
    }
    *out = result.release();
  });
}

omlab_status omlab_sim_result_report(const omlab_sim_result* result, omlab_sim_report* out) {
  return guarded([&] {
    require(result, "result");
    require(out, "out");
    *out = result->report;
  });
}

size_t omlab_sim_result_track_size(const omlab_sim_result* result) { return result ? result->track.size() : 0; }

omlab_status omlab_sim_result_track_point(const omlab_sim_result* result, size_t index, omlab_track_point* out) {
  return guarded([&] {
    require(result, "result");
    require(out, "out");
    if (index >= result->track.size()) throw ArgumentError("track index out of range");
    *out = result->track[index];
  });
}

void omlab_sim_result_destroy(omlab_sim_result* result) { delete result; }

}  // extern "C"
