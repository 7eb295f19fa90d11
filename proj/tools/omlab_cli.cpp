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

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "omlab/omlab.h"
#include "output.hpp"

using omlab::cli::format_number;
using omlab::cli::Json;
using omlab::cli::Precision;

namespace {

constexpr int kExitArgument = 2;

struct Failure {
  int code;
};

// Reports the library's last error and aborts the command with its status.
void check(omlab_status st) {
  if (st != OMLAB_OK) {
    std::cerr << "omlab: " << omlab_last_error() << "\n";
    throw Failure{static_cast<int>(st)};
  }
}

[[noreturn]] void argument_error(const std::string& msg) {
  std::cerr << "omlab: " << msg << "\n";
  throw Failure{kExitArgument};
}

omlab_branch parse_branch(const std::string& name) {
  if (name == "regular") return OMLAB_BRANCH_REGULAR;
  if (name == "second") return OMLAB_BRANCH_SECOND;
  argument_error("unknown branch '" + name + "' (expected regular|second)");
}

const char* branch_name(omlab_branch b) { return b == OMLAB_BRANCH_REGULAR ? "regular" : "second"; }

Json versions() {
  return Json::object()
      .set("tool", std::string("omlab ") + omlab_version())
      .set("root_tolerance_default", 1e-12)
      .set("scan_points", 2048)
      .set("interpolation_coefficient", 1.575)
      .set("rng", "philox4x32-10 + AS241 inverse normal");
}

Json envelope(const std::string& command, Json parameters, Json results, std::optional<std::uint64_t> seed) {
  Json env = Json::object();
  env.set("command", command).set("parameters", std::move(parameters)).set("results", std::move(results));
  env.set("versions", versions());
  if (seed) env.set("seed", *seed);
  return env;
}

void emit(const Json& j, bool machine) { std::cout << j.str(machine ? Precision::machine : Precision::human) << "\n"; }

std::vector<double> row_fields(const omlab_constants_row& r) {
  return {r.p,       r.p_prime, r.burkholder,          r.thm1_left,           r.thm1_right, r.z_p,
          r.z_p_prime, r.c_right, r.c_left_at_conjugate, r.conjecture_residual, r.ba_sqrt,    r.ba_interp};
}

struct TableHandle {
  omlab_table* t = nullptr;
  ~TableHandle() { omlab_table_destroy(t); }
};

std::vector<omlab_constants_row> rows_of(const omlab_table* t) {
  std::vector<omlab_constants_row> rows(omlab_table_size(t));
  for (std::size_t i = 0; i < rows.size(); ++i) check(omlab_table_row(t, i, &rows[i]));
  return rows;
}

// ---- constants ------------------------------------------------------------

struct ConstantsArgs {
  double p_min = 2.0, p_max = 8.0, step = 0.25, tol = 1e-12;
  std::string branch = "regular", format = "csv", out;
};

int cmd_constants(const ConstantsArgs& a) {
  TableHandle table;
  if (!(a.p_min <= a.p_max)) argument_error("empty grid: p-min > p-max");
  check(omlab_constants_table(a.p_min, a.p_max, a.step, a.tol, parse_branch(a.branch), &table.t));
  const auto rows = rows_of(table.t);

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out, std::ios::binary);
    if (!file) argument_error("cannot open output file '" + a.out + "'");
  }
  std::ostream& os = a.out.empty() ? std::cout : file;

  if (a.format == "csv") {
    os << omlab::cli::kConstantsHeader << "\n";
    for (const auto& r : rows) os << omlab::cli::csv_line(row_fields(r)) << "\n";
  } else if (a.format == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json obj = Json::object();
      const auto f = row_fields(r);
      for (std::size_t i = 0; i < f.size(); ++i) obj.set(omlab::cli::kConstantsColumns[i], f[i]);
      arr.push(std::move(obj));
    }
    os << arr.str() << "\n";
  } else {
    for (const char* c : omlab::cli::kConstantsColumns) os << std::left << std::setw(20) << c;
    os << "\n";
    for (const auto& r : rows) {
      for (double v : row_fields(r)) os << std::left << std::setw(20) << format_number(v, Precision::human);
      os << "\n";
    }
  }
  return 0;
}

// ---- root -----------------------------------------------------------------

struct RootArgs {
  double p = 0.0, tol = 1e-12;
  unsigned scan_points = 2048;
  std::string branch = "regular", format = "json";
};

int cmd_root(const RootArgs& a) {
  omlab_root_certificate c{};
  if (a.scan_points < 2) argument_error("--scan-points must be >= 2");
  check(omlab_least_positive_root(a.p, a.tol, parse_branch(a.branch), a.scan_points, &c));
  Json res = Json::object();
  res.set("p", c.p)
      .set("branch", branch_name(c.branch))
      .set("bracket_lo", c.bracket_lo)
      .set("bracket_hi", c.bracket_hi)
      .set("root", c.root)
      .set("tolerance", c.tolerance)
      .set("width", c.bracket_hi - c.bracket_lo)
      .set("value_lo", c.value_lo)
      .set("value_hi", c.value_hi);
  Json params = Json::object()
                    .set("p", a.p)
                    .set("tol", a.tol)
                    .set("branch", a.branch)
                    .set("scan_points", static_cast<std::uint64_t>(a.scan_points));
  emit(envelope("root", std::move(params), std::move(res), std::nullopt), a.format == "json");
  return 0;
}

// ---- conjecture -----------------------------------------------------------

struct ConjectureArgs {
  double p_min = 2.0, p_max = 8.0, step = 0.25, tol = 1e-12;
  std::string branch = "both", format = "json";
};

int cmd_conjecture(const ConjectureArgs& a) {
  if (!(a.p_min >= 2.0)) argument_error("conjecture scan requires p-min >= 2");
  if (!(a.p_min <= a.p_max)) argument_error("empty grid: p-min > p-max");
  std::vector<omlab_branch> branches;
  if (a.branch == "both") {
    branches = {OMLAB_BRANCH_REGULAR, OMLAB_BRANCH_SECOND};
  } else {
    branches = {parse_branch(a.branch)};
  }

  struct Row {
    omlab_branch branch;
    omlab_constants_row row;
  };
  std::vector<Row> all;
  for (auto b : branches) {
    TableHandle table;
    check(omlab_conjecture_scan(a.p_min, a.p_max, a.step, a.tol, b, &table.t));
    for (const auto& r : rows_of(table.t)) all.push_back({b, r});
  }

  if (a.format == "csv") {
    std::cout << "branch,p,p_prime,z_p,z_p_prime,c_right,c_left_at_conjugate,conjecture_residual,error_bound,status\n";
    for (const auto& [b, r] : all) {
      std::cout << branch_name(b) << ','
                << omlab::cli::csv_line({r.p, r.p_prime, r.z_p, r.z_p_prime, r.c_right, r.c_left_at_conjugate,
                                         r.conjecture_residual, r.residual_error_bound})
                << ',' << (r.status == OMLAB_OK ? "ok" : "no_root") << "\n";
    }
    return 0;
  }
  Json rows = Json::array();
  for (const auto& [b, r] : all) {
    rows.push(Json::object()
                  .set("branch", branch_name(b))
                  .set("p", r.p)
                  .set("p_prime", r.p_prime)
                  .set("z_p", r.z_p)
                  .set("z_p_prime", r.z_p_prime)
                  .set("c_right", r.c_right)
                  .set("c_left_at_conjugate", r.c_left_at_conjugate)
                  .set("conjecture_residual", r.conjecture_residual)
                  .set("error_bound", r.residual_error_bound)
                  .set("status", r.status == OMLAB_OK ? "ok" : "no_root"));
  }
  Json params = Json::object()
                    .set("p_min", a.p_min)
                    .set("p_max", a.p_max)
                    .set("step", a.step)
                    .set("tol", a.tol)
                    .set("branch", a.branch);
  emit(envelope("conjecture", std::move(params), std::move(rows), std::nullopt), a.format == "json");
  return 0;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  double p = 0.0, horizon = 1.0;
  std::string strategy, factor_mode = "theorem", format = "json";
  std::uint64_t paths = 10000, steps = 1000, track_u = 0, budget = 1'000'000'000;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> params;
  std::vector<double> x0{0.0, 0.0}, y0{0.0, 0.0};
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, const std::string& format) {
  if (seed) return *seed;
  if (format == "json") argument_error("--seed is required with --format json");
  return 0;
}

int cmd_simulate(const SimulateArgs& a) {
  const std::uint64_t seed = resolve_seed(a.seed, a.format);
  bool known = false;
  std::string catalog;
  for (std::size_t i = 0; i < omlab_strategy_count(); ++i) {
    const std::string name = omlab_strategy_name(i);
    known = known || name == a.strategy;
    catalog += (catalog.empty() ? "" : ", ") + name;
  }
  if (!known) argument_error("unknown strategy '" + a.strategy + "'; available: " + catalog);

  std::vector<std::string> names;
  std::vector<omlab_param> params;
  names.reserve(a.params.size());
  for (const auto& kv : a.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) argument_error("--param expects name=value, got '" + kv + "'");
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
    } catch (const std::exception&) {
      argument_error("--param value is not a number: '" + kv + "'");
    }
    names.push_back(kv.substr(0, eq));
    params.push_back({nullptr, value});
  }
  for (std::size_t i = 0; i < params.size(); ++i) params[i].name = names[i].c_str();

  omlab_sim_config cfg;
  omlab_sim_config_init(&cfg);
  cfg.p = a.p;
  cfg.horizon = a.horizon;
  cfg.steps = a.steps;
  cfg.paths = a.paths;
  cfg.seed = seed;
  cfg.initial_x[0] = a.x0[0];
  cfg.initial_x[1] = a.x0[1];
  cfg.initial_y[0] = a.y0[0];
  cfg.initial_y[1] = a.y0[1];
  if (a.factor_mode == "theorem") {
    cfg.normalization = OMLAB_NORM_THEOREM;
  } else if (a.factor_mode == "proof") {
    cfg.normalization = OMLAB_NORM_PROOF;
  } else {
    argument_error("--factor-mode must be theorem or proof");
  }
  cfg.budget = a.budget;

  omlab_sim_result* raw = nullptr;
  check(omlab_simulate(&cfg, a.strategy.c_str(), params.data(), params.size(), a.track_u, &raw));
  std::unique_ptr<omlab_sim_result, void (*)(omlab_sim_result*)> result(raw, omlab_sim_result_destroy);
  omlab_sim_report r{};
  check(omlab_sim_result_report(result.get(), &r));

  Json res = Json::object();
  res.set("norm_x_p", r.norm_x_p)
      .set("norm_y_p", r.norm_y_p)
      .set("ratio", r.ratio)
      .set("stderr_x", r.stderr_x)
      .set("stderr_y", r.stderr_y)
      .set("ratio_stderr", r.ratio_stderr)
      .set("bound", r.bound)
      .set("bound_plus_3sigma", r.bound + 3.0 * r.ratio_stderr)
      .set("within_bound", r.ratio <= r.bound + 3.0 * r.ratio_stderr)
      .set("subordination_factor", r.subordination_factor)
      .set("paths_used", r.paths_used)
      .set("mean_x_terminal", Json::array().push(r.mean_x_terminal[0]).push(r.mean_x_terminal[1]))
      .set("stderr_x_terminal", Json::array().push(r.stderr_x_terminal[0]).push(r.stderr_x_terminal[1]))
      .set("mean_norm_x_sq", r.mean_norm_x_sq)
      .set("mean_qv_x", r.mean_qv_x)
      .set("isometry_residual", r.isometry_residual)
      .set("isometry_stderr", r.isometry_stderr);
  const std::size_t n = omlab_sim_result_track_size(result.get());
  if (n > 0) {
    Json track = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
      omlab_track_point tp{};
      check(omlab_sim_result_track_point(result.get(), i, &tp));
      track.push(Json::object()
                     .set("t", tp.t)
                     .set("mean_u", tp.mean_u)
                     .set("half_width", tp.half_width)
                     .set("increment_stderr", tp.increment_stderr));
    }
    res.set("u_track", std::move(track));
  }

  Json strategy_params = Json::object();
  for (const auto& p : params) strategy_params.set(p.name, p.value);
  Json pj = Json::object()
                .set("p", a.p)
                .set("strategy", a.strategy)
                .set("strategy_params", std::move(strategy_params))
                .set("paths", a.paths)
                .set("steps", a.steps)
                .set("horizon", a.horizon)
                .set("factor_mode", a.factor_mode)
                .set("x0", Json::array().push(a.x0[0]).push(a.x0[1]))
                .set("y0", Json::array().push(a.y0[0]).push(a.y0[1]))
                .set("track_u", a.track_u);
  emit(envelope("simulate", std::move(pj), std::move(res), seed), a.format == "json");
  return 0;
}

// ---- bellman-check --------------------------------------------------------

struct BellmanArgs {
  double p = 0.0, fd_step = 1e-4;
  std::uint64_t samples = 100000;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
};

Json vec_json(const double* v, int n) {
  Json a = Json::array();
  for (int i = 0; i < n; ++i) a.push(v[i]);
  return a;
}

int cmd_bellman_check(const BellmanArgs& a) {
  const std::uint64_t seed = resolve_seed(a.seed, a.format);
  omlab_bellman_report rep{};
  check(omlab_bellman_check(a.p, a.samples, seed, a.fd_step, &rep));
  Json props = Json::array();
  for (std::size_t i = 0; i < rep.count; ++i) {
    const auto& pr = rep.properties[i];
    Json o = Json::object();
    o.set("name", pr.name)
        .set("passed", pr.passed != 0)
        .set("checked", pr.checked)
        .set("rejected", pr.rejected)
        .set("worst", pr.worst)
        .set("limit", pr.limit);
    if (pr.has_witness) {
      o.set("witness", Json::object()
                           .set("x", vec_json(pr.witness_x, 2))
                           .set("y", vec_json(pr.witness_y, 2))
                           .set("H", vec_json(pr.witness_H, 4))
                           .set("K", vec_json(pr.witness_K, 4)));
    }
    if (!pr.passed) {
      std::cerr << "omlab: property '" << pr.name << "' violated";
      if (pr.has_witness) {
        std::cerr << " (worst " << format_number(pr.worst) << " > limit " << format_number(pr.limit) << ") at x=("
                  << format_number(pr.witness_x[0]) << "," << format_number(pr.witness_x[1]) << ") y=("
                  << format_number(pr.witness_y[0]) << "," << format_number(pr.witness_y[1]) << ")";
      } else {
        std::cerr << " (" << pr.checked << " admissible samples checked, " << pr.rejected << " rejected)";
      }
      std::cerr << "\n";
    }
    props.push(std::move(o));
  }
  Json res = Json::object().set("passed", rep.passed != 0).set("properties", std::move(props));
  Json params = Json::object().set("p", a.p).set("samples", a.samples).set("fd_step", a.fd_step);
  emit(envelope("bellman-check", std::move(params), std::move(res), seed), a.format == "json");
  return rep.passed ? 0 : OMLAB_E_PROPERTY;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"omlab: sharp constants, Bellman-function checks and martingale simulations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("omlab ") + omlab_version());

  ConstantsArgs ca;
  auto* constants = app.add_subcommand("constants", "table of martingale constants over a p grid (p >= 2)");
  constants->add_option("--p-min", ca.p_min, "smallest p")->capture_default_str();
  constants->add_option("--p-max", ca.p_max, "largest p")->capture_default_str();
  constants->add_option("--step", ca.step, "grid step")->capture_default_str();
  constants->add_option("--tol", ca.tol, "root bracket tolerance")->capture_default_str();
  constants->add_option("--branch", ca.branch, "Laguerre branch: regular|second")->capture_default_str();
  constants->add_option("--format", ca.format, "csv|json|text")
      ->check(CLI::IsMember({"csv", "json", "text"}))
      ->capture_default_str();
  constants->add_option("--out", ca.out, "write to this file instead of stdout");

  RootArgs ra;
  auto* root = app.add_subcommand("root", "certify the least positive root of L_p in (0, 1)");
  root->add_option("--p", ra.p, "exponent")->required();
  root->add_option("--tol", ra.tol, "bracket width")->capture_default_str();
  root->add_option("--branch", ra.branch, "regular|second")->capture_default_str();
  root->add_option("--scan-points", ra.scan_points, "grid points of the bracket scan")->capture_default_str();
  root->add_option("--format", ra.format, "json|text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  ConjectureArgs ja;
  auto* conjecture = app.add_subcommand("conjecture", "scan |C_p - C_p'| over a p grid");
  conjecture->add_option("--p-min", ja.p_min)->capture_default_str();
  conjecture->add_option("--p-max", ja.p_max)->capture_default_str();
  conjecture->add_option("--step", ja.step)->capture_default_str();
  conjecture->add_option("--tol", ja.tol)->capture_default_str();
  conjecture->add_option("--branch", ja.branch, "regular|second|both")->capture_default_str();
  conjecture->add_option("--format", ja.format, "json|csv|text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of ||Y||_p / ||X||_p");
  simulate->add_option("--p", sa.p, "exponent in (1, 2]")->required();
  simulate->add_option("--strategy", sa.strategy, "integrand strategy")->required();
  simulate->add_option("--paths", sa.paths)->capture_default_str();
  simulate->add_option("--steps", sa.steps)->capture_default_str();
  simulate->add_option("--horizon", sa.horizon)->capture_default_str();
  simulate->add_option("--seed", sa.seed, "master seed (required for json output)");
  simulate->add_option("--factor-mode", sa.factor_mode, "theorem (factor 1) | proof (factor p/(2(p-1)))")
      ->capture_default_str();
  simulate->add_option("--format", sa.format, "json|text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  simulate->add_option("--track-u", sa.track_u, "record mean u(X_t, Y_t) at N checkpoints")->capture_default_str();
  simulate->add_option("--param", sa.params, "strategy parameter override name=value (repeatable)");
  simulate->add_option("--x0", sa.x0, "initial X as a,b")->delimiter(',')->expected(2);
  simulate->add_option("--y0", sa.y0, "initial Y as a,b")->delimiter(',')->expected(2);
  simulate->add_option("--budget", sa.budget, "maximum Gaussian draws")->capture_default_str();

  BellmanArgs ba;
  auto* bellman = app.add_subcommand("bellman-check", "randomized property checks of Burkholder's function");
  bellman->add_option("--p", ba.p, "exponent in (1, 2]")->required();
  bellman->add_option("--samples", ba.samples)->capture_default_str();
  bellman->add_option("--seed", ba.seed, "seed (required for json output)");
  bellman->add_option("--fd-step", ba.fd_step)->capture_default_str();
  bellman->add_option("--format", ba.format, "json|text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitArgument;
  }

  try {
    if (*constants) return cmd_constants(ca);
    if (*root) return cmd_root(ra);
    if (*conjecture) return cmd_conjecture(ja);
    if (*simulate) return cmd_simulate(sa);
    if (*bellman) return cmd_bellman_check(ba);
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "omlab: " << e.what() << "\n";
    return OMLAB_E_INTERNAL;
  }
  return kExitArgument;
}
