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

/*
 * omlab C API.
 *
 * Every entry point returns an omlab_status; on failure a message describing
 * the error is available from omlab_last_error() on the calling thread.
 * Status values are also the CLI's exit codes.
 */
#ifndef OMLAB_OMLAB_H
#define OMLAB_OMLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(OMLAB_BUILDING)
#    define OMLAB_API __declspec(dllexport)
#  else
#    define OMLAB_API __declspec(dllimport)
#  endif
#else
#  define OMLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum omlab_status {
  OMLAB_OK = 0,
  OMLAB_E_ARGUMENT = 2,
  OMLAB_E_NUMERICAL = 3,
  OMLAB_E_STRATEGY = 4,
  OMLAB_E_PROPERTY = 5,
  OMLAB_E_INTERNAL = 6
} omlab_status;

typedef enum omlab_branch { OMLAB_BRANCH_REGULAR = 0, OMLAB_BRANCH_SECOND = 1 } omlab_branch;

OMLAB_API const char* omlab_version(void);
OMLAB_API const char* omlab_last_error(void);

/* ---- Laguerre functions ------------------------------------------------ */

OMLAB_API omlab_status omlab_laguerre_eval(double p, double s, omlab_branch branch, double* out);
OMLAB_API omlab_status omlab_laguerre_derivative(double p, double s, omlab_branch branch, double* out);

typedef struct omlab_root_certificate {
  double p;
  omlab_branch branch;
  double bracket_lo;
  double bracket_hi;
  double root;
  double tolerance;
  double value_lo; /* L at bracket_lo */
  double value_hi; /* L at bracket_hi */
} omlab_root_certificate;

/* scan_points: grid resolution of the bracket scan; 0 selects the default (2048). */
OMLAB_API omlab_status omlab_least_positive_root(double p, double tol, omlab_branch branch, unsigned scan_points,
                                                 omlab_root_certificate* out);

/* ---- Constants ---------------------------------------------------------- */

typedef struct omlab_reference_constants {
  double burkholder;
  double thm1_left;
  double thm1_right;
  double ba_sqrt;
  double ba_interp;
} omlab_reference_constants;

OMLAB_API omlab_status omlab_reference_constants_eval(double p, omlab_reference_constants* out);
OMLAB_API omlab_status omlab_c_left(double p_prime, double tol, omlab_branch branch, double* value,
                                    double* error_bound);
OMLAB_API omlab_status omlab_c_right(double p, double tol, omlab_branch branch, double* value,
                                     double* error_bound);

typedef struct omlab_constants_row {
  double p;
  double p_prime;
  double burkholder;
  double thm1_left;
  double thm1_right;
  double z_p;
  double z_p_prime;
  double c_right;
  double c_left_at_conjugate;
  double conjecture_residual;
  double ba_sqrt;
  double ba_interp;
  double residual_error_bound;
  int status; /* OMLAB_OK, or OMLAB_E_NUMERICAL when a root was not found (conjecture scans) */
} omlab_constants_row;

typedef struct omlab_table omlab_table;

/* Constants table over p_min, p_min + step, ... <= p_max (requires p_min >= 2). */
OMLAB_API omlab_status omlab_constants_table(double p_min, double p_max, double step, double tol,
                                             omlab_branch branch, omlab_table** out);
/* Like omlab_constants_table, but rows whose roots cannot be certified are kept
 * with status OMLAB_E_NUMERICAL and NaN root-derived fields. */
OMLAB_API omlab_status omlab_conjecture_scan(double p_min, double p_max, double step, double tol,
                                             omlab_branch branch, omlab_table** out);
OMLAB_API size_t omlab_table_size(const omlab_table* table);
OMLAB_API omlab_status omlab_table_row(const omlab_table* table, size_t index, omlab_constants_row* out);
OMLAB_API void omlab_table_destroy(omlab_table* table);

/* ---- Bellman function ---------------------------------------------------- */

OMLAB_API omlab_status omlab_bellman_u(double p, const double x[2], const double y[2], double* out);
OMLAB_API omlab_status omlab_bellman_v(double p, const double x[2], const double y[2], double* out);

/* Matrices are row-major: {h11, h12, h21, h22}. */
OMLAB_API omlab_status omlab_ito_trace(double p, const double x[2], const double y[2], const double H[4],
                                       const double K[4], double fd_step, double* out);

typedef struct omlab_property_result {
  char name[32];
  int passed;
  uint64_t checked;
  uint64_t rejected;
  double worst;
  double limit;
  int has_witness;
  double witness_x[2];
  double witness_y[2];
  double witness_H[4];
  double witness_K[4];
} omlab_property_result;

#define OMLAB_MAX_PROPERTIES 8

typedef struct omlab_bellman_report {
  double p;
  uint64_t seed;
  uint64_t samples;
  double fd_step;
  int passed;
  size_t count;
  omlab_property_result properties[OMLAB_MAX_PROPERTIES];
} omlab_bellman_report;

/* Runs the randomized property suites.  Returns OMLAB_OK when the suites ran
 * (check report->passed for the verdict). */
OMLAB_API omlab_status omlab_bellman_check(double p, uint64_t samples, uint64_t seed, double fd_step,
                                           omlab_bellman_report* out);

/* ---- Simulation ----------------------------------------------------------- */

typedef enum omlab_normalization { OMLAB_NORM_THEOREM = 0, OMLAB_NORM_PROOF = 1 } omlab_normalization;

typedef struct omlab_sim_config {
  double p;
  double horizon;
  uint64_t steps;
  uint64_t paths;
  uint64_t seed;
  double initial_x[2];
  double initial_y[2];
  omlab_normalization normalization;
  uint64_t budget;
  unsigned threads; /* 0: all hardware threads, capped by OMLAB_THREADS */
} omlab_sim_config;

typedef struct omlab_param {
  const char* name;
  double value;
} omlab_param;

typedef struct omlab_sim_report {
  double norm_x_p;
  double norm_y_p;
  double ratio;
  double stderr_x;
  double stderr_y;
  double ratio_stderr;
  double bound;
  double subordination_factor;
  uint64_t paths_used;
  double mean_x_terminal[2];
  double stderr_x_terminal[2];
  double mean_norm_x_sq;
  double mean_qv_x;
  double isometry_residual;
  double isometry_stderr;
} omlab_sim_report;

typedef struct omlab_track_point {
  double t;
  double mean_u;
  double half_width;
  double increment_stderr;
} omlab_track_point;

typedef struct omlab_sim_result omlab_sim_result;

OMLAB_API void omlab_sim_config_init(omlab_sim_config* config);
OMLAB_API size_t omlab_strategy_count(void);
OMLAB_API const char* omlab_strategy_name(size_t index);

OMLAB_API omlab_status omlab_simulate(const omlab_sim_config* config, const char* strategy,
                                      const omlab_param* params, size_t param_count, uint64_t track_checkpoints,
                                      omlab_sim_result** out);
OMLAB_API omlab_status omlab_sim_result_report(const omlab_sim_result* result, omlab_sim_report* out);
OMLAB_API size_t omlab_sim_result_track_size(const omlab_sim_result* result);
OMLAB_API omlab_status omlab_sim_result_track_point(const omlab_sim_result* result, size_t index,
                                                    omlab_track_point* out);
OMLAB_API void omlab_sim_result_destroy(omlab_sim_result* result);

#ifdef __cplusplus
}
#endif

#endif /* OMLAB_OMLAB_H */
