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
#include <string>

#include "doctest.h"
#include "omlab/omlab.h"

extern "C" int omlab_c_smoke(void);

TEST_CASE("header compiles and works from C") { CHECK(omlab_c_smoke() == 0); }

TEST_CASE("version and error channel") {
  CHECK(std::string(omlab_version()) == "0.1.0");
  double out = 0.0;
  CHECK(omlab_laguerre_eval(2.0, -1.0, OMLAB_BRANCH_REGULAR, &out) == OMLAB_E_ARGUMENT);
  CHECK(std::strlen(omlab_last_error()) > 0);
  CHECK(omlab_laguerre_eval(2.0, 0.5, OMLAB_BRANCH_REGULAR, &out) == OMLAB_OK);
  CHECK(std::string(omlab_last_error()).empty());
  CHECK(out == doctest::Approx(1.0 - 1.0 + 0.125).epsilon(1e-15));
  CHECK(omlab_laguerre_eval(2.0, 0.5, OMLAB_BRANCH_REGULAR, nullptr) == OMLAB_E_ARGUMENT);
  CHECK(omlab_laguerre_eval(2.0, 0.5, static_cast<omlab_branch>(7), &out) == OMLAB_E_ARGUMENT);
}

TEST_CASE("root certificate") {
  omlab_root_certificate c{};
  REQUIRE(omlab_least_positive_root(3.0, 1e-12, OMLAB_BRANCH_REGULAR, 0, &c) == OMLAB_OK);
  CHECK(c.root == doctest::Approx(0.41577455678347908331).epsilon(1e-12));
  CHECK(c.bracket_hi - c.bracket_lo <= 1e-12);
  CHECK(c.value_lo * c.value_hi <= 0.0);
  CHECK(omlab_least_positive_root(0.5, 1e-12, OMLAB_BRANCH_REGULAR, 0, &c) == OMLAB_E_ARGUMENT);
  // two roots of L_8 lie in (0, 1); a two-point scan steps over both
  CHECK(omlab_least_positive_root(8.0, 1e-12, OMLAB_BRANCH_REGULAR, 2, &c) == OMLAB_E_NUMERICAL);
  CHECK(omlab_least_positive_root(8.0, 1e-12, OMLAB_BRANCH_REGULAR, 1, &c) == OMLAB_E_ARGUMENT);
}

TEST_CASE("constants") {
  omlab_reference_constants rc{};
  REQUIRE(omlab_reference_constants_eval(3.0, &rc) == OMLAB_OK);
  CHECK(rc.burkholder == doctest::Approx(2.0));
  double v = 0, e = 0;
  REQUIRE(omlab_c_right(3.0, 1e-12, OMLAB_BRANCH_REGULAR, &v, &e) == OMLAB_OK);
  CHECK(v == doctest::Approx(1.987181591081589).epsilon(1e-12));
  CHECK(omlab_c_left(3.0, 1e-12, OMLAB_BRANCH_REGULAR, &v, &e) == OMLAB_E_ARGUMENT);
}

TEST_CASE("tables are owned by opaque handles") {
  omlab_table* t = nullptr;
  REQUIRE(omlab_constants_table(2.0, 3.0, 0.5, 1e-12, OMLAB_BRANCH_REGULAR, &t) == OMLAB_OK);
  CHECK(omlab_table_size(t) == 3);
  omlab_constants_row row{};
  CHECK(omlab_table_row(t, 0, &row) == OMLAB_OK);
  CHECK(row.p == 2.0);
  CHECK(row.status == OMLAB_OK);
  CHECK(omlab_table_row(t, 3, &row) == OMLAB_E_ARGUMENT);
  omlab_table_destroy(t);
  omlab_table_destroy(nullptr);
  CHECK(omlab_table_size(nullptr) == 0);

  t = nullptr;
  CHECK(omlab_constants_table(3.0, 2.0, 1.0, 1e-12, OMLAB_BRANCH_REGULAR, &t) == OMLAB_E_ARGUMENT);
  CHECK(t == nullptr);

  REQUIRE(omlab_conjecture_scan(2.0, 4.0, 1.0, 1e-12, OMLAB_BRANCH_SECOND, &t) == OMLAB_OK);
  CHECK(omlab_table_size(t) == 3);
  for (size_t i = 0; i < 3; ++i) {
    REQUIRE(omlab_table_row(t, i, &row) == OMLAB_OK);
    CHECK((row.status == OMLAB_OK || row.status == OMLAB_E_NUMERICAL));
    if (row.status != OMLAB_OK) CHECK(std::isnan(row.conjecture_residual));
  }
  omlab_table_destroy(t);
}

TEST_CASE("bellman entry points") {
  const double x[2] = {1.0, 0.0}, y[2] = {0.2, 0.1};
  double u = 0, v = 0;
  REQUIRE(omlab_bellman_u(1.5, x, y, &u) == OMLAB_OK);
  REQUIRE(omlab_bellman_v(1.5, x, y, &v) == OMLAB_OK);
  CHECK(u >= v);
  CHECK(omlab_bellman_u(2.5, x, y, &u) == OMLAB_E_ARGUMENT);

  const double H[4] = {1, 0, 0, 1};
  const double K[4] = {1.2, 0, 0, 1.2};
  double tr = 0;
  CHECK(omlab_ito_trace(1.5, x, y, H, K, 1e-4, &tr) == OMLAB_OK);
  CHECK(tr <= 1e-6);
  const double Kbad[4] = {2, 0, 0, 2};
  CHECK(omlab_ito_trace(1.5, x, y, H, Kbad, 1e-4, &tr) == OMLAB_E_ARGUMENT);

  omlab_bellman_report rep{};
  REQUIRE(omlab_bellman_check(2.0, 500, 1, 1e-4, &rep) == OMLAB_OK);
  CHECK(rep.passed == 1);
  CHECK(rep.count >= 6);
  CHECK(std::string(rep.properties[0].name) == "majorization");
}

TEST_CASE("simulation handles and status codes") {
  omlab_sim_config cfg;
  omlab_sim_config_init(&cfg);
  CHECK(cfg.paths == 10000);
  CHECK(cfg.steps == 1000);
  cfg.p = 1.5;
  cfg.paths = 400;
  cfg.steps = 20;
  cfg.seed = 9;
  cfg.normalization = OMLAB_NORM_PROOF;

  REQUIRE(omlab_strategy_count() == 4);
  CHECK(std::string(omlab_strategy_name(1)) == "angle-chase");
  CHECK(omlab_strategy_name(4) == nullptr);

  omlab_sim_result* r = nullptr;
  REQUIRE(omlab_simulate(&cfg, "angle-chase", nullptr, 0, 4, &r) == OMLAB_OK);
  omlab_sim_report rep{};
  REQUIRE(omlab_sim_result_report(r, &rep) == OMLAB_OK);
  CHECK(rep.bound == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(rep.subordination_factor == doctest::Approx(1.5));
  CHECK(omlab_sim_result_track_size(r) == 4);
  omlab_track_point pt{};
  CHECK(omlab_sim_result_track_point(r, 3, &pt) == OMLAB_OK);
  CHECK(pt.t == doctest::Approx(1.0));
  CHECK(omlab_sim_result_track_point(r, 4, &pt) == OMLAB_E_ARGUMENT);
  omlab_sim_result_destroy(r);

  const omlab_param bad[] = {{"k_scale", 1.5}};
  r = nullptr;
  CHECK(omlab_simulate(&cfg, "constant", bad, 1, 0, &r) == OMLAB_E_STRATEGY);
  CHECK(r == nullptr);
  CHECK(std::string(omlab_last_error()).find("step 0") != std::string::npos);

  CHECK(omlab_simulate(&cfg, "zigzag", nullptr, 0, 0, &r) == OMLAB_E_ARGUMENT);
  CHECK(std::string(omlab_last_error()).find("angle-chase") != std::string::npos);
  const omlab_param unknown[] = {{"nope", 1.0}};
  CHECK(omlab_simulate(&cfg, "constant", unknown, 1, 0, &r) == OMLAB_E_ARGUMENT);
  cfg.budget = 10;
  CHECK(omlab_simulate(&cfg, "constant", nullptr, 0, 0, &r) == OMLAB_E_ARGUMENT);
}
