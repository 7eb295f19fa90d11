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
#include <vector>

#include "doctest.h"
#include "omlab/error.hpp"
#include "omlab/laguerre.hpp"
#include "omlab/rng.hpp"

using namespace omlab;
using laguerre::Branch;

namespace {

// Classical Laguerre polynomial by its explicit sum, for integer n.
double laguerre_poly(int n, double s) {
  double sum = 0.0, binom = 1.0, fact = 1.0, pw = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      binom *= static_cast<double>(n - k + 1) / k;
      fact *= k;
      pw *= -s;
    }
    sum += binom * pw / fact;
  }
  return sum;
}

// Bisection on the explicit polynomial, independent of the library's scan.
double poly_root(int n) {
  double lo = 1e-6, hi = 1.0;
  // the least root of L_n is below 1 for n >= 2; walk up to the first sign change
  const int grid = 4000;
  for (int i = 1; i <= grid; ++i) {
    const double s = i / static_cast<double>(grid);
    if (laguerre_poly(n, s) <= 0.0) {
      hi = s;
      lo = (i - 1) / static_cast<double>(grid);
      break;
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (laguerre_poly(n, mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double ode_residual(double p, double s, Branch b) {
  const auto j = laguerre::eval_jet(p, s, b);
  return s * j.d2 + (1.0 - s) * j.d1 + p * j.value;
}

}  // namespace

TEST_CASE("regular branch anchors") {
  CHECK(laguerre::eval(2.5, 0.0) == 1.0);
  CHECK(laguerre::eval(1.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  // L_2(s) = 1 - 2 s + s^2 / 2
  CHECK(std::abs(laguerre::eval(2.0, 2.0 - std::sqrt(2.0))) < 1e-14);
}

TEST_CASE("integer exponents reproduce the Laguerre polynomials") {
  for (int n = 2; n <= 5; ++n) {
    for (double s = 0.0; s <= 2.0; s += 0.125) {
      CHECK(laguerre::eval(n, s) == doctest::Approx(laguerre_poly(n, s)).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("series satisfies the ODE") {
  rng::Stream st(11, 0);
  for (double p : {1.25, 1.5, 2.0, 3.0, 4.7}) {
    for (int i = 0; i < 50; ++i) {
      const double s = 2.0 * st.uniform();
      const auto j = laguerre::eval_jet(p, s);
      const double scale = std::abs(s * j.d2) + std::abs((1 - s) * j.d1) + std::abs(p * j.value) + 1.0;
      CHECK(std::abs(ode_residual(p, s, Branch::regular)) / scale < 1e-12);
    }
  }
}

TEST_CASE("derivative agrees with a central difference") {
  for (double p : {1.5, 3.3}) {
    for (double s : {0.1, 0.7, 1.6}) {
      const double h = 1e-5;
      const double fd = (laguerre::eval(p, s + h) - laguerre::eval(p, s - h)) / (2 * h);
      CHECK(laguerre::eval_derivative(p, s) == doctest::Approx(fd).epsilon(1e-8));
    }
  }
}

TEST_CASE("least positive root matches independent oracles") {
  struct Case {
    double p;
    double z;
  };
  // 40-digit reference values computed offline
  const Case cases[] = {{2.0, 0.5857864376269049512},  {3.0, 0.41577455678347908331},
                        {4.0, 0.3225476896193923118},  {5.0, 0.2635603197181409102},
                        {1.5, 0.73768487400098351035}, {1.25, 0.84850472685402629596},
                        {1.1, 0.93314334890284833345}, {6.0, 0.22284660417926068946},
                        {8.0, 0.17027963230510099979}};
  for (const auto& c : cases) {
    const auto cert = laguerre::least_positive_root(Exponent(c.p));
    CHECK(cert.root == doctest::Approx(c.z).epsilon(1e-12));
    CHECK(cert.width() <= 1e-12);
    CHECK(cert.bracket_lo <= cert.root);
    CHECK(cert.root <= cert.bracket_hi);
  }
  for (int n = 3; n <= 5; ++n) {
    CHECK(laguerre::least_positive_root(Exponent(n)).root == doctest::Approx(poly_root(n)).epsilon(1e-10));
  }
}

TEST_CASE("certificate brackets a sign change") {
  for (double p : {1.05, 1.7, 2.0, 2.9, 7.5, 20.0}) {
    const auto cert = laguerre::least_positive_root(Exponent(p), 1e-13);
    CHECK(laguerre::eval(p, cert.bracket_lo) * laguerre::eval(p, cert.bracket_hi) <= 0.0);
    CHECK(cert.tolerance == 1e-13);
    CHECK(cert.branch == Branch::regular);
  }
}

TEST_CASE("roots decrease with p") {
  double prev = 1.0;
  for (double p : {2.0, 3.0, 4.0, 5.0}) {
    const double z = laguerre::least_positive_root(Exponent(p)).root;
    CHECK(z < prev);
    prev = z;
  }
}

TEST_CASE("second branch solves the ODE and is independent") {
  for (double p : {1.5, 2.0, 3.0}) {
    // Abel: s e^{-s} W(s) is constant, with W(1) = hypot(L(1), L'(1)) by construction
    const auto r1 = laguerre::eval_jet(p, 1.0);
    const double w1 = std::hypot(r1.value, r1.d1);
    for (double s : {0.9, 0.5, 0.2, 0.05}) {
      const auto r = laguerre::eval_jet(p, s);
      const auto q = laguerre::eval_jet(p, s, Branch::second);
      const double w = r.value * q.d1 - r.d1 * q.value;
      CHECK(std::abs(w) == doctest::Approx(w1 * std::exp(s - 1.0) / s).epsilon(1e-9));
      const double scale = std::abs(s * q.d2) + std::abs((1 - s) * q.d1) + std::abs(p * q.value);
      CHECK(std::abs(ode_residual(p, s, Branch::second)) / scale < 1e-8);
    }
  }
}

TEST_CASE("sweep matches pointwise second-branch evaluation") {
  const std::vector<double> pts{0.95, 0.6, 0.3, 0.1};
  const auto sweep = laguerre::sweep_second(2.5, pts);
  REQUIRE(sweep.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(sweep[i].value == doctest::Approx(laguerre::eval(2.5, pts[i], Branch::second)).epsilon(1e-10));
  }
}

TEST_CASE("branch names round trip") {
  CHECK(laguerre::to_string(Branch::regular) == "regular");
  CHECK(laguerre::branch_from_string("second") == Branch::second);
  CHECK_THROWS_AS(laguerre::branch_from_string("third"), ArgumentError);
}

TEST_CASE("error paths") {
  CHECK_THROWS_AS(laguerre::eval(2.0, -0.1), DomainError);
  CHECK_THROWS_AS(laguerre::eval(2.0, 2.5), DomainError);
  CHECK_THROWS_AS(laguerre::eval(2.0, 0.0, Branch::second), DomainError);
  CHECK_THROWS_AS(laguerre::least_positive_root(Exponent(1.005)), DomainError);
  CHECK_THROWS_AS(laguerre::least_positive_root(Exponent(65.0)), DomainError);
  CHECK_THROWS_AS(laguerre::least_positive_root(Exponent(2.0), 1e-15), DomainError);
  CHECK_THROWS_AS(Exponent(0.5), DomainError);
  CHECK_THROWS_AS(laguerre::least_positive_root(Exponent(8.0), 1e-12, Branch::regular, 2), NoSignChange);
  CHECK_THROWS_AS(laguerre::least_positive_root(Exponent(8.0), 1e-12, Branch::regular, 1), DomainError);
  // a coarse grid still finds the root when only one lies in (0, 1)
  CHECK(laguerre::least_positive_root(Exponent(3.0), 1e-12, Branch::regular, 2).root ==
        doctest::Approx(0.41577455678347908331).epsilon(1e-12));
}
