/*
 * tests/test_stable.cpp
 *
 * Copyright 2026 The expectile-toolkit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
 * implied. See the License for the specific language governing
 * permissions and limitations under the License.
 */

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "expectiles/special_functions.hpp"
#include "expectiles/stable.hpp"

using Catch::Approx;
using expectiles::stable_cdf;
using expectiles::stable_pdf;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("stable cdf parameter validation") {
  CHECK_THROWS_AS(stable_cdf(0.0, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(stable_cdf(-1.0, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(stable_cdf(2.5, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(stable_cdf(1.5, 1.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(stable_cdf(1.5, -2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(stable_cdf(std::nan(""), 0.0, 1.0), std::domain_error);
}

TEST_CASE("stable cdf reduces to the gaussian at alpha = 2") {
  // Characteristic function exp(-|u|^2) corresponds to N(0, 2).
  for (double x : {-3.0, -1.0, -0.2, 0.0, 0.7, 1.3, 2.5, 4.0}) {
    const double expected =
        expectiles::special::normal_cdf(x / std::sqrt(2.0));
    CHECK(stable_cdf(2.0, 0.0, x) == Approx(expected).margin(1e-10));
  }
  // beta is irrelevant at alpha = 2.
  CHECK(stable_cdf(2.0, 0.9, 0.8) ==
        Approx(stable_cdf(2.0, 0.0, 0.8)).margin(1e-12));
}

TEST_CASE("stable cdf reduces to the cauchy law at alpha = 1, beta = 0") {
  for (double x : {-10.0, -2.0, -0.5, 0.0, 1.0, 3.0, 25.0}) {
    const double expected = 0.5 + std::atan(x) / kPi;
    CHECK(stable_cdf(1.0, 0.0, x) == Approx(expected).margin(1e-10));
  }
}

TEST_CASE("stable cdf reference values") {
  // Frozen against an independent numerical inversion of the
  // characteristic function exp(-|u|^alpha (1 - i beta sgn(u) tan(pi alpha/2))).
  CHECK(stable_cdf(1.5, 0.0, 1.0) ==
        Approx(0.756342024399270465).margin(5e-11));
  CHECK(stable_cdf(1.5, 0.5, 0.5) ==
        Approx(0.712063555515659811).margin(5e-11));
  CHECK(stable_cdf(1.5, 0.5, -2.0) ==
        Approx(0.116299801968236564).margin(5e-11));
  CHECK(stable_cdf(1.2, 1.0, 2.0) ==
        Approx(0.905546014050605095).margin(5e-11));
  CHECK(stable_cdf(1.8, -0.3, 0.7) ==
        Approx(0.67559903014839145).margin(5e-11));
}

TEST_CASE("stable cdf reflection identity") {
  for (double alpha : {0.8, 1.0, 1.3, 1.7}) {
    for (double beta : {0.0, 0.4, 0.9}) {
      for (double x : {-2.5, -0.7, 0.0, 0.3, 1.9}) {
        CHECK(stable_cdf(alpha, beta, x) ==
              Approx(1.0 - stable_cdf(alpha, -beta, -x)).margin(1e-10));
      }
    }
  }
}

TEST_CASE("stable cdf is monotone and spans [0, 1]") {
  for (double alpha : {0.9, 1.0, 1.5}) {
    const double beta = 0.6;
    double prev = -1.0;
    for (double x = -80.0; x <= 80.0; x += 2.5) {
      const double value = stable_cdf(alpha, beta, x);
      CHECK(value >= prev - 1e-12);
      CHECK(value >= 0.0);
      CHECK(value <= 1.0);
      prev = value;
    }
    // Heavy tails decay slowly: at alpha near 1 about 2.5e-4 of mass
    // still sits beyond +-5000.
    CHECK(stable_cdf(alpha, beta, -5000.0) == Approx(0.0).margin(1e-3));
    CHECK(stable_cdf(alpha, beta, 5000.0) == Approx(1.0).margin(1e-3));
  }
}

TEST_CASE("stable density matches finite differences of the cdf") {
  const double h = 1e-5;
  for (double alpha : {1.2, 1.5, 1.9}) {
    for (double beta : {0.0, 0.5}) {
      for (double x : {-1.5, 0.0, 0.8, 3.0}) {
        const double fd =
            (stable_cdf(alpha, beta, x + h) - stable_cdf(alpha, beta, x - h)) /
            (2.0 * h);
        CHECK(stable_pdf(alpha, beta, x) == Approx(fd).margin(1e-6));
        CHECK(stable_pdf(alpha, beta, x) >= 0.0);
      }
    }
  }
  // Cauchy density in closed form.
  CHECK(stable_pdf(1.0, 0.0, 0.5) ==
        Approx(1.0 / (kPi * 1.25)).margin(1e-9));
}

TEST_CASE("tail series and direct integration agree at the crossover") {
  // The evaluator switches to an asymptotic tail expansion past |x| = 60.
  // The cdf increment across the switch must match the density mass in
  // between, which pins the two branches against each other.
  for (double alpha : {1.2, 1.5, 1.8}) {
    for (double beta : {-0.5, 0.0, 0.7}) {
      const double mass = 2.0e-4 * stable_pdf(alpha, beta, 60.0);
      const double below = stable_cdf(alpha, beta, 59.9999);
      const double above = stable_cdf(alpha, beta, 60.0001);
      CHECK(above - below - mass == Approx(0.0).margin(1e-11));
      const double mass_neg = 2.0e-4 * stable_pdf(alpha, beta, -60.0);
      const double below_neg = stable_cdf(alpha, beta, -60.0001);
      const double above_neg = stable_cdf(alpha, beta, -59.9999);
      CHECK(above_neg - below_neg - mass_neg == Approx(0.0).margin(1e-11));
    }
  }
}

TEST_CASE("far tail follows the power law") {
  // 1 - F(x) ~ (1 + beta) Gamma(alpha) sin(pi alpha / 2) / pi * x^{-alpha}.
  for (double alpha : {1.3, 1.7}) {
    for (double beta : {0.0, 0.5}) {
      const double x = 5000.0;
      const double lead = (1.0 + beta) * std::tgamma(alpha) *
                          std::sin(0.5 * kPi * alpha) / kPi *
                          std::pow(x, -alpha);
      CHECK(1.0 - stable_cdf(alpha, beta, x) ==
            Approx(lead).epsilon(1e-3));
    }
  }
}

TEST_CASE("mass at the origin has a closed form") {
  // Substituting v = u^alpha in the inversion integral gives
  // F(0) = 1/2 - atan(beta tan(pi alpha / 2)) / (alpha pi).
  for (double alpha : {0.7, 1.3, 1.5, 1.9}) {
    for (double beta : {-1.0, -0.4, 0.0, 0.5, 1.0}) {
      const double expected =
          0.5 - std::atan(beta * std::tan(0.5 * kPi * alpha)) / (alpha * kPi);
      CHECK(stable_cdf(alpha, beta, 0.0) == Approx(expected).margin(1e-10));
    }
  }
  // Mean zero plus a heavy right tail forces extra bulk below zero.
  CHECK(stable_cdf(1.5, 1.0, 0.0) == Approx(2.0 / 3.0).margin(1e-12));
  CHECK(stable_cdf(1.5, -1.0, 0.0) == Approx(1.0 / 3.0).margin(1e-12));
}
