/*
 * tests/test_quadrature.cpp
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

#include "expectiles/quadrature.hpp"
#include "expectiles/special_functions.hpp"

using Catch::Approx;
namespace quadrature = expectiles::quadrature;

TEST_CASE("Gauss-Kronrod panel on smooth integrands") {
  const auto square = [](double x) { return x * x; };
  CHECK(quadrature::gauss_kronrod_15(square, 0.0, 1.0) ==
        Approx(1.0 / 3.0).epsilon(1e-15));

  double err = 0.0;
  const auto wave = [](double x) { return std::sin(x); };
  CHECK(quadrature::gauss_kronrod_15(wave, 0.0, std::acos(-1.0), &err) ==
        Approx(2.0).epsilon(1e-12));
  CHECK(err < 1e-8);
}

TEST_CASE("adaptive integration handles oscillation and kinks") {
  const auto wiggle = [](double x) { return std::sin(20.0 * x); };
  const double exact = (1.0 - std::cos(20.0 * 3.0)) / 20.0;
  CHECK(quadrature::integrate(wiggle, 0.0, 3.0, 1e-13) ==
        Approx(exact).margin(1e-12));

  const auto kink = [](double x) { return std::fabs(x - 0.3); };
  const double kink_exact = 0.5 * (0.3 * 0.3 + 0.7 * 0.7);
  CHECK(quadrature::integrate(kink, 0.0, 1.0, 1e-12) ==
        Approx(kink_exact).margin(1e-10));

  CHECK(quadrature::integrate(kink, 0.5, 0.5) == 0.0);
  CHECK_THROWS_AS(
      quadrature::integrate(kink, 0.0, std::numeric_limits<double>::infinity()),
      std::domain_error);
}

TEST_CASE("tanh-sinh absorbs endpoint singularities") {
  const auto inv_sqrt = [](double x) { return 1.0 / std::sqrt(x); };
  CHECK(quadrature::tanh_sinh(inv_sqrt, 0.0, 1.0) == Approx(2.0).epsilon(1e-11));

  const auto logarithm = [](double x) { return std::log(x); };
  CHECK(quadrature::tanh_sinh(logarithm, 0.0, 1.0) == Approx(-1.0).epsilon(1e-11));

  const auto smooth = [](double x) { return std::exp(x); };
  CHECK(quadrature::tanh_sinh(smooth, -1.0, 2.0) ==
        Approx(std::exp(2.0) - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("half-line transforms") {
  const auto decay = [](double x) { return std::exp(-x); };
  CHECK(quadrature::integrate_upper_tail(decay, 0.0) == Approx(1.0).epsilon(1e-11));
  CHECK(quadrature::integrate_upper_tail(decay, 2.0) ==
        Approx(std::exp(-2.0)).epsilon(1e-11));

  const auto gauss = [](double x) { return expectiles::special::normal_pdf(x); };
  CHECK(quadrature::integrate_lower_tail(gauss, 0.0) == Approx(0.5).epsilon(1e-11));
  CHECK(quadrature::integrate_lower_tail(gauss, -1.3) ==
        Approx(expectiles::special::normal_cdf(-1.3)).epsilon(1e-10));

  // Polynomial tails: the t density with tail index 2.5 integrates to 1.
  const auto t_density = [](double x) {
    return expectiles::special::student_t_pdf(x, 2.5);
  };
  const double total = quadrature::integrate_lower_tail(t_density, 0.0) +
                       quadrature::integrate_upper_tail(t_density, 0.0);
  CHECK(total == Approx(1.0).epsilon(1e-10));
}
