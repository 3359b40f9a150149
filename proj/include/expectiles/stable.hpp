/*
 * include/expectiles/stable.hpp
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

#ifndef EXPECTILES_STABLE_HPP_
#define EXPECTILES_STABLE_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "expectiles/quadrature.hpp"

namespace expectiles {
namespace detail {

inline void check_stable_params(double alpha, double beta) {
  if (!(alpha > 0.0) || !(alpha <= 2.0))
    throw std::domain_error("stable law: alpha must lie in (0, 2]");
  if (!(beta >= -1.0) || !(beta <= 1.0))
    throw std::domain_error("stable law: beta must lie in [-1, 1]");
}

// Characteristic function exp(-|u|^alpha [1 - i beta tan(pi alpha / 2) sign u])
// (log form at alpha = 1). Gil-Pelaez inversion turns the CDF and density
// into one-dimensional oscillatory integrals over u > 0:
//   F(x) = 1/2 + (1/pi) Int exp(-u^alpha) sin(u x - phase(u)) / u du
//   f(x) =       (1/pi) Int exp(-u^alpha) cos(u x - phase(u))     du
// with phase(u) = beta tan(pi alpha/2) u^alpha, or -(2 beta/pi) u ln u at
// alpha = 1. The integral is split into chunks of roughly one oscillation
// period; the first chunk goes through tanh-sinh (the CDF kernel can be
// singular at 0), the rest through adaptive Gauss-Kronrod panels.
template <typename Kernel>
double gil_pelaez_integral(double alpha, double x, double phase_coeff,
                           const Kernel& kernel) {
  const double u_max = std::pow(34.5, 1.0 / alpha);  // exp(-u^alpha) < 1e-15 beyond

  double phase_rate;
  if (alpha == 1.0)
    phase_rate = std::fabs(x) + std::fabs(phase_coeff) * (2.0 + std::fabs(std::log(u_max))) + 1.0;
  else
    phase_rate = std::fabs(x) +
                 std::fabs(phase_coeff) * alpha * std::max(1.0, std::pow(u_max, alpha - 1.0)) +
                 1.0;

  const double pi = std::acos(-1.0);
  const double width = 2.0 * pi / phase_rate;
  const double chunk_count = std::max(1.0, u_max / width);
  const double chunk_tol = std::max(3.0e-12 / chunk_count, 5.0e-15);

  double acc = quadrature::tanh_sinh(kernel, 0.0, std::min(width, u_max), 1.0e-13);
  double lo = width;
  while (lo < u_max) {
    const double hi = std::min(lo + width, u_max);
    acc += quadrature::integrate(kernel, lo, hi, chunk_tol, 10);
    if (std::exp(-std::pow(lo, alpha)) * (hi - lo) / lo < 1.0e-18) break;
    lo = hi;
  }
  return acc;
}

inline double stable_phase(double alpha, double phase_coeff, double u) {
  if (alpha == 1.0) return -phase_coeff * u * std::log(u);
  return phase_coeff * std::pow(u, alpha);
}

// Upper tail P(X > x) for large x > 0 from the asymptotic power series
//   (1/pi) sum_k (-1)^(k+1) Gamma(alpha k)/k! r^k sin(k psi) x^(-alpha k),
// r = sqrt(1 + phi^2), psi = pi alpha/2 + atan(phi), phi = beta tan(pi alpha/2).
// The k = 1 term reduces to the classical Gamma(alpha) sin(pi alpha/2)
// (1 + beta)/pi tail constant.
inline double stable_tail_probability(double alpha, double beta, double x) {
  const double pi = std::acos(-1.0);
  if (alpha == 1.0) return (1.0 + beta) / (pi * x);
  if (alpha == 2.0) return 0.0;  // Gaussian tail, negligible at the switch point

  const double phi = beta * std::tan(0.5 * pi * alpha);
  const double log_r = 0.5 * std::log1p(phi * phi);
  const double psi = 0.5 * pi * alpha + std::atan(phi);
  const double log_x = std::log(x);

  double sum = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  double sign = 1.0;
  for (int k = 1; k <= 40; ++k) {
    const double magnitude =
        std::exp(std::lgamma(alpha * k) - std::lgamma(k + 1.0) + k * log_r -
                 alpha * k * log_x);
    if (magnitude > previous) break;  // asymptotic series guard
    previous = magnitude;
    sum += sign * magnitude * std::sin(k * psi);
    if (magnitude < 1.0e-17 * (std::fabs(sum) + 1.0e-300)) break;
    sign = -sign;
  }
  return std::max(sum / pi, 0.0);
}

constexpr double stable_tail_switch = 60.0;

}  // namespace detail

// Distribution function of the standard stable law S(alpha, beta): scale 1,
// location 0, characteristic function as in detail::gil_pelaez_integral.
inline double stable_cdf(double alpha, double beta, double x) {
  detail::check_stable_params(alpha, beta);
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();

  if (x > detail::stable_tail_switch)
    return 1.0 - detail::stable_tail_probability(alpha, beta, x);
  if (x < -detail::stable_tail_switch)
    return detail::stable_tail_probability(alpha, -beta, -x);

  const double pi = std::acos(-1.0);
  const double phase_coeff =
      alpha == 1.0 ? 2.0 * beta / pi : beta * std::tan(0.5 * pi * alpha);
  const auto kernel = [&](double u) {
    return std::exp(-std::pow(u, alpha)) *
           std::sin(u * x - detail::stable_phase(alpha, phase_coeff, u)) / u;
  };
  const double integral = detail::gil_pelaez_integral(alpha, x, phase_coeff, kernel);
  return std::clamp(0.5 + integral / pi, 0.0, 1.0);
}

// Density of the standard stable law S(alpha, beta).
inline double stable_pdf(double alpha, double beta, double x) {
  detail::check_stable_params(alpha, beta);
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();

  const double pi = std::acos(-1.0);
  if (std::fabs(x) > detail::stable_tail_switch) {
    const double y = std::fabs(x);
    const double b = x > 0.0 ? beta : -beta;
    if (alpha == 2.0) return 0.0;
    if (alpha == 1.0) return (1.0 + b) / (pi * y * y);
    const double phi = b * std::tan(0.5 * pi * alpha);
    const double log_r = 0.5 * std::log1p(phi * phi);
    const double psi = 0.5 * pi * alpha + std::atan(phi);
    const double log_y = std::log(y);
    double sum = 0.0;
    double previous = std::numeric_limits<double>::infinity();
    double sign = 1.0;
    for (int k = 1; k <= 40; ++k) {
      const double magnitude =
          std::exp(std::lgamma(alpha * k + 1.0) - std::lgamma(k + 1.0) +
                   k * log_r - (alpha * k + 1.0) * log_y);
      if (magnitude > previous) break;
      previous = magnitude;
      sum += sign * magnitude * std::sin(k * psi);
      if (magnitude < 1.0e-17 * (std::fabs(sum) + 1.0e-300)) break;
      sign = -sign;
    }
    return std::max(sum / pi, 0.0);
  }

  const double phase_coeff =
      alpha == 1.0 ? 2.0 * beta / pi : beta * std::tan(0.5 * pi * alpha);
  const auto kernel = [&](double u) {
    return std::exp(-std::pow(u, alpha)) *
           std::cos(u * x - detail::stable_phase(alpha, phase_coeff, u));
  };
  const double integral = detail::gil_pelaez_integral(alpha, x, phase_coeff, kernel);
  return std::max(integral / pi, 0.0);
}

}  // namespace expectiles

#endif  // EXPECTILES_STABLE_HPP_
