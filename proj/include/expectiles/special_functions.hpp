/*
 * include/expectiles/special_functions.hpp
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

#ifndef EXPECTILES_SPECIAL_FUNCTIONS_HPP_
#define EXPECTILES_SPECIAL_FUNCTIONS_HPP_

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace expectiles {
namespace special {

// Continued-fraction kernel for the regularized incomplete beta function,
// evaluated with the modified Lentz algorithm.
inline double beta_continued_fraction(double a, double b, double x) {
  constexpr int max_iterations = 400;
  constexpr double tiny = 1.0e-300;
  constexpr double eps = 1.0e-16;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;

  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;

  for (int m = 1; m <= max_iterations; ++m) {
    const int m2 = 2 * m;
    double numerator = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + numerator * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + numerator / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;

    numerator = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + numerator * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + numerator / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < eps) return h;
  }
  throw std::runtime_error("beta_continued_fraction: no convergence for a=" +
                           std::to_string(a) + " b=" + std::to_string(b));
}

// Regularized incomplete beta function I_x(a, b) for a, b > 0 and
// x in [0, 1].
inline double regularized_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("regularized_beta: shape parameters must be positive");
  if (std::isnan(x) || x < 0.0 || x > 1.0)
    throw std::domain_error("regularized_beta: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // Use the continued fraction directly where it converges fast, and the
  // symmetry I_x(a,b) = 1 - I_{1-x}(b,a) otherwise.
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

// Student t distribution function with real positive degrees of freedom.
inline double student_t_cdf(double x, double dof) {
  if (!(dof > 0.0))
    throw std::domain_error("student_t_cdf: degrees of freedom must be positive");
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;
  if (x == 0.0) return 0.5;
  const double z = dof / (dof + x * x);
  const double tail = 0.5 * regularized_beta(0.5 * dof, 0.5, z);
  return x > 0.0 ? 1.0 - tail : tail;
}

// Student t density.
inline double student_t_pdf(double x, double dof) {
  if (!(dof > 0.0))
    throw std::domain_error("student_t_pdf: degrees of freedom must be positive");
  const double log_norm = std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
                          0.5 * std::log(dof * std::acos(-1.0));
  return std::exp(log_norm - 0.5 * (dof + 1.0) * std::log1p(x * x / dof));
}

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

inline double normal_pdf(double x) {
  static const double inv_sqrt_two_pi = 1.0 / std::sqrt(2.0 * std::acos(-1.0));
  return inv_sqrt_two_pi * std::exp(-0.5 * x * x);
}

// Inverse of the standard normal distribution function. Acklam's rational
// approximation polished with one Halley step, giving close to full double
// precision.
inline double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("normal_quantile: probability must lie in (0, 1)");
  // Work in the lower tail, where 1 - p is exact and the residual
  // normal_cdf(x) - p keeps full relative precision.
  if (p > 0.5) return -normal_quantile(1.0 - p);

  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};

  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }

  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::acos(-1.0)) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace special
}  // namespace expectiles

#endif  // EXPECTILES_SPECIAL_FUNCTIONS_HPP_
