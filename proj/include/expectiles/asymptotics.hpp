/*
 * include/expectiles/asymptotics.hpp
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

#ifndef EXPECTILES_ASYMPTOTICS_HPP_
#define EXPECTILES_ASYMPTOTICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "expectiles/distributions.hpp"
#include "expectiles/empirical.hpp"
#include "expectiles/quadrature.hpp"
#include "expectiles/special_functions.hpp"
#include "expectiles/stable.hpp"

namespace expectiles {

// Joint normal limit of sample expectiles at several asymmetry levels:
// sqrt(n) (muhat - mu) converges to N(0, sigma).
struct NormalLimit {
  std::vector<double> taus;
  std::vector<double> mus;
  std::vector<std::vector<double>> sigma;
};

// Non-normal limit when the law has an atom at the expectile: the limit is
// sigma1 * W on {W > 0} and sigma2 * W on {W < 0} with W ~ N(0, sd_w^2).
struct MixtureLimit {
  double sigma1;  // scale applied to the positive half of W
  double sigma2;  // scale applied to the negative half of W
  double sd_w;
};

// Parameters of the stable limit for heavy-tailed laws in the normal
// domain of attraction of a stable law with index alpha in (1,2):
// n^rate_exponent * c_tilde * (muhat - mu) converges to S(alpha, beta_tilde)/denom.
struct StableLimit {
  double alpha;
  double beta_tilde;
  double c_tilde;
  double rate_exponent;
  double denom;
};

namespace detail {

inline double identification_at(double y, double mu, double tau) {
  return y >= mu ? tau * (y - mu) : -(1.0 - tau) * (mu - y);
}

inline void check_tau_list(const std::vector<double>& taus, const char* what) {
  if (taus.empty())
    throw std::invalid_argument(std::string(what) + ": tau list is empty");
  for (double tau : taus) check_tau(tau, what);
}

inline void require_finite_second_moment(const DistributionModel& model,
                                         const char* what) {
  if (const auto* t = dynamic_cast<const StudentT*>(&model)) {
    if (t->tail_index() <= 2.0)
      throw std::domain_error(
          std::string(what) +
          ": infinite second moment (tail index <= 2); for a tail index in "
          "(1,2) the stable limit applies instead (stable_limit)");
  }
}

// E[I_{tau_i}(mu_i, Y) I_{tau_j}(mu_j, Y)]: exact atom sum for discrete
// laws, piecewise quadrature split at the two kinks otherwise.
inline double identification_cross_moment(const DistributionModel& model,
                                          double mu_i, double tau_i,
                                          double mu_j, double tau_j) {
  if (const auto* discrete = dynamic_cast<const DiscreteDistribution*>(&model)) {
    double acc = 0.0;
    for (std::size_t k = 0; k < discrete->atom_count(); ++k) {
      const double atom = discrete->atoms()[k];
      acc += discrete->weights()[k] * identification_at(atom, mu_i, tau_i) *
             identification_at(atom, mu_j, tau_j);
    }
    return acc;
  }
  if (!model.has_density())
    throw std::domain_error(
        "identification cross-moment: model exposes neither atoms nor a density");

  const auto integrand = [&](double y) {
    return identification_at(y, mu_i, tau_i) * identification_at(y, mu_j, tau_j) *
           model.pdf(y);
  };
  const double lo = std::min(mu_i, mu_j);
  const double hi = std::max(mu_i, mu_j);
  double acc = quadrature::integrate_lower_tail(integrand, lo, 1.0e-12);
  if (hi > lo) acc += quadrature::integrate(integrand, lo, hi, 1.0e-12, 48);
  acc += quadrature::integrate_upper_tail(integrand, hi, 1.0e-12);
  return acc;
}

inline double population_expectile(const DistributionModel& model, double tau) {
  if (const auto* discrete = dynamic_cast<const DiscreteDistribution*>(&model))
    return discrete_expectile(*discrete, tau);
  return solve_expectile(model, tau);
}

inline double limit_weight(double tau, double cdf_at_mu) {
  return tau * (1.0 - cdf_at_mu) + (1.0 - tau) * cdf_at_mu;
}

}  // namespace detail

// Asymptotic covariance matrix of sqrt(n) (muhat - mu) over a list of
// asymmetry levels. Requires a finite second moment and no atom at any of
// the expectiles; the errors point at the replacement limit laws.
inline NormalLimit normal_covariance(const DistributionModel& model,
                                     const std::vector<double>& taus) {
  detail::check_tau_list(taus, "normal_covariance");
  detail::require_finite_second_moment(model, "normal_covariance");

  NormalLimit limit;
  limit.taus = taus;
  const std::size_t m = taus.size();
  limit.mus.reserve(m);
  std::vector<double> weights(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double mu = detail::population_expectile(model, taus[i]);
    if (model.point_mass(mu) > 0.0)
      throw std::domain_error(
          "normal_covariance: the law has an atom at the expectile for tau=" +
          std::to_string(taus[i]) +
          "; the normal limit does not apply (use mixture_limit)");
    limit.mus.push_back(mu);
    weights[i] = detail::limit_weight(taus[i], model.cdf(mu));
  }

  limit.sigma.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double moment = detail::identification_cross_moment(
          model, limit.mus[i], taus[i], limit.mus[j], taus[j]);
      const double value = moment / (weights[i] * weights[j]);
      limit.sigma[i][j] = value;
      limit.sigma[j][i] = value;
    }
  }
  return limit;
}

// Plug-in estimate of the same covariance from a sample: empirical
// expectiles, empirical CDF at those points, and sample averages of the
// identification products.
inline NormalLimit estimate_covariance(const SortedSample& sample,
                                       const std::vector<double>& taus) {
  detail::check_tau_list(taus, "estimate_covariance");
  if (sample.size() < 2)
    throw std::invalid_argument("estimate_covariance: need at least 2 observations");
  if (sample.min() == sample.max())
    throw std::domain_error("estimate_covariance: zero variance (all observations equal)");

  NormalLimit limit;
  limit.taus = taus;
  const std::size_t m = taus.size();
  const std::size_t n = sample.size();
  const auto& values = sample.values();

  limit.mus.reserve(m);
  std::vector<double> weights(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double mu = expectile(sample, taus[i]);
    limit.mus.push_back(mu);
    const auto at_or_below =
        std::upper_bound(values.begin(), values.end(), mu) - values.begin();
    const double ecdf = static_cast<double>(at_or_below) / static_cast<double>(n);
    weights[i] = detail::limit_weight(taus[i], ecdf);
  }

  limit.sigma.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double acc = 0.0;
      for (double y : values)
        acc += detail::identification_at(y, limit.mus[i], taus[i]) *
               detail::identification_at(y, limit.mus[j], taus[j]);
      const double value =
          acc / (static_cast<double>(n) * weights[i] * weights[j]);
      limit.sigma[i][j] = value;
      limit.sigma[j][i] = value;
    }
  }
  return limit;
}

// Two-sided normal-approximation confidence interval for the tau-expectile.
// Valid when the underlying law has no atom at the expectile.
inline std::pair<double, double> confidence_interval(const SortedSample& sample,
                                                     double tau, double level) {
  detail::check_tau(tau, "confidence_interval");
  if (!(level >= 0.0) || !(level < 1.0))
    throw std::invalid_argument("confidence_interval: level must lie in [0, 1)");
  const NormalLimit limit = estimate_covariance(sample, {tau});
  const double z = level == 0.0 ? 0.0 : special::normal_quantile(0.5 * (1.0 + level));
  const double half_width =
      z * std::sqrt(limit.sigma[0][0] / static_cast<double>(sample.size()));
  return {limit.mus[0] - half_width, limit.mus[0] + half_width};
}

// Limit law of sqrt(n) (muhat - mu) allowing an atom at the expectile.
// Without an atom sigma1 == sigma2 and the law degenerates to the normal
// case with variance (sigma1 * sd_w)^2.
inline MixtureLimit mixture_limit(const DistributionModel& model, double tau) {
  detail::check_tau(tau, "mixture_limit");
  detail::require_finite_second_moment(model, "mixture_limit");
  const double mu = detail::population_expectile(model, tau);
  const double moment =
      detail::identification_cross_moment(model, mu, tau, mu, tau);
  MixtureLimit limit;
  limit.sigma1 = 1.0 / detail::limit_weight(tau, model.cdf(mu));
  limit.sigma2 = 1.0 / detail::limit_weight(tau, model.cdf_left(mu));
  limit.sd_w = std::sqrt(std::max(moment, 0.0));
  return limit;
}

inline double mixture_cdf(const MixtureLimit& law, double x) {
  const double spread = (x < 0.0 ? law.sigma2 : law.sigma1) * law.sd_w;
  if (spread <= 0.0) return x < 0.0 ? 0.0 : 1.0;
  return special::normal_cdf(x / spread);
}

// Density of the mixture law; right-continuous at 0, where the two normal
// branches meet with different scales.
inline double mixture_pdf(const MixtureLimit& law, double x) {
  const double spread = (x < 0.0 ? law.sigma2 : law.sigma1) * law.sd_w;
  if (spread <= 0.0) return 0.0;
  return special::normal_pdf(x / spread) / spread;
}

// Parameters of the stable limit from the tail constants c_plus, c_minus of
// the underlying law (P(Y > y) ~ c_plus y^-alpha and symmetrically below).
inline StableLimit stable_limit(double alpha, double c_plus, double c_minus,
                                double tau, double cdf_at_mu) {
  if (!(alpha > 1.0) || !(alpha < 2.0))
    throw std::domain_error("stable_limit: alpha must lie in (1, 2)");
  if (!(c_plus >= 0.0) || !(c_minus >= 0.0) || !(c_plus + c_minus > 0.0))
    throw std::domain_error(
        "stable_limit: tail constants must be nonnegative with a positive sum");
  detail::check_tau(tau, "stable_limit");
  if (!(cdf_at_mu >= 0.0) || !(cdf_at_mu <= 1.0))
    throw std::domain_error("stable_limit: cdf_at_mu must lie in [0, 1]");

  const double pi = std::acos(-1.0);
  const double upper = std::pow(tau, alpha) * c_plus;
  const double lower = std::pow(1.0 - tau, alpha) * c_minus;

  StableLimit limit;
  limit.alpha = alpha;
  limit.beta_tilde = (upper - lower) / (upper + lower);
  limit.c_tilde = std::pow(
      2.0 * std::tgamma(alpha) * std::sin(0.5 * pi * alpha) / (pi * (upper + lower)),
      1.0 / alpha);
  limit.rate_exponent = 1.0 - 1.0 / alpha;
  limit.denom = detail::limit_weight(tau, cdf_at_mu);
  return limit;
}

}  // namespace expectiles

#endif  // EXPECTILES_ASYMPTOTICS_HPP_
