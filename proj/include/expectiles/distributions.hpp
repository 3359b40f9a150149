/*
 * include/expectiles/distributions.hpp
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

#ifndef EXPECTILES_DISTRIBUTIONS_HPP_
#define EXPECTILES_DISTRIBUTIONS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "expectiles/empirical.hpp"
#include "expectiles/special_functions.hpp"

namespace expectiles {

// A probability law with a finite mean, described through the handful of
// functionals the expectile machinery needs. upper_partial(x) is the
// truncated first moment E (Y - x)^+; together with the mean it determines
// the lower counterpart E (x - Y)^+ = upper_partial(x) - mean + x.
class DistributionModel {
 public:
  virtual ~DistributionModel() = default;

  virtual double cdf(double x) const = 0;
  virtual double mean() const = 0;
  virtual double upper_partial(double x) const = 0;

  // Left limit of the distribution function at x.
  virtual double cdf_left(double x) const { return cdf(x) - point_mass(x); }

  // Probability of the single point x (nonzero only for atoms).
  virtual double point_mass(double) const { return 0.0; }

  virtual bool has_density() const { return false; }
  virtual double pdf(double) const {
    throw std::logic_error("pdf: model does not expose a density");
  }
};

// Law with finitely many atoms. Atoms must be strictly increasing and the
// weights must be positive and sum to 1 within 1e-12.
class DiscreteDistribution final : public DistributionModel {
 public:
  DiscreteDistribution(std::vector<double> atoms, std::vector<double> weights)
      : atoms_(std::move(atoms)), weights_(std::move(weights)) {
    if (atoms_.empty())
      throw std::invalid_argument("DiscreteDistribution: no atoms given");
    if (atoms_.size() != weights_.size())
      throw std::invalid_argument(
          "DiscreteDistribution: atoms and weights differ in length");
    double mass = 0.0;
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
      if (!std::isfinite(atoms_[k]))
        throw std::invalid_argument("DiscreteDistribution: atom is not finite");
      if (k > 0 && !(atoms_[k] > atoms_[k - 1]))
        throw std::invalid_argument(
            "DiscreteDistribution: atoms must be strictly increasing");
      if (!(weights_[k] > 0.0))
        throw std::invalid_argument(
            "DiscreteDistribution: weights must be positive");
      mass += weights_[k];
      cumulative_.push_back(mass);
      weighted_ += weights_[k] * atoms_[k];
      weighted_cumulative_.push_back(weighted_);
    }
    if (std::fabs(mass - 1.0) > 1.0e-12)
      throw std::invalid_argument(
          "DiscreteDistribution: weights must sum to 1 (within 1e-12)");
  }

  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t atom_count() const { return atoms_.size(); }

  // P(Y <= atoms()[j]) and E[Y; Y <= atoms()[j]].
  double mass_upto(std::size_t j) const { return cumulative_[j]; }
  double moment_upto(std::size_t j) const { return weighted_cumulative_[j]; }

  // Index of the largest atom <= x, or npos if x is below all atoms.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t atom_index_at_or_below(double x) const {
    const auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x);
    if (it == atoms_.begin()) return npos;
    return static_cast<std::size_t>(it - atoms_.begin()) - 1;
  }

  double cdf(double x) const override {
    const std::size_t j = atom_index_at_or_below(x);
    return j == npos ? 0.0 : cumulative_[j];
  }

  double mean() const override { return weighted_; }

  double upper_partial(double x) const override {
    const std::size_t j = atom_index_at_or_below(x);
    const double tail_moment =
        weighted_ - (j == npos ? 0.0 : weighted_cumulative_[j]);
    const double tail_mass = 1.0 - (j == npos ? 0.0 : cumulative_[j]);
    const double value = tail_moment - x * tail_mass;
    return value > 0.0 ? value : 0.0;
  }

  double point_mass(double x) const override {
    const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x);
    if (it != atoms_.end() && *it == x)
      return weights_[static_cast<std::size_t>(it - atoms_.begin())];
    return 0.0;
  }

 private:
  std::vector<double> atoms_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  std::vector<double> weighted_cumulative_;
  double weighted_ = 0.0;
};

// Student t law with real tail index (degrees of freedom) above 1, so the
// mean exists. Scale is fixed to 1 and the law is symmetric about 0.
class StudentT final : public DistributionModel {
 public:
  explicit StudentT(double tail_index) : tail_index_(tail_index) {
    if (!(tail_index > 1.0))
      throw std::invalid_argument(
          "StudentT: tail index must exceed 1 for the mean to exist");
    // Closed-form constant in E (Y - x)^+, via log-gamma for stability.
    partial_constant_ =
        std::exp(0.5 * std::log(tail_index) +
                 std::lgamma(0.5 * (tail_index + 1.0)) -
                 std::lgamma(0.5 * tail_index) -
                 0.5 * std::log(std::acos(-1.0)) - std::log(tail_index - 1.0));
  }

  double tail_index() const { return tail_index_; }

  double cdf(double x) const override {
    return special::student_t_cdf(x, tail_index_);
  }

  double mean() const override { return 0.0; }

  double upper_partial(double x) const override {
    const double body =
        partial_constant_ *
        std::exp(0.5 * (1.0 - tail_index_) * std::log1p(x * x / tail_index_));
    const double value = body - x * (1.0 - cdf(x));
    return value > 0.0 ? value : 0.0;
  }

  bool has_density() const override { return true; }
  double pdf(double x) const override {
    return special::student_t_pdf(x, tail_index_);
  }

 private:
  double tail_index_;
  double partial_constant_;
};

// Truncated first moment E (Y - x)^+ of the Student t law with the given
// tail index; closed form, no quadrature.
inline double t_upper_partial(double tail_index, double x) {
  return StudentT(tail_index).upper_partial(x);
}

// Constant c with P(Y > y) ~ c * y^(-alpha) for the Student t tail; the
// same constant applies to the lower tail by symmetry.
inline double t_tail_constant(double tail_index) {
  return std::exp(std::lgamma(0.5 * (tail_index + 1.0)) -
                  std::lgamma(0.5 * tail_index) +
                  (0.5 * tail_index - 1.0) * std::log(tail_index) -
                  0.5 * std::log(std::acos(-1.0)));
}

// Population mean of the identification function at x:
//   tau * E (Y - x)^+ - (1 - tau) * E (x - Y)^+.
// Strictly decreasing in x; its unique root is the tau-expectile.
inline double identification_value(const DistributionModel& model, double x,
                                   double tau) {
  detail::check_tau(tau, "identification_value");
  const double upper = model.upper_partial(x);
  const double lower = upper - model.mean() + x;
  return tau * upper - (1.0 - tau) * lower;
}

// Breakpoint table of a law with finitely many atoms: tau level at which
// the population expectile curve passes through each atom.
inline BreakpointTable discrete_breakpoints(const DiscreteDistribution& law) {
  BreakpointTable table;
  const std::size_t m = law.atom_count();
  if (m == 1) {
    table.taus = {0.0, 1.0};
    table.anchors = {law.atoms().front(), law.atoms().front()};
    return table;
  }
  table.taus.reserve(m);
  table.anchors.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    table.anchors.push_back(law.atoms()[j]);
    if (j == 0) {
      table.taus.push_back(0.0);
    } else if (j == m - 1) {
      table.taus.push_back(1.0);
    } else {
      const double atom = law.atoms()[j];
      const double below = law.mass_upto(j) * atom - law.moment_upto(j);
      const double above = (law.mean() - law.moment_upto(j)) -
                           (1.0 - law.mass_upto(j)) * atom;
      table.taus.push_back(below / (below + above));
    }
  }
  return table;
}

// Expectile of a law with finitely many atoms, in closed form by locating
// the breakpoint segment that brackets tau.
inline double discrete_expectile(const DiscreteDistribution& law, double tau) {
  detail::check_tau(tau, "discrete_expectile");
  const std::size_t m = law.atom_count();
  if (m == 1) return law.atoms().front();

  const BreakpointTable table = discrete_breakpoints(law);
  const auto& taus = table.taus;
  std::size_t j =
      static_cast<std::size_t>(
          std::upper_bound(taus.begin(), taus.end(), tau) - taus.begin()) - 1;
  if (taus[j] == tau) return law.atoms()[j];

  const double lower_moment = law.moment_upto(j);
  const double lower_mass = law.mass_upto(j);
  const double numerator =
      (1.0 - tau) * lower_moment + tau * (law.mean() - lower_moment);
  const double denominator =
      (1.0 - tau) * lower_mass + tau * (1.0 - lower_mass);
  return numerator / denominator;
}

// Root-finds the population expectile of an arbitrary model by bisecting
// the identification function. The tolerance is relative to the natural
// scale 1 + |mean| + E (Y - mean)^+.
inline double solve_expectile(const DistributionModel& model, double tau,
                              double tol = 1.0e-12) {
  detail::check_tau(tau, "solve_expectile");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_expectile: tol must be positive");

  const double center = model.mean();
  const double scale = 1.0 + std::fabs(center) + model.upper_partial(center);

  // Geometric bracket expansion around the mean.
  double step = scale;
  double lo = center - step;
  double hi = center + step;
  int guard = 0;
  while (identification_value(model, hi, tau) > 0.0) {
    step *= 2.0;
    hi = center + step;
    if (++guard > 200)
      throw std::runtime_error("solve_expectile: failed to bracket the root above");
  }
  guard = 0;
  step = scale;
  while (identification_value(model, lo, tau) < 0.0) {
    step *= 2.0;
    lo = center - step;
    if (++guard > 200)
      throw std::runtime_error("solve_expectile: failed to bracket the root below");
  }

  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double value = identification_value(model, mid, tau);
    if (value == 0.0) return mid;
    if (value > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= tol * (1.0 + std::fabs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

// Derivative of the population expectile curve in tau, evaluated through
// the identity  d mu / d tau = E |Y - mu| / (tau (1 - F(mu)) + (1 - tau) F(mu)).
// Requires F continuous near the expectile: with an atom sitting exactly
// there the curve has a kink and no two-sided derivative exists.
inline double expectile_derivative(const DistributionModel& model, double tau) {
  detail::check_tau(tau, "expectile_derivative");
  const auto* discrete = dynamic_cast<const DiscreteDistribution*>(&model);
  const double mu = discrete ? discrete_expectile(*discrete, tau)
                             : solve_expectile(model, tau);
  if (model.point_mass(mu) > 0.0)
    throw std::domain_error(
        "expectile_derivative: an atom sits at the expectile; only one-sided "
        "derivatives exist");
  const double upper = model.upper_partial(mu);
  const double absolute_moment = 2.0 * upper + mu - model.mean();
  const double cdf_at_mu = model.cdf(mu);
  const double weight = tau * (1.0 - cdf_at_mu) + (1.0 - tau) * cdf_at_mu;
  return absolute_moment / weight;
}

}  // namespace expectiles

#endif  // EXPECTILES_DISTRIBUTIONS_HPP_
