/*
 * include/expectiles/empirical.hpp
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

#ifndef EXPECTILES_EMPIRICAL_HPP_
#define EXPECTILES_EMPIRICAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace expectiles {

// An immutable sorted view of a data set together with the aggregate
// sums needed to evaluate sample expectiles in closed form.
//
// The per-value aggregates are kept at the level of distinct values, so
// quantities tied to an order statistic (partial sums, counts) are always
// consistent with tie handling: an observation contributes to the "lower"
// side of a distinct value exactly when it is <= that value.
class SortedSample {
 public:
  explicit SortedSample(std::vector<double> data) : values_(std::move(data)) {
    if (values_.empty())
      throw std::invalid_argument("SortedSample: data set is empty");
    for (double v : values_) {
      if (!std::isfinite(v))
        throw std::invalid_argument("SortedSample: data contains a non-finite value");
    }
    std::sort(values_.begin(), values_.end());

    std::size_t run_start = 0;
    double running_sum = 0.0;
    for (std::size_t k = 1; k <= values_.size(); ++k) {
      if (k == values_.size() || values_[k] != values_[run_start]) {
        const double value = values_[run_start];
        const std::size_t multiplicity = k - run_start;
        running_sum += static_cast<double>(multiplicity) * value;
        distinct_.push_back(value);
        counts_upto_.push_back(k);
        sums_upto_.push_back(running_sum);
        run_start = k;
      }
    }
  }

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& distinct() const { return distinct_; }

  // Number of observations <= distinct()[j].
  std::size_t count_upto(std::size_t j) const { return counts_upto_[j]; }

  // Sum of all observations <= distinct()[j].
  double sum_upto(std::size_t j) const { return sums_upto_[j]; }

  double total() const { return sums_upto_.back(); }
  double mean() const { return total() / static_cast<double>(size()); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

  // Asymmetry level at which the sample expectile curve passes through
  // distinct()[j]. Equals 0 at the minimum and 1 at the maximum.
  double tau_star(std::size_t j) const {
    const double value = distinct_[j];
    const double below =
        static_cast<double>(counts_upto_[j]) * value - sums_upto_[j];
    const double above =
        (total() - sums_upto_[j]) -
        static_cast<double>(size() - counts_upto_[j]) * value;
    const double spread = below + above;
    if (spread <= 0.0) return 0.0;  // constant sample
    return below / spread;
  }

  // Index of the distinct value whose segment contains tau: the largest j
  // with tau_star(j) <= tau.
  std::size_t segment_index(double tau) const {
    std::size_t lo = 0;
    std::size_t hi = distinct_.size();  // exclusive
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (tau_star(mid) <= tau)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  }

 private:
  std::vector<double> values_;
  std::vector<double> distinct_;
  std::vector<std::size_t> counts_upto_;
  std::vector<double> sums_upto_;
};

// Validating constructor wrapper; sorts a copy of the input.
inline SortedSample build_sample(std::vector<double> data) {
  return SortedSample(std::move(data));
}

// The full set of (tau, value) knots of a sample expectile curve. Between
// consecutive knots the curve is a smooth ratio of affine functions of tau.
struct BreakpointTable {
  std::vector<double> taus;
  std::vector<double> anchors;

  std::size_t size() const { return taus.size(); }
};

inline BreakpointTable breakpoints(const SortedSample& sample) {
  BreakpointTable table;
  const std::size_t m = sample.distinct().size();
  if (m == 1) {
    const double v = sample.distinct().front();
    table.taus = {0.0, 1.0};
    table.anchors = {v, v};
    return table;
  }
  table.taus.reserve(m);
  table.anchors.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    table.taus.push_back(sample.tau_star(j));
    table.anchors.push_back(sample.distinct()[j]);
  }
  return table;
}

namespace detail {

inline void check_tau(double tau, const char* what) {
  if (!(tau > 0.0) || !(tau < 1.0))
    throw std::domain_error(std::string(what) + ": tau must lie strictly in (0, 1)");
}

// Closed-form value on the segment anchored at distinct index j.
inline double segment_value(const SortedSample& sample, std::size_t j, double tau) {
  const double lower_sum = sample.sum_upto(j);
  const double lower_count = static_cast<double>(sample.count_upto(j));
  const double upper_sum = sample.total() - lower_sum;
  const double upper_count = static_cast<double>(sample.size()) - lower_count;
  const double numerator = (1.0 - tau) * lower_sum + tau * upper_sum;
  const double denominator = (1.0 - tau) * lower_count + tau * upper_count;
  return numerator / denominator;
}

inline double segment_slope(const SortedSample& sample, std::size_t j, double tau) {
  const double lower_sum = sample.sum_upto(j);
  const double lower_count = static_cast<double>(sample.count_upto(j));
  const double upper_sum = sample.total() - lower_sum;
  const double upper_count = static_cast<double>(sample.size()) - lower_count;
  const double denominator = (1.0 - tau) * lower_count + tau * upper_count;
  return (lower_count * upper_sum - upper_count * lower_sum) /
         (denominator * denominator);
}

}  // namespace detail

// Sample expectile at asymmetry level tau in (0, 1), evaluated in closed
// form from partial sums. O(log n) after the sample is built.
inline double expectile(const SortedSample& sample, double tau) {
  detail::check_tau(tau, "expectile");
  if (sample.distinct().size() == 1) return sample.distinct().front();
  const std::size_t j = sample.segment_index(tau);
  if (sample.tau_star(j) == tau) return sample.distinct()[j];
  return detail::segment_value(sample, j, tau);
}

// Inverse of the expectile curve: the asymmetry level whose expectile is x.
// Defined for x in [min, max]; reproduces tau_star exactly at sample values.
inline double tau_of(const SortedSample& sample, double x) {
  if (!std::isfinite(x)) throw std::domain_error("tau_of: x must be finite");
  if (x < sample.min() || x > sample.max())
    throw std::domain_error("tau_of: x lies outside the sample range");
  if (sample.distinct().size() == 1)
    throw std::domain_error("tau_of: undefined for a constant sample");

  const auto& distinct = sample.distinct();
  // Largest distinct value <= x.
  const std::size_t j =
      static_cast<std::size_t>(
          std::upper_bound(distinct.begin(), distinct.end(), x) - distinct.begin()) - 1;
  const double below =
      static_cast<double>(sample.count_upto(j)) * x - sample.sum_upto(j);
  const double above =
      (sample.total() - sample.sum_upto(j)) -
      static_cast<double>(sample.size() - sample.count_upto(j)) * x;
  return below / (below + above);
}

enum class Side { left, right };

// One-sided derivative of the sample expectile curve at tau. The two sides
// differ only when tau is one of the interior breakpoints.
inline double curve_derivative(const SortedSample& sample, double tau, Side side) {
  detail::check_tau(tau, "curve_derivative");
  if (sample.distinct().size() == 1) return 0.0;
  std::size_t j = sample.segment_index(tau);
  if (side == Side::left && sample.tau_star(j) == tau && j > 0) --j;
  return detail::segment_slope(sample, j, tau);
}

// Two-sided derivative; throws std::domain_error at interior breakpoints,
// where only the one-sided values exist.
inline double curve_derivative(const SortedSample& sample, double tau) {
  detail::check_tau(tau, "curve_derivative");
  if (sample.distinct().size() == 1) return 0.0;
  const std::size_t j = sample.segment_index(tau);
  if (sample.tau_star(j) == tau && j > 0)
    throw std::domain_error(
        "curve_derivative: tau is a breakpoint; only one-sided derivatives exist");
  return detail::segment_slope(sample, j, tau);
}

// Empirical mean of the asymmetric identification function at x:
//   mean of tau*(y - x)^+ - (1 - tau)*(x - y)^+ over the sample.
// Deliberately computed by direct summation so it can serve as an
// independent check on the closed-form expectile (the root in x).
inline double identification_value(const SortedSample& sample, double x, double tau) {
  detail::check_tau(tau, "identification_value");
  if (!std::isfinite(x))
    throw std::domain_error("identification_value: x must be finite");
  double acc = 0.0;
  for (double y : sample.values()) {
    if (y >= x)
      acc += tau * (y - x);
    else
      acc -= (1.0 - tau) * (x - y);
  }
  return acc / static_cast<double>(sample.size());
}

// Precomputed expectile curve: breakpoint table plus per-segment partial
// sums, so evaluations cost one binary search over the knots.
class ExpectileCurve {
 public:
  explicit ExpectileCurve(const SortedSample& sample)
      : table_(breakpoints(sample)),
        total_(sample.total()),
        size_(static_cast<double>(sample.size())) {
    const std::size_t m = sample.distinct().size();
    lower_sums_.reserve(m);
    lower_counts_.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      lower_sums_.push_back(sample.sum_upto(j));
      lower_counts_.push_back(static_cast<double>(sample.count_upto(j)));
    }
  }

  const BreakpointTable& table() const { return table_; }

  double operator()(double tau) const {
    detail::check_tau(tau, "ExpectileCurve");
    if (lower_sums_.size() == 1) return table_.anchors.front();
    const auto& taus = table_.taus;
    std::size_t j =
        static_cast<std::size_t>(
            std::upper_bound(taus.begin(), taus.end(), tau) - taus.begin()) - 1;
    if (taus[j] == tau) return table_.anchors[j];
    const double lower_sum = lower_sums_[j];
    const double lower_count = lower_counts_[j];
    const double numerator = (1.0 - tau) * lower_sum + tau * (total_ - lower_sum);
    const double denominator =
        (1.0 - tau) * lower_count + tau * (size_ - lower_count);
    return numerator / denominator;
  }

 private:
  BreakpointTable table_;
  std::vector<double> lower_sums_;
  std::vector<double> lower_counts_;
  double total_;
  double size_;
};

}  // namespace expectiles

#endif  // EXPECTILES_EMPIRICAL_HPP_
