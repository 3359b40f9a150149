/*
 * include/expectiles/simulation.hpp
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

#ifndef EXPECTILES_SIMULATION_HPP_
#define EXPECTILES_SIMULATION_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "expectiles/asymptotics.hpp"
#include "expectiles/distributions.hpp"
#include "expectiles/empirical.hpp"
#include "expectiles/rng.hpp"
#include "expectiles/special_functions.hpp"
#include "expectiles/stable.hpp"

namespace expectiles {

// How the per-replication statistics are scaled and which reference law
// they are compared against.
enum class Standardization { stable, normal, mixture, none };

inline const char* standardization_name(Standardization kind) {
  switch (kind) {
    case Standardization::stable: return "stable";
    case Standardization::normal: return "normal";
    case Standardization::mixture: return "mixture";
    case Standardization::none: return "none";
  }
  return "none";
}

struct ExperimentConfig {
  std::shared_ptr<const DistributionModel> model;
  std::string model_label;  // short tag used in report file names
  double tau = 0.5;
  std::vector<double> tau_grid;  // consistency experiment only
  std::vector<std::size_t> sample_sizes;
  std::size_t replications = 0;
  std::uint64_t master_seed = 0;
  unsigned threads = 0;  // 0 = all available cores
};

struct KdeCurve {
  std::vector<double> grid;
  std::vector<double> density;
};

struct SizeReport {
  std::size_t sample_size = 0;
  std::vector<double> raw;           // per replication, in replication order
  std::vector<double> standardized;  // same order as raw
  std::vector<double> sorted_stats;
  std::vector<double> reference_cdf;  // reference CDF at sorted_stats
  double ks = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::pair<std::string, double>> extras;
  KdeCurve kde;  // filled by the jump experiment
};

struct ExperimentReport {
  std::string experiment;
  std::string model_label;
  double tau = 0.5;
  std::uint64_t master_seed = 0;
  std::size_t replications = 0;
  Standardization standardization = Standardization::none;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<SizeReport> sizes;
  double wall_seconds = 0.0;  // diagnostic only; never serialized
};

// Two-sided Kolmogorov-Smirnov distance between the empirical law of
// sorted_stats and a continuous reference CDF.
template <typename Cdf>
double ks_distance(const std::vector<double>& sorted_stats, const Cdf& reference_cdf) {
  if (sorted_stats.empty())
    throw std::invalid_argument("ks_distance: no statistics given");
  const double count = static_cast<double>(sorted_stats.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted_stats.size(); ++i) {
    const double at_point = reference_cdf(sorted_stats[i]);
    const double above = std::fabs(static_cast<double>(i + 1) / count - at_point);
    const double below = std::fabs(at_point - static_cast<double>(i) / count);
    worst = std::max({worst, above, below});
  }
  return worst;
}

namespace detail {

inline void check_config(const ExperimentConfig& cfg, const char* what) {
  if (!cfg.model) throw std::invalid_argument(std::string(what) + ": no model set");
  if (cfg.replications < 1)
    throw std::invalid_argument(std::string(what) + ": need at least 1 replication");
  if (cfg.sample_sizes.empty())
    throw std::invalid_argument(std::string(what) + ": no sample sizes given");
  for (std::size_t n : cfg.sample_sizes)
    if (n < 2) throw std::invalid_argument(std::string(what) + ": sample sizes must be >= 2");
  check_tau(cfg.tau, what);
}

// Runs task(0..count-1), spreading indices over a worker pool. Results must
// be written to disjoint slots keyed by index; the outcome is then identical
// for every thread count.
inline void parallel_replications(std::size_t count, unsigned threads,
                                  const std::function<void(std::size_t)>& task) {
  unsigned workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));

  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) task(k);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  const auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= count || failed.load()) return;
      try {
        task(k);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failed.load()) std::rethrow_exception(failure);
}

inline std::vector<double> draw_sample(const DistributionModel& model,
                                       std::size_t n, RngStream& stream) {
  if (const auto* t = dynamic_cast<const StudentT*>(&model))
    return sample_student_t(t->tail_index(), n, stream);
  if (const auto* discrete = dynamic_cast<const DiscreteDistribution*>(&model))
    return sample_discrete(*discrete, n, stream);
  throw std::invalid_argument("simulation: model must be Student t or discrete");
}

inline double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace detail

// Gaussian kernel density estimate with Silverman's bandwidth, evaluated
// on an equispaced grid spanning the data plus three bandwidths.
inline KdeCurve gaussian_kde(const std::vector<double>& stats,
                             std::size_t grid_size = 201) {
  if (stats.empty()) throw std::invalid_argument("gaussian_kde: no data");
  std::vector<double> sorted(stats);
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  double mean = 0.0;
  for (double v : sorted) mean += v;
  mean /= n;
  double variance = 0.0;
  for (double v : sorted) variance += (v - mean) * (v - mean);
  variance /= n;
  const double sd = std::sqrt(variance);
  const double iqr = sorted[static_cast<std::size_t>(0.75 * (n - 1))] -
                     sorted[static_cast<std::size_t>(0.25 * (n - 1))];
  double spread = std::min(sd, iqr / 1.34);
  if (spread <= 0.0) spread = sd > 0.0 ? sd : 1.0;
  const double bandwidth = 0.9 * spread * std::pow(n, -0.2);

  KdeCurve curve;
  curve.grid.resize(grid_size);
  curve.density.resize(grid_size);
  const double lo = sorted.front() - 3.0 * bandwidth;
  const double hi = sorted.back() + 3.0 * bandwidth;
  const double step = grid_size > 1 ? (hi - lo) / static_cast<double>(grid_size - 1) : 0.0;
  for (std::size_t g = 0; g < grid_size; ++g) {
    const double x = lo + step * static_cast<double>(g);
    double acc = 0.0;
    for (double v : sorted) acc += special::normal_pdf((x - v) / bandwidth);
    curve.grid[g] = x;
    curve.density[g] = acc / (n * bandwidth);
  }
  return curve;
}

// Convergence of n^(1-1/alpha) c_tilde (muhat - mu) to the stable limit for
// heavy-tailed Student t models with tail index in (1, 2).
inline ExperimentReport run_stable_experiment(const ExperimentConfig& cfg) {
  detail::check_config(cfg, "run_stable_experiment");
  const auto* t = dynamic_cast<const StudentT*>(cfg.model.get());
  if (!t || !(t->tail_index() > 1.0) || !(t->tail_index() < 2.0))
    throw std::invalid_argument(
        "run_stable_experiment: model must be Student t with tail index in (1, 2)");

  const auto start = std::chrono::steady_clock::now();
  const double alpha = t->tail_index();
  const double mu = solve_expectile(*t, cfg.tau);
  const double tail_constant = t_tail_constant(alpha);
  const StableLimit limit =
      stable_limit(alpha, tail_constant, tail_constant, cfg.tau, t->cdf(mu));

  ExperimentReport report;
  report.experiment = "stable";
  report.model_label = cfg.model_label;
  report.tau = cfg.tau;
  report.master_seed = cfg.master_seed;
  report.replications = cfg.replications;
  report.standardization = Standardization::stable;
  report.parameters = {{"tau", cfg.tau},
                       {"alpha", alpha},
                       {"mu", mu},
                       {"tail_constant", tail_constant},
                       {"beta_tilde", limit.beta_tilde},
                       {"c_tilde", limit.c_tilde},
                       {"rate_exponent", limit.rate_exponent},
                       {"denom", limit.denom}};

  const RngSpec rng{cfg.master_seed};
  const std::size_t reps = cfg.replications;
  for (std::size_t si = 0; si < cfg.sample_sizes.size(); ++si) {
    const std::size_t n = cfg.sample_sizes[si];
    const double rate =
        limit.c_tilde * std::pow(static_cast<double>(n), limit.rate_exponent);

    SizeReport size_report;
    size_report.sample_size = n;
    size_report.raw.resize(reps);
    size_report.standardized.resize(reps);

    detail::parallel_replications(reps, cfg.threads, [&, si, n](std::size_t r) {
      RngStream stream = rng.stream(si * reps + r);
      const SortedSample sample(detail::draw_sample(*cfg.model, n, stream));
      const double muhat = expectile(sample, cfg.tau);
      size_report.raw[r] = muhat;
      size_report.standardized[r] = rate * (muhat - mu);
    });

    size_report.sorted_stats = size_report.standardized;
    std::sort(size_report.sorted_stats.begin(), size_report.sorted_stats.end());
    size_report.reference_cdf.reserve(reps);
    for (double x : size_report.sorted_stats)
      size_report.reference_cdf.push_back(
          stable_cdf(alpha, limit.beta_tilde, limit.denom * x));
    size_report.ks = ks_distance(size_report.sorted_stats, [&](double x) {
      return stable_cdf(alpha, limit.beta_tilde, limit.denom * x);
    });
    report.sizes.push_back(std::move(size_report));
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// Behaviour of sqrt(n) (muhat - mu) for discrete laws: normal when no atom
// sits at the expectile, the two-scale normal mixture when one does.
inline ExperimentReport run_jump_experiment(const ExperimentConfig& cfg) {
  detail::check_config(cfg, "run_jump_experiment");
  const auto* discrete = dynamic_cast<const DiscreteDistribution*>(cfg.model.get());
  if (!discrete)
    throw std::invalid_argument("run_jump_experiment: model must be discrete");

  const auto start = std::chrono::steady_clock::now();
  const double mu = discrete_expectile(*discrete, cfg.tau);
  const bool atom_at_mu = discrete->point_mass(mu) > 0.0;

  ExperimentReport report;
  report.experiment = "jump";
  report.model_label = cfg.model_label;
  report.tau = cfg.tau;
  report.master_seed = cfg.master_seed;
  report.replications = cfg.replications;

  std::function<double(double)> reference;
  MixtureLimit mixture{};
  if (atom_at_mu) {
    mixture = mixture_limit(*discrete, cfg.tau);
    report.standardization = Standardization::mixture;
    report.parameters = {{"tau", cfg.tau},
                         {"mu", mu},
                         {"sigma1", mixture.sigma1},
                         {"sigma2", mixture.sigma2},
                         {"sd_w", mixture.sd_w}};
    reference = [mixture](double x) { return mixture_cdf(mixture, x); };
  } else {
    const NormalLimit normal = normal_covariance(*discrete, {cfg.tau});
    const double sd = std::sqrt(normal.sigma[0][0]);
    report.standardization = Standardization::normal;
    report.parameters = {{"tau", cfg.tau}, {"mu", mu}, {"sigma", normal.sigma[0][0]}};
    reference = [sd](double x) { return special::normal_cdf(x / sd); };
  }

  const RngSpec rng{cfg.master_seed};
  const std::size_t reps = cfg.replications;
  for (std::size_t si = 0; si < cfg.sample_sizes.size(); ++si) {
    const std::size_t n = cfg.sample_sizes[si];
    const double rate = std::sqrt(static_cast<double>(n));

    SizeReport size_report;
    size_report.sample_size = n;
    size_report.raw.resize(reps);
    size_report.standardized.resize(reps);

    detail::parallel_replications(reps, cfg.threads, [&, si, n](std::size_t r) {
      RngStream stream = rng.stream(si * reps + r);
      const SortedSample sample(detail::draw_sample(*cfg.model, n, stream));
      const double muhat = expectile(sample, cfg.tau);
      size_report.raw[r] = muhat;
      size_report.standardized[r] = rate * (muhat - mu);
    });

    size_report.sorted_stats = size_report.standardized;
    std::sort(size_report.sorted_stats.begin(), size_report.sorted_stats.end());
    size_report.reference_cdf.reserve(reps);
    for (double x : size_report.sorted_stats)
      size_report.reference_cdf.push_back(reference(x));
    size_report.ks = ks_distance(size_report.sorted_stats, reference);

    std::size_t below = 0;
    for (double x : size_report.standardized)
      if (x < 0.0) ++below;
    size_report.extras.emplace_back(
        "fraction_below_zero", static_cast<double>(below) / static_cast<double>(reps));

    if (atom_at_mu) {
      const double scale_pos = mixture.sigma1 * mixture.sd_w;
      const double scale_neg = mixture.sigma2 * mixture.sd_w;
      size_report.extras.emplace_back(
          "ks_normal_sigma1",
          ks_distance(size_report.sorted_stats, [scale_pos](double x) {
            return special::normal_cdf(x / scale_pos);
          }));
      size_report.extras.emplace_back(
          "ks_normal_sigma2",
          ks_distance(size_report.sorted_stats, [scale_neg](double x) {
            return special::normal_cdf(x / scale_neg);
          }));
    }

    size_report.kde = gaussian_kde(size_report.standardized);
    report.sizes.push_back(std::move(size_report));
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// Uniform consistency: per sample size, the median over replications of the
// worst-case estimation error over a grid of asymmetry levels.
inline ExperimentReport run_consistency_experiment(const ExperimentConfig& cfg) {
  detail::check_config(cfg, "run_consistency_experiment");
  if (cfg.tau_grid.empty())
    throw std::invalid_argument("run_consistency_experiment: tau grid is empty");
  for (double tau : cfg.tau_grid) detail::check_tau(tau, "run_consistency_experiment");

  const auto start = std::chrono::steady_clock::now();
  std::vector<double> true_values;
  true_values.reserve(cfg.tau_grid.size());
  for (double tau : cfg.tau_grid)
    true_values.push_back(detail::population_expectile(*cfg.model, tau));

  ExperimentReport report;
  report.experiment = "consistency";
  report.model_label = cfg.model_label;
  report.tau = cfg.tau_grid.front();
  report.master_seed = cfg.master_seed;
  report.replications = cfg.replications;
  report.standardization = Standardization::none;
  report.parameters = {{"tau_grid_low", cfg.tau_grid.front()},
                       {"tau_grid_high", cfg.tau_grid.back()},
                       {"tau_grid_size", static_cast<double>(cfg.tau_grid.size())}};

  const RngSpec rng{cfg.master_seed};
  const std::size_t reps = cfg.replications;
  for (std::size_t si = 0; si < cfg.sample_sizes.size(); ++si) {
    const std::size_t n = cfg.sample_sizes[si];

    SizeReport size_report;
    size_report.sample_size = n;
    size_report.raw.resize(reps);
    size_report.standardized.resize(reps);

    detail::parallel_replications(reps, cfg.threads, [&, si, n](std::size_t r) {
      RngStream stream = rng.stream(si * reps + r);
      const SortedSample sample(detail::draw_sample(*cfg.model, n, stream));
      double sup_error = 0.0;
      for (std::size_t g = 0; g < cfg.tau_grid.size(); ++g) {
        const double err =
            std::fabs(expectile(sample, cfg.tau_grid[g]) - true_values[g]);
        sup_error = std::max(sup_error, err);
      }
      size_report.raw[r] = sup_error;
      size_report.standardized[r] = sup_error;
    });

    size_report.sorted_stats = size_report.raw;
    std::sort(size_report.sorted_stats.begin(), size_report.sorted_stats.end());
    size_report.extras.emplace_back("median_sup_error",
                                    detail::median_of(size_report.raw));
    report.sizes.push_back(std::move(size_report));
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// Empirical coverage of the normal-approximation confidence interval.
inline ExperimentReport run_coverage_experiment(const ExperimentConfig& cfg,
                                                double level) {
  detail::check_config(cfg, "run_coverage_experiment");
  if (!(level >= 0.0) || !(level < 1.0))
    throw std::invalid_argument("run_coverage_experiment: level must lie in [0, 1)");

  const auto start = std::chrono::steady_clock::now();
  const double mu = detail::population_expectile(*cfg.model, cfg.tau);
  if (cfg.model->point_mass(mu) > 0.0)
    throw std::domain_error(
        "run_coverage_experiment: the law has an atom at the expectile; the "
        "normal-approximation interval does not apply");

  ExperimentReport report;
  report.experiment = "coverage";
  report.model_label = cfg.model_label;
  report.tau = cfg.tau;
  report.master_seed = cfg.master_seed;
  report.replications = cfg.replications;
  report.standardization = Standardization::none;
  report.parameters = {{"tau", cfg.tau}, {"mu", mu}, {"level", level}};

  const RngSpec rng{cfg.master_seed};
  const std::size_t reps = cfg.replications;
  for (std::size_t si = 0; si < cfg.sample_sizes.size(); ++si) {
    const std::size_t n = cfg.sample_sizes[si];

    SizeReport size_report;
    size_report.sample_size = n;
    size_report.raw.resize(reps);
    size_report.standardized.resize(reps);

    detail::parallel_replications(reps, cfg.threads, [&, si, n](std::size_t r) {
      RngStream stream = rng.stream(si * reps + r);
      const SortedSample sample(detail::draw_sample(*cfg.model, n, stream));
      const auto interval = confidence_interval(sample, cfg.tau, level);
      const bool covered = interval.first <= mu && mu <= interval.second;
      size_report.raw[r] = covered ? 1.0 : 0.0;
      size_report.standardized[r] = size_report.raw[r];
    });

    size_report.sorted_stats = size_report.raw;
    std::sort(size_report.sorted_stats.begin(), size_report.sorted_stats.end());
    double hits = 0.0;
    for (double v : size_report.raw) hits += v;
    size_report.extras.emplace_back("coverage", hits / static_cast<double>(reps));
    report.sizes.push_back(std::move(size_report));
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace expectiles

#endif  // EXPECTILES_SIMULATION_HPP_
