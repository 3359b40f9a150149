/*
 * tests/acceptance.cpp
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
 *
 * Release gate. Eleven end-to-end checks, one line of output each, with
 * every tolerance pinned in this file. Exits with the number of failures.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "expectiles/expectile.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.3g", x);
  return buffer;
}

double extra(const expectiles::SizeReport& size, const std::string& name) {
  for (const auto& [key, value] : size.extras)
    if (key == name) return value;
  throw std::runtime_error("missing extra '" + name + "'");
}

std::shared_ptr<expectiles::DiscreteDistribution> three_point() {
  return std::make_shared<expectiles::DiscreteDistribution>(
      std::vector<double>{0.0, 1.0, 2.0}, std::vector<double>{0.4, 0.5, 0.1});
}

constexpr std::uint64_t kSeed = 20260825;

// 1. The closed-form sample expectile must agree with a bisection root of
// the identification function on random samples, ties included.
Outcome check_oracle_equivalence() {
  constexpr double kRelTol = 1.0e-10;
  constexpr double kBudgetSeconds = 30.0;
  const auto start = Clock::now();

  const expectiles::RngSpec rng{kSeed};
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    expectiles::RngStream stream = rng.stream(static_cast<std::uint64_t>(i));
    std::size_t n = 2 + static_cast<std::size_t>(stream.uniform() * 999.0);
    if (i < 4) n = 2 + static_cast<std::size_t>(i);
    const bool inject_ties = (i % 10) < 3;

    std::vector<double> data(n);
    for (double& v : data) {
      v = 3.0 * stream.normal() + stream.uniform();
      if (inject_ties) v = std::round(v * 10.0) / 10.0;
    }
    const expectiles::SortedSample sample(std::move(data));

    for (int k = 1; k <= 19; ++k) {
      const double tau = 0.05 * k;
      double lo = sample.min();
      double hi = sample.max();
      for (int iter = 0; iter < 200 && hi - lo > 1.0e-15 * (1.0 + std::fabs(lo));
           ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (expectiles::identification_value(sample, mid, tau) > 0.0)
          lo = mid;
        else
          hi = mid;
      }
      const double root = 0.5 * (lo + hi);
      const double closed = expectiles::expectile(sample, tau);
      worst = std::max(worst, std::fabs(closed - root) / (1.0 + std::fabs(root)));
    }
  }

  const double elapsed = seconds_since(start);
  return {worst <= kRelTol && elapsed < kBudgetSeconds,
          "max rel err " + fmt(worst) + ", " + fmt(elapsed) + " s"};
}

// 2. Reference values of the three-point law 0.4/0.5/0.1 on {0, 1, 2}.
Outcome check_three_point_values() {
  constexpr double kValueTol = 1.0e-12;
  constexpr double kKnotTol = 1.0e-14;

  const auto law = three_point();
  const double err07 = std::fabs(expectiles::discrete_expectile(*law, 0.7) - 49.0 / 54.0);
  const double err08 = std::fabs(expectiles::discrete_expectile(*law, 0.8) - 1.0);
  const expectiles::BreakpointTable table = expectiles::discrete_breakpoints(*law);
  const double err_knot = std::fabs(table.taus[1] - 0.8);

  const bool pass = err07 <= kValueTol && err08 <= kValueTol && err_knot <= kKnotTol;
  return {pass, "errors " + fmt(err07) + ", " + fmt(err08) + ", knot " + fmt(err_knot)};
}

// 3. At tau = 1/2 the expectile is the mean and the asymptotic variance of
// a discrete law is its plain variance.
Outcome check_mean_reduction() {
  constexpr double kMeanRelTol = 1.0e-12;
  constexpr double kVarTol = 1.0e-10;

  const expectiles::RngSpec rng{kSeed + 1};
  double worst_mean = 0.0;
  for (int i = 0; i < 100; ++i) {
    expectiles::RngStream stream = rng.stream(static_cast<std::uint64_t>(i));
    const std::size_t n = 2 + static_cast<std::size_t>(stream.uniform() * 400.0);
    std::vector<double> data(n);
    for (double& v : data) v = 5.0 + stream.normal();
    const expectiles::SortedSample sample(std::move(data));
    const double mean = sample.mean();
    worst_mean = std::max(
        worst_mean, std::fabs(expectiles::expectile(sample, 0.5) - mean) / std::fabs(mean));
  }

  double worst_var = 0.0;
  for (int i = 0; i < 20; ++i) {
    expectiles::RngStream stream = rng.stream(1000 + static_cast<std::uint64_t>(i));
    const std::size_t m = 2 + static_cast<std::size_t>(i % 6);
    std::vector<double> atoms(m), weights(m);
    double mass = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      atoms[k] = static_cast<double>(k) + 0.5 * stream.uniform();
      weights[k] = 0.1 + stream.uniform();
      mass += weights[k];
    }
    for (double& w : weights) w /= mass;
    const expectiles::DiscreteDistribution law(atoms, weights);

    double mean = 0.0, second = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      mean += law.weights()[k] * law.atoms()[k];
      second += law.weights()[k] * law.atoms()[k] * law.atoms()[k];
    }
    const double variance = second - mean * mean;
    const double sigma = expectiles::normal_covariance(law, {0.5}).sigma[0][0];
    worst_var = std::max(worst_var, std::fabs(sigma - variance));
  }

  const bool pass = worst_mean <= kMeanRelTol && worst_var <= kVarTol;
  return {pass, "mean rel err " + fmt(worst_mean) + ", variance err " + fmt(worst_var)};
}

// 4. The stable cdf must reproduce its two closed-form members: alpha = 2
// is N(0, 2) and alpha = 1 with beta = 0 is standard Cauchy.
Outcome check_stable_special_cases() {
  constexpr double kTol = 1.0e-8;
  constexpr double kBudgetSeconds = 10.0;
  const auto start = Clock::now();

  constexpr double kPi = 3.14159265358979323846;
  double worst = 0.0;
  for (int i = -200; i <= 200; ++i) {
    const double x = 0.1 * i;
    worst = std::max(worst, std::fabs(expectiles::stable_cdf(2.0, 0.0, x) -
                                      expectiles::special::normal_cdf(x / std::sqrt(2.0))));
    worst = std::max(worst, std::fabs(expectiles::stable_cdf(1.0, 0.0, x) -
                                      (0.5 + std::atan(x) / kPi)));
  }

  const double elapsed = seconds_since(start);
  return {worst <= kTol && elapsed < kBudgetSeconds,
          "max err " + fmt(worst) + ", " + fmt(elapsed) + " s"};
}

// 5. Smooth discrete case: the standardized sample expectile at tau = 0.7
// is close to its normal limit in Kolmogorov-Smirnov distance.
Outcome check_normal_limit_ks() {
  constexpr double kKsBound = 0.02;
  constexpr double kBudgetSeconds = 120.0;
  const auto start = Clock::now();

  expectiles::ExperimentConfig cfg;
  cfg.model = three_point();
  cfg.model_label = "discrete3";
  cfg.tau = 0.7;
  cfg.sample_sizes = {500};
  cfg.replications = 20000;
  cfg.master_seed = kSeed;
  const expectiles::ExperimentReport report = expectiles::run_jump_experiment(cfg);

  const double ks = report.sizes[0].ks;
  const double elapsed = seconds_since(start);
  return {ks <= kKsBound && elapsed < kBudgetSeconds,
          "ks " + fmt(ks) + ", " + fmt(elapsed) + " s"};
}

// 6. Atom at the expectile: the two-scale normal mixture fits the
// standardized statistic and beats both single-scale normal fits.
Outcome check_mixture_limit_ks() {
  constexpr double kKsBound = 0.02;
  constexpr double kBudgetSeconds = 120.0;
  const auto start = Clock::now();

  expectiles::ExperimentConfig cfg;
  cfg.model = three_point();
  cfg.model_label = "discrete3";
  cfg.tau = 0.8;
  cfg.sample_sizes = {500};
  cfg.replications = 20000;
  cfg.master_seed = kSeed;
  const expectiles::ExperimentReport report = expectiles::run_jump_experiment(cfg);

  const double ks = report.sizes[0].ks;
  const double ks1 = extra(report.sizes[0], "ks_normal_sigma1");
  const double ks2 = extra(report.sizes[0], "ks_normal_sigma2");
  const double elapsed = seconds_since(start);
  const bool pass =
      ks <= kKsBound && ks < ks1 && ks < ks2 && elapsed < kBudgetSeconds;
  return {pass, "ks " + fmt(ks) + " vs normals " + fmt(ks1) + "/" + fmt(ks2) +
                    ", " + fmt(elapsed) + " s"};
}

// 7. Heavy tails: convergence to the stable limit improves with the sample
// size and is faster for smaller tail indices.
Outcome check_stable_limit_ks() {
  constexpr double kKsBound = 0.05;
  constexpr double kBudgetSeconds = 300.0;
  const auto start = Clock::now();

  expectiles::ExperimentConfig cfg;
  cfg.model = std::make_shared<expectiles::StudentT>(1.5);
  cfg.model_label = "t1.5";
  cfg.tau = 0.8;
  cfg.sample_sizes = {20, 200, 2000};
  cfg.replications = 10000;
  cfg.master_seed = kSeed;
  const expectiles::ExperimentReport report = expectiles::run_stable_experiment(cfg);
  const double ks20 = report.sizes[0].ks;
  const double ks200 = report.sizes[1].ks;
  const double ks2000 = report.sizes[2].ks;

  cfg.sample_sizes = {2000};
  cfg.model = std::make_shared<expectiles::StudentT>(1.2);
  cfg.model_label = "t1.2";
  const double ks_light =
      expectiles::run_stable_experiment(cfg).sizes[0].ks;
  cfg.model = std::make_shared<expectiles::StudentT>(1.8);
  cfg.model_label = "t1.8";
  const double ks_heavy =
      expectiles::run_stable_experiment(cfg).sizes[0].ks;

  const double elapsed = seconds_since(start);
  const bool pass = ks20 > ks200 && ks200 > ks2000 && ks2000 <= kKsBound &&
                    ks_light < ks_heavy && elapsed < kBudgetSeconds;
  return {pass, "ks " + fmt(ks20) + " > " + fmt(ks200) + " > " + fmt(ks2000) +
                    ", alpha 1.2 vs 1.8: " + fmt(ks_light) + " < " +
                    fmt(ks_heavy) + ", " + fmt(elapsed) + " s"};
}

// 8. The closed-form derivative of the population expectile curve matches
// central finite differences of the root finder.
Outcome check_derivative_formula() {
  constexpr double kTol = 1.0e-6;
  constexpr double kStep = 1.0e-5;
  constexpr double kSolveTol = 1.0e-14;

  const expectiles::StudentT t3(3.0);
  const auto law = three_point();

  double worst = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double tau = 0.1 * k;
    const auto fd = [&](const expectiles::DistributionModel& model) {
      return (expectiles::solve_expectile(model, tau + kStep, kSolveTol) -
              expectiles::solve_expectile(model, tau - kStep, kSolveTol)) /
             (2.0 * kStep);
    };
    worst = std::max(
        worst, std::fabs(expectiles::expectile_derivative(t3, tau) - fd(t3)));
    if (k != 8)  // the law has an atom at its tau = 0.8 expectile
      worst = std::max(worst, std::fabs(expectiles::expectile_derivative(*law, tau) -
                                        fd(*law)));
  }
  return {worst <= kTol, "max err " + fmt(worst)};
}

// 9. Uniform consistency: the median worst-case error over a tau grid
// shrinks as the sample grows.
Outcome check_consistency_trend() {
  constexpr double kBudgetSeconds = 60.0;
  const auto start = Clock::now();

  expectiles::ExperimentConfig cfg;
  cfg.model = std::make_shared<expectiles::StudentT>(3.0);
  cfg.model_label = "t3";
  for (int g = 0; g < 17; ++g) cfg.tau_grid.push_back(0.1 + 0.05 * g);
  cfg.tau = cfg.tau_grid.front();
  cfg.sample_sizes = {50, 500, 5000};
  cfg.replications = 200;
  cfg.master_seed = kSeed;
  const expectiles::ExperimentReport report =
      expectiles::run_consistency_experiment(cfg);

  const double m50 = extra(report.sizes[0], "median_sup_error");
  const double m500 = extra(report.sizes[1], "median_sup_error");
  const double m5000 = extra(report.sizes[2], "median_sup_error");
  const double elapsed = seconds_since(start);
  const bool pass = m50 > m500 && m500 > m5000 && elapsed < kBudgetSeconds;
  return {pass, "medians " + fmt(m50) + " > " + fmt(m500) + " > " + fmt(m5000) +
                    ", " + fmt(elapsed) + " s"};
}

// 10. Confidence intervals at level 0.95 cover the true expectile at close
// to the nominal rate (4 sigma binomial band around 0.95 for R = 5000).
Outcome check_coverage() {
  constexpr double kLow = 0.935;
  constexpr double kHigh = 0.965;
  constexpr double kBudgetSeconds = 120.0;
  const auto start = Clock::now();

  expectiles::ExperimentConfig cfg;
  cfg.model = std::make_shared<expectiles::StudentT>(3.0);
  cfg.model_label = "t3";
  cfg.tau = 0.7;
  cfg.sample_sizes = {2000};
  cfg.replications = 5000;
  cfg.master_seed = kSeed;
  const expectiles::ExperimentReport report =
      expectiles::run_coverage_experiment(cfg, 0.95);

  const double coverage = extra(report.sizes[0], "coverage");
  const double elapsed = seconds_since(start);
  const bool pass = coverage >= kLow && coverage <= kHigh && elapsed < kBudgetSeconds;
  return {pass, "coverage " + fmt(coverage) + ", " + fmt(elapsed) + " s"};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run_cli(const std::string& args) {
  const std::string command =
      std::string(EXPECTILE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 11. Reruns of the command-line simulator with the same seed but different
// thread counts must produce byte-identical report files.
Outcome check_determinism() {
  const std::string dir_a = "/tmp/acceptance-det-a";
  const std::string dir_b = "/tmp/acceptance-det-b";
  const int rc = std::system(("rm -rf " + dir_a + " " + dir_b + " && mkdir -p " +
                              dir_a + " " + dir_b)
                                 .c_str());
  if (rc != 0) return {false, "could not prepare scratch directories"};

  const std::string model = "'{\"support\": [0, 1, 2], \"probs\": [0.4, 0.5, 0.1]}'";
  const std::string jump =
      "simulate jump --model " + model + " --tau 0.8 --n 300 --reps 500 --seed 99";
  const std::string consistency =
      "simulate consistency --model '{\"t\": 3}' --n 80 --reps 40 --seed 7";
  if (run_cli(jump + " --threads 1 --out-dir " + dir_a) != 0 ||
      run_cli(jump + " --threads 4 --out-dir " + dir_b) != 0 ||
      run_cli(consistency + " --threads 1 --out-dir " + dir_a) != 0 ||
      run_cli(consistency + " --threads 3 --out-dir " + dir_b) != 0)
    return {false, "a simulate invocation failed"};

  int compared = 0;
  for (const std::string base :
       {std::string("jump-discrete3-0.8-99"), std::string("consistency-t3-0.1-0.9-7")}) {
    for (const std::string ext : {std::string(".csv"), std::string(".json")}) {
      const std::string a = slurp(dir_a + "/" + base + ext);
      const std::string b = slurp(dir_b + "/" + base + ext);
      if (a.empty() || a != b)
        return {false, base + ext + " differs across thread counts"};
      ++compared;
    }
  }
  return {true, std::to_string(compared) + " report files byte-identical"};
}

int run_all() {
  struct Criterion {
    const char* name;
    Outcome (*check)();
  };
  const Criterion criteria[] = {
      {"closed-form expectile matches the bisection oracle", check_oracle_equivalence},
      {"three-point law reference values", check_three_point_values},
      {"tau = 1/2 reduces to mean and variance", check_mean_reduction},
      {"stable cdf closed-form special cases", check_stable_special_cases},
      {"normal limit fits the smooth discrete case", check_normal_limit_ks},
      {"mixture limit fits and beats single-scale normals", check_mixture_limit_ks},
      {"stable limit improves with n and with smaller alpha", check_stable_limit_ks},
      {"population derivative matches finite differences", check_derivative_formula},
      {"median sup-error decreases with n", check_consistency_trend},
      {"confidence interval coverage near nominal", check_coverage},
      {"simulate reruns byte-identical across thread counts", check_determinism},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion& criterion : criteria) {
    ++index;
    Outcome outcome;
    try {
      outcome = criterion.check();
    } catch (const std::exception& error) {
      outcome = {false, std::string("exception: ") + error.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("%s - %2d. %s [%s]\n", outcome.pass ? "PASS" : "FAIL", index,
                criterion.name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}

}  // namespace

int main() {
  const int failures = run_all();
  if (failures == 0)
    std::printf("acceptance: all %d criteria passed\n", 11);
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures;
}
