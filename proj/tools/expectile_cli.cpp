/*
 * tools/expectile_cli.cpp
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
 * Command-line front end: sample expectile estimation with confidence
 * intervals, closed-form expectile curves, theoretical expectiles with
 * their limit laws, and seeded Monte Carlo experiments.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "expectiles/expectile.hpp"

namespace {

using nlohmann::json;

struct SharedFlags {
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

void add_shared_flags(CLI::App* sub, SharedFlags& flags) {
  sub->add_option("--out", flags.out, "Write output to this file instead of stdout");
  sub->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", flags.seed, "Master seed for random experiments");
  sub->add_option("--threads", flags.threads,
                  "Worker threads (0 = all available cores)");
}

void emit(const std::string& content, const SharedFlags& flags) {
  if (flags.out.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(flags.out);
  if (!out) throw std::runtime_error("cannot write " + flags.out);
  out << content;
}

// Model flag value: inline JSON if it starts with '{', else a file path.
expectiles::io::ParsedModel load_model(const std::string& spec) {
  std::string text = spec;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return expectiles::io::model_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("model JSON parse failure: ") + e.what());
    }
  }
  std::ifstream in(spec);
  if (!in) throw std::invalid_argument("cannot open model file: " + spec);
  try {
    json parsed;
    in >> parsed;
    return expectiles::io::model_from_json(parsed);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("model JSON parse failure in " + spec + ": " + e.what());
  }
}

void check_tau_flag(const std::vector<double>& taus) {
  if (taus.empty()) throw std::invalid_argument("no --tau values given");
  for (double tau : taus)
    if (!(tau > 0.0) || !(tau < 1.0))
      throw std::invalid_argument("tau values must lie strictly in (0, 1)");
}

int run_estimate(const std::string& data_path, const std::vector<double>& taus,
                 double level, const SharedFlags& flags) {
  const expectiles::SortedSample sample =
      expectiles::build_sample(expectiles::io::read_data_file(data_path));

  struct Row {
    double tau, value, se, lo, hi;
  };
  std::vector<Row> rows;
  for (double tau : taus) {
    const expectiles::NormalLimit est = expectiles::estimate_covariance(sample, {tau});
    const double se =
        std::sqrt(est.sigma[0][0] / static_cast<double>(sample.size()));
    const auto interval = expectiles::confidence_interval(sample, tau, level);
    rows.push_back({tau, est.mus[0], se, interval.first, interval.second});
  }

  std::ostringstream out;
  if (flags.format == "csv") {
    out << "tau,expectile,se,ci_low,ci_high\n";
    for (const Row& row : rows)
      out << expectiles::io::format_double(row.tau) << ','
          << expectiles::io::format_double(row.value) << ','
          << expectiles::io::format_double(row.se) << ','
          << expectiles::io::format_double(row.lo) << ','
          << expectiles::io::format_double(row.hi) << '\n';
  } else {
    json doc = json::array();
    for (const Row& row : rows)
      doc.push_back({{"tau", row.tau},
                     {"expectile", row.value},
                     {"se", row.se},
                     {"ci_low", row.lo},
                     {"ci_high", row.hi},
                     {"level", level}});
    out << doc.dump(2) << '\n';
  }
  emit(out.str(), flags);
  return 0;
}

int run_curve(const std::string& data_path, std::size_t grid_size,
              const SharedFlags& flags) {
  const expectiles::SortedSample sample =
      expectiles::build_sample(expectiles::io::read_data_file(data_path));
  const expectiles::ExpectileCurve curve(sample);
  const expectiles::BreakpointTable& table = curve.table();

  struct Row {
    double tau, value;
    bool is_breakpoint;
  };
  std::vector<Row> rows;
  for (std::size_t j = 0; j < table.size(); ++j)
    rows.push_back({table.taus[j], table.anchors[j], true});
  for (std::size_t g = 1; g <= grid_size; ++g) {
    const double tau = static_cast<double>(g) / static_cast<double>(grid_size + 1);
    const bool hits_knot =
        std::binary_search(table.taus.begin(), table.taus.end(), tau);
    if (!hits_knot) rows.push_back({tau, curve(tau), false});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.tau != b.tau) return a.tau < b.tau;
    return a.is_breakpoint && !b.is_breakpoint;
  });

  std::ostringstream out;
  if (flags.format == "csv") {
    out << "tau,expectile,is_breakpoint\n";
    for (const Row& row : rows)
      out << expectiles::io::format_double(row.tau) << ','
          << expectiles::io::format_double(row.value) << ','
          << (row.is_breakpoint ? 1 : 0) << '\n';
  } else {
    json doc = json::array();
    for (const Row& row : rows)
      doc.push_back({{"tau", row.tau},
                     {"expectile", row.value},
                     {"is_breakpoint", row.is_breakpoint}});
    out << doc.dump(2) << '\n';
  }
  emit(out.str(), flags);
  return 0;
}

// Chooses the limit law for a model at a given tau: mixture at an atom,
// stable for Student t with tail index in (1,2), normal otherwise.
json limit_block(const expectiles::DistributionModel& model, double tau, double mu) {
  if (model.point_mass(mu) > 0.0)
    return expectiles::io::to_json(expectiles::mixture_limit(model, tau));
  if (const auto* t = dynamic_cast<const expectiles::StudentT*>(&model)) {
    if (t->tail_index() < 2.0) {
      const double c = expectiles::t_tail_constant(t->tail_index());
      return expectiles::io::to_json(
          expectiles::stable_limit(t->tail_index(), c, c, tau, t->cdf(mu)));
    }
    if (t->tail_index() == 2.0)
      throw std::invalid_argument(
          "tail index 2 is unsupported: the stable limit needs (1,2), the "
          "normal limit needs a tail index above 2");
  }
  return expectiles::io::to_json(expectiles::normal_covariance(model, {tau}));
}

int run_theo(const std::string& model_spec, const std::vector<double>& taus,
             const SharedFlags& flags) {
  const expectiles::io::ParsedModel parsed = load_model(model_spec);
  const expectiles::DistributionModel& model = *parsed.model;

  json doc = json::array();
  for (double tau : taus) {
    const auto* discrete =
        dynamic_cast<const expectiles::DiscreteDistribution*>(&model);
    const double mu = discrete ? expectiles::discrete_expectile(*discrete, tau)
                               : expectiles::solve_expectile(model, tau);
    json entry;
    entry["tau"] = tau;
    entry["expectile"] = mu;
    if (model.point_mass(mu) > 0.0)
      entry["derivative"] = "atom";
    else
      entry["derivative"] = expectiles::expectile_derivative(model, tau);
    entry["limit"] = limit_block(model, tau, mu);
    doc.push_back(entry);
  }

  std::ostringstream out;
  if (flags.format == "json") {
    out << doc.dump(2) << '\n';
  } else {
    out << "tau,expectile,derivative,limit_kind,sigma,sigma1,sigma2,sd_w,"
           "alpha,beta_tilde,c_tilde,rate_exponent,denom\n";
    for (const json& entry : doc) {
      const json& limit = entry["limit"];
      const std::string kind = limit["kind"].get<std::string>();
      out << expectiles::io::format_double(entry["tau"].get<double>()) << ','
          << expectiles::io::format_double(entry["expectile"].get<double>()) << ',';
      if (entry["derivative"].is_string())
        out << "atom";
      else
        out << expectiles::io::format_double(entry["derivative"].get<double>());
      out << ',' << kind << ',';
      const auto cell = [&](const char* key) {
        if (limit.contains(key))
          out << expectiles::io::format_double(limit[key].get<double>());
      };
      if (kind == "normal")
        out << expectiles::io::format_double(limit["sigma"][0][0].get<double>());
      out << ',';
      cell("sigma1");
      out << ',';
      cell("sigma2");
      out << ',';
      cell("sd_w");
      out << ',';
      cell("alpha");
      out << ',';
      cell("beta_tilde");
      out << ',';
      cell("c_tilde");
      out << ',';
      cell("rate_exponent");
      out << ',';
      cell("denom");
      out << '\n';
    }
  }
  emit(out.str(), flags);
  return 0;
}

struct SimulateFlags {
  std::string kind;
  std::string model_spec;
  double alpha = 0.0;
  std::vector<double> taus;
  std::vector<std::size_t> sizes;
  std::size_t reps = 0;
  double level = 0.95;
  std::string out_dir = ".";
};

int run_simulate(const SimulateFlags& sim, const SharedFlags& flags) {
  expectiles::ExperimentConfig cfg;
  cfg.master_seed = flags.seed;
  cfg.threads = flags.threads;

  if (sim.alpha != 0.0) {
    if (sim.kind == "stable" && !(sim.alpha > 1.0 && sim.alpha < 2.0))
      throw std::invalid_argument("--alpha must lie in (1, 2) for the stable experiment");
    cfg.model = std::make_shared<expectiles::StudentT>(sim.alpha);
    cfg.model_label = "t" + expectiles::io::format_short(sim.alpha);
  } else if (!sim.model_spec.empty()) {
    const expectiles::io::ParsedModel parsed = load_model(sim.model_spec);
    cfg.model = parsed.model;
    cfg.model_label = parsed.label;
  } else {
    throw std::invalid_argument("give a model via --alpha or --model");
  }

  if (sim.sizes.empty()) throw std::invalid_argument("no sample sizes given (--n)");
  cfg.sample_sizes = sim.sizes;

  if (sim.kind == "consistency") {
    cfg.tau_grid = sim.taus;
    if (cfg.tau_grid.empty())
      for (int g = 0; g < 17; ++g) cfg.tau_grid.push_back(0.1 + 0.05 * g);
    check_tau_flag(cfg.tau_grid);
    cfg.tau = cfg.tau_grid.front();
  } else {
    if (sim.taus.size() != 1)
      throw std::invalid_argument("this experiment needs exactly one --tau value");
    check_tau_flag(sim.taus);
    cfg.tau = sim.taus.front();
  }

  cfg.replications = sim.reps;
  if (cfg.replications == 0) {
    if (sim.kind == "stable") cfg.replications = 10000;
    else if (sim.kind == "jump") cfg.replications = 20000;
    else if (sim.kind == "consistency") cfg.replications = 200;
    else cfg.replications = 5000;
  }

  expectiles::ExperimentReport report;
  if (sim.kind == "stable")
    report = expectiles::run_stable_experiment(cfg);
  else if (sim.kind == "jump")
    report = expectiles::run_jump_experiment(cfg);
  else if (sim.kind == "consistency")
    report = expectiles::run_consistency_experiment(cfg);
  else
    report = expectiles::run_coverage_experiment(cfg, sim.level);

  const auto paths = expectiles::io::write_report_files(report, sim.out_dir);

  std::ostringstream out;
  out << "wrote " << paths.first << '\n';
  out << "wrote " << paths.second << '\n';
  for (const expectiles::SizeReport& size : report.sizes) {
    out << "n=" << size.sample_size;
    if (!std::isnan(size.ks)) out << " ks=" << expectiles::io::format_double(size.ks);
    for (const auto& [name, value] : size.extras)
      out << ' ' << name << '=' << expectiles::io::format_double(value);
    out << '\n';
  }
  std::cout << out.str();
  std::cerr << "elapsed " << report.wall_seconds << " s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "expectile: sample and theoretical expectiles, their limit laws, and "
      "seeded Monte Carlo experiments"};
  app.require_subcommand(1);

  SharedFlags shared;

  auto* est = app.add_subcommand(
      "estimate", "Sample expectiles with standard errors and confidence intervals");
  std::string est_data;
  std::vector<double> est_taus;
  double est_level = 0.95;
  est->add_option("--data", est_data, "Data file: one real per line, '#' comments")
      ->required();
  est->add_option("--tau", est_taus, "Asymmetry levels in (0,1)")
      ->required()
      ->delimiter(',');
  est->add_option("--level", est_level, "Confidence level in [0,1)");
  add_shared_flags(est, shared);

  auto* crv = app.add_subcommand(
      "curve", "Breakpoint table and closed-form expectile curve of a sample");
  std::string crv_data;
  std::size_t crv_grid = 0;
  crv->add_option("--data", crv_data, "Data file: one real per line, '#' comments")
      ->required();
  crv->add_option("--grid", crv_grid, "Extra uniform tau grid points (0 = breakpoints only)");
  add_shared_flags(crv, shared);

  auto* theo = app.add_subcommand(
      "theo", "Theoretical expectiles, derivatives, and limit laws of a model");
  std::string theo_model;
  std::vector<double> theo_taus;
  theo->add_option("--model", theo_model,
                   "Model: inline JSON or a file; {\"t\": alpha} or "
                   "{\"support\": [...], \"probs\": [...]}")
      ->required();
  theo->add_option("--tau", theo_taus, "Asymmetry levels in (0,1)")
      ->required()
      ->delimiter(',');
  add_shared_flags(theo, shared);

  auto* sim = app.add_subcommand("simulate", "Run a seeded Monte Carlo experiment");
  SimulateFlags sim_flags;
  sim->add_option("kind", sim_flags.kind, "Experiment kind")
      ->required()
      ->check(CLI::IsMember({"stable", "jump", "consistency", "coverage"}));
  sim->add_option("--model", sim_flags.model_spec, "Model: inline JSON or a file");
  sim->add_option("--alpha", sim_flags.alpha,
                  "Student t tail index shorthand (required for 'stable')");
  sim->add_option("--tau", sim_flags.taus,
                  "Asymmetry level (list = grid for 'consistency')")
      ->delimiter(',');
  sim->add_option("--n", sim_flags.sizes, "Sample sizes")->required()->delimiter(',');
  sim->add_option("--reps", sim_flags.reps, "Replications (0 = experiment default)");
  sim->add_option("--level", sim_flags.level, "Confidence level for 'coverage'");
  sim->add_option("--out-dir", sim_flags.out_dir, "Directory for report files");
  add_shared_flags(sim, shared);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cerr << "run '" << (argv && argv[0] ? argv[0] : "expectile")
              << " --help' for usage\n";
    return 2;
  }

  try {
    if (est->parsed()) {
      check_tau_flag(est_taus);
      if (!(est_level >= 0.0) || !(est_level < 1.0))
        throw std::invalid_argument("--level must lie in [0, 1)");
      return run_estimate(est_data, est_taus, est_level, shared);
    }
    if (crv->parsed()) return run_curve(crv_data, crv_grid, shared);
    if (theo->parsed()) {
      check_tau_flag(theo_taus);
      return run_theo(theo_model, theo_taus, shared);
    }
    return run_simulate(sim_flags, shared);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: invalid: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
