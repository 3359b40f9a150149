/*
 * include/expectiles/io.hpp
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

#ifndef EXPECTILES_IO_HPP_
#define EXPECTILES_IO_HPP_

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "expectiles/asymptotics.hpp"
#include "expectiles/distributions.hpp"
#include "expectiles/simulation.hpp"

namespace expectiles {
namespace io {

// Full round-trip precision with a '.' decimal separator, independent of
// any ambient locale configuration.
inline std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

// Compact formatting for labels and file names.
inline std::string format_short(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%g", value);
  return buffer;
}

// Reads newline-delimited reals; '#' starts a comment, blank lines are
// skipped.
inline std::vector<double> read_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file: " + path);

  std::vector<double> values;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        const double value = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        values.push_back(value);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad number '" + token + "' at " + path + ":" +
                                    std::to_string(line_number));
      }
    }
  }
  return values;
}

struct ParsedModel {
  std::shared_ptr<const DistributionModel> model;
  std::string label;
};

// Accepts {"t": alpha} or {"support": [...], "probs": [...]}.
inline ParsedModel model_from_json(const nlohmann::json& doc) {
  if (!doc.is_object())
    throw std::invalid_argument("model JSON must be an object");

  if (doc.contains("t")) {
    if (!doc["t"].is_number())
      throw std::invalid_argument("model JSON: \"t\" must be a number");
    const double tail_index = doc["t"].get<double>();
    return {std::make_shared<StudentT>(tail_index),
            "t" + format_short(tail_index)};
  }

  if (doc.contains("support") || doc.contains("probs")) {
    if (!doc.contains("support") || !doc.contains("probs"))
      throw std::invalid_argument(
          "model JSON: discrete laws need both \"support\" and \"probs\"");
    if (!doc["support"].is_array() || !doc["probs"].is_array())
      throw std::invalid_argument(
          "model JSON: \"support\" and \"probs\" must be arrays");
    std::vector<double> support;
    std::vector<double> probs;
    for (const auto& v : doc["support"]) {
      if (!v.is_number())
        throw std::invalid_argument("model JSON: \"support\" entries must be numbers");
      support.push_back(v.get<double>());
    }
    for (const auto& v : doc["probs"]) {
      if (!v.is_number())
        throw std::invalid_argument("model JSON: \"probs\" entries must be numbers");
      probs.push_back(v.get<double>());
    }
    const std::string label = "discrete" + std::to_string(support.size());
    return {std::make_shared<DiscreteDistribution>(std::move(support), std::move(probs)),
            label};
  }

  throw std::invalid_argument(
      "model JSON must contain either {\"t\": alpha} or "
      "{\"support\": [...], \"probs\": [...]}");
}

inline nlohmann::json to_json(const NormalLimit& limit) {
  nlohmann::json out;
  out["kind"] = "normal";
  out["taus"] = limit.taus;
  out["mus"] = limit.mus;
  out["sigma"] = limit.sigma;
  return out;
}

inline nlohmann::json to_json(const MixtureLimit& limit) {
  nlohmann::json out;
  out["kind"] = "mixture";
  out["sigma1"] = limit.sigma1;
  out["sigma2"] = limit.sigma2;
  out["sd_w"] = limit.sd_w;
  return out;
}

inline nlohmann::json to_json(const StableLimit& limit) {
  nlohmann::json out;
  out["kind"] = "stable";
  out["alpha"] = limit.alpha;
  out["beta_tilde"] = limit.beta_tilde;
  out["c_tilde"] = limit.c_tilde;
  out["rate_exponent"] = limit.rate_exponent;
  out["denom"] = limit.denom;
  return out;
}

// One row per replication; byte-identical output for identical reports.
inline void write_report_csv(const ExperimentReport& report, std::ostream& out) {
  out << "n,replication,raw,standardized\n";
  for (const SizeReport& size : report.sizes) {
    for (std::size_t r = 0; r < size.raw.size(); ++r) {
      out << size.sample_size << ',' << r << ',' << format_double(size.raw[r])
          << ',' << format_double(size.standardized[r]) << '\n';
    }
  }
}

// Summary only: the per-replication data live in the CSV. Wall time is
// deliberately not serialized so repeated runs stay byte-identical.
inline nlohmann::json report_summary_json(const ExperimentReport& report) {
  nlohmann::json out;
  out["experiment"] = report.experiment;
  out["model"] = report.model_label;
  out["tau"] = report.tau;
  out["seed"] = report.master_seed;
  out["replications"] = report.replications;
  out["standardization"] = standardization_name(report.standardization);

  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, value] : report.parameters) params[name] = value;
  out["parameters"] = params;

  out["sizes"] = nlohmann::json::array();
  for (const SizeReport& size : report.sizes) {
    nlohmann::json entry;
    entry["n"] = size.sample_size;
    if (!std::isnan(size.ks)) entry["ks"] = size.ks;
    for (const auto& [name, value] : size.extras) entry[name] = value;
    if (!size.kde.grid.empty()) {
      entry["kde"] = {{"grid", size.kde.grid}, {"density", size.kde.density}};
    }
    out["sizes"].push_back(entry);
  }
  return out;
}

inline std::string report_basename(const ExperimentReport& report) {
  std::string tau_token;
  if (report.experiment == "consistency") {
    double lo = report.tau;
    double hi = report.tau;
    for (const auto& [name, value] : report.parameters) {
      if (name == "tau_grid_low") lo = value;
      if (name == "tau_grid_high") hi = value;
    }
    tau_token = format_short(lo) + "-" + format_short(hi);
  } else {
    tau_token = format_short(report.tau);
  }
  return report.experiment + "-" + report.model_label + "-" + tau_token + "-" +
         std::to_string(report.master_seed);
}

// Writes <dir>/<experiment>-<model>-<tau>-<seed>.{csv,json}; returns the
// two paths.
inline std::pair<std::string, std::string> write_report_files(
    const ExperimentReport& report, const std::string& directory) {
  const std::string base =
      (directory.empty() ? std::string(".") : directory) + "/" +
      report_basename(report);
  const std::string csv_path = base + ".csv";
  const std::string json_path = base + ".json";

  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot write " + csv_path);
  write_report_csv(report, csv);
  csv.close();

  std::ofstream json(json_path);
  if (!json) throw std::runtime_error("cannot write " + json_path);
  json << report_summary_json(report).dump(2) << '\n';
  json.close();

  return {csv_path, json_path};
}

}  // namespace io
}  // namespace expectiles

#endif  // EXPECTILES_IO_HPP_
