// Copyright 2026 The genesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GENESIM_IO_CONFIG_HPP
#define GENESIM_IO_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "genesim/engine.hpp"
#include "genesim/io/csv.hpp"
#include "genesim/table.hpp"

namespace genesim::io {

struct ColumnConfig {
  std::string name;
  FitnessKind kind = FitnessKind::percentage;
  std::vector<std::string> labels;
};

/// A run description loaded from YAML or JSON.
///
///   data: flights.csv
///   row_name_column: flight
///   columns:
///     - {name: price, fitness: inverse}
///     - {name: tags, fitness: overlap, labels: [wifi, meal]}
///   strategy:
///     mode: fixed                      # or self_consistent
///     gene_alphas: {dominant: 1, altruistic: 0}
///     organism_alphas: {balanced: 1, selfish: 0}
///   initial_gamma: [0.5, 0.5]          # column order of `columns`
///   epsilon: 1.0e-8
///   max_iterations: 500
///   outputs: {trace: trace.csv, summary: summary.json}
///
/// Optional engine knobs: clamp_policy (on|off), gene_effect_scale
/// (mean|per_equation), selfish_normalization (organism_fitness|
/// per_equation), workers.
struct RunConfig {
  std::optional<std::filesystem::path> data;
  std::optional<std::string> row_name_column;
  std::vector<ColumnConfig> columns;
  SimConfig sim;
  std::optional<std::filesystem::path> trace_output;
  std::optional<std::filesystem::path> summary_output;

  CsvOptions csv_options() const;

  /// Matches config columns to table columns by name, in table order.
  /// Every table column needs exactly one entry and vice versa.
  std::vector<FeatureSpec> feature_specs(const RawTable& table) const;

  /// Engine settings with initial_gamma permuted from config column order
  /// to table column order.
  SimConfig simulation_config(const RawTable& table) const;

  /// Normalized form of the config, embedded in reports.
  nlohmann::json echo() const;
};

/// Parses a config document. All schema problems are collected into one
/// ValidationError. Relative paths resolve against `base_dir`.
RunConfig parse_run_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

/// Loads `.json` files with the JSON parser and anything else as YAML.
RunConfig load_run_config(const std::filesystem::path& path);

/// Converts a YAML document to the equivalent JSON value. Plain scalars
/// that look like numbers or booleans are typed accordingly.
nlohmann::json yaml_to_json(std::string_view yaml_text);

}  // namespace genesim::io

#endif  // GENESIM_IO_CONFIG_HPP
