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

#include "genesim/table.hpp"

#include <cmath>
#include <utility>

#include "genesim/error.hpp"

namespace genesim {

RawTable::RawTable(std::vector<std::string> column_names,
                   std::vector<std::vector<Cell>> rows,
                   std::vector<std::string> row_names)
    : column_names_(std::move(column_names)),
      rows_(std::move(rows)),
      row_names_(std::move(row_names)) {
  std::vector<Issue> issues;
  if (column_names_.empty()) issues.push_back({"table has no columns", {}, {}});
  if (rows_.empty()) issues.push_back({"table has no rows", {}, {}});
  if (!row_names_.empty() && row_names_.size() != rows_.size()) {
    issues.push_back({"row name count " + std::to_string(row_names_.size()) +
                          " does not match row count " + std::to_string(rows_.size()),
                      {}, {}});
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& row = rows_[i];
    if (row.size() != column_names_.size()) {
      issues.push_back({"expected " + std::to_string(column_names_.size()) +
                            " cells, found " + std::to_string(row.size()),
                        i, {}});
      continue;
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (const auto* v = std::get_if<double>(&row[j])) {
        if (!std::isfinite(*v)) {
          issues.push_back({"numeric cell is not finite", i, column_names_[j]});
        } else if (*v < 0.0) {
          issues.push_back({"numeric cell is negative", i, column_names_[j]});
        }
      }
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  if (row_names_.empty()) {
    row_names_.reserve(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) row_names_.push_back("row" + std::to_string(i + 1));
  }
}

std::vector<Cell> RawTable::column(std::size_t col) const {
  std::vector<Cell> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(row.at(col));
  return out;
}

std::optional<std::size_t> RawTable::find_column(std::string_view name) const {
  for (std::size_t j = 0; j < column_names_.size(); ++j) {
    if (column_names_[j] == name) return j;
  }
  return std::nullopt;
}

std::string_view to_string(FitnessKind kind) {
  switch (kind) {
    case FitnessKind::boolean: return "boolean";
    case FitnessKind::percentage: return "percentage";
    case FitnessKind::inverse_percentage: return "inverse_percentage";
    case FitnessKind::overlap: return "overlap";
  }
  return "unknown";
}

std::optional<FitnessKind> parse_fitness_kind(std::string_view name) {
  if (name == "boolean") return FitnessKind::boolean;
  if (name == "percentage") return FitnessKind::percentage;
  if (name == "inverse" || name == "inverse_percentage") return FitnessKind::inverse_percentage;
  if (name == "overlap") return FitnessKind::overlap;
  return std::nullopt;
}

}  // namespace genesim
