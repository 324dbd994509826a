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

#ifndef GENESIM_TABLE_HPP
#define GENESIM_TABLE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace genesim {

struct Missing {
  bool operator==(const Missing&) const = default;
};

using LabelList = std::vector<std::string>;

/// A raw data element: a non-negative number, a list of labels, or nothing.
using Cell = std::variant<double, LabelList, Missing>;

inline bool is_missing(const Cell& c) { return std::holds_alternative<Missing>(c); }
inline bool is_number(const Cell& c) { return std::holds_alternative<double>(c); }
inline bool is_labels(const Cell& c) { return std::holds_alternative<LabelList>(c); }

/// The raw input matrix: n rows of m cells each, with column names and
/// optional row names.
class RawTable {
 public:
  /// Throws ValidationError when rows are ragged, the table is empty, or a
  /// numeric cell is negative or non-finite.
  RawTable(std::vector<std::string> column_names,
           std::vector<std::vector<Cell>> rows,
           std::vector<std::string> row_names = {});

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return column_names_.size(); }

  const Cell& at(std::size_t row, std::size_t col) const { return rows_.at(row).at(col); }
  std::vector<Cell> column(std::size_t col) const;

  const std::vector<std::string>& column_names() const noexcept { return column_names_; }
  /// Row names; defaults to "row1".."rowN" when none were given.
  const std::vector<std::string>& row_names() const noexcept { return row_names_; }

  std::optional<std::size_t> find_column(std::string_view name) const;

 private:
  std::vector<std::string> column_names_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::string> row_names_;
};

enum class FitnessKind { boolean, percentage, inverse_percentage, overlap };

std::string_view to_string(FitnessKind kind);
/// Accepts the canonical names plus "inverse" as shorthand.
std::optional<FitnessKind> parse_fitness_kind(std::string_view name);

/// How one column's raw cells are mapped to gene-variant fitness.
struct FeatureSpec {
  std::size_t column = 0;
  FitnessKind kind = FitnessKind::percentage;
  std::vector<std::string> target_labels;  // overlap only
};

}  // namespace genesim

#endif  // GENESIM_TABLE_HPP
