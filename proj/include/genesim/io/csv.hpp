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

#ifndef GENESIM_IO_CSV_HPP
#define GENESIM_IO_CSV_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "genesim/table.hpp"

namespace genesim::io {

/// Splits CSV text into records of fields. Double quotes enclose fields that
/// contain separators, quotes (doubled) or line breaks; CRLF is accepted.
/// Throws ValidationError on an unterminated quote.
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text);

/// Quotes a field when it contains ',', '"', CR or LF.
std::string escape_csv_field(std::string_view field);

struct CsvOptions {
  /// Column holding row names; excluded from the data columns.
  std::optional<std::string> row_name_column;
  /// Columns whose cells are always label lists, even when they look numeric.
  std::set<std::string> label_columns;
};

/// Reads the input dialect: header row, '.' decimals, empty cell = missing,
/// ';' separates labels inside a cell. Cells that are not plain decimal
/// numbers become label lists.
RawTable read_table_csv(std::string_view text, const CsvOptions& options = {});
RawTable read_table_csv_file(const std::filesystem::path& path, const CsvOptions& options = {});

/// Reads a whole file; throws ValidationError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Parses a locale-independent decimal number occupying all of `text`.
std::optional<double> parse_number(std::string_view text);

/// `v` with 17 significant digits, as printf("%.17g") in the C locale.
std::string format_number(double v);

}  // namespace genesim::io

#endif  // GENESIM_IO_CSV_HPP
