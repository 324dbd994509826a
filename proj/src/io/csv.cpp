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

#include "genesim/io/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include "genesim/error.hpp"

namespace genesim::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool blank_record(const std::vector<std::string>& record) {
  return record.size() == 1 && trim(record.front()).empty();
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 0;

  const auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  const auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    ++line;
  };

  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (in_quotes) {
      if (c == '"') {
        if (pos + 1 < text.size() && text[pos + 1] == '"') {
          field += '"';
          ++pos;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field_started && field.empty()) {
          in_quotes = true;
          field_started = true;
        } else {
          field += c;
        }
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field += c;
        break;
    }
  }
  if (in_quotes) {
    throw ValidationError(Issue{"unterminated quoted field", line == 0 ? std::nullopt : std::optional(line - 1), {}});
  }
  if (!field.empty() || field_started || !record.empty()) end_record();
  return records;
}

std::string escape_csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, ptr);
}

RawTable read_table_csv(std::string_view text, const CsvOptions& options) {
  auto records = parse_csv_records(text);
  while (!records.empty() && blank_record(records.back())) records.pop_back();
  if (records.empty()) throw ValidationError("CSV input is empty");

  const auto& header = records.front();
  std::vector<Issue> issues;
  std::optional<std::size_t> name_col;
  std::vector<std::string> column_names;
  std::vector<std::size_t> data_cols;
  std::set<std::string> seen;
  for (std::size_t j = 0; j < header.size(); ++j) {
    std::string name(trim(header[j]));
    if (name.empty()) issues.push_back({"empty column name in header (position " + std::to_string(j + 1) + ")", {}, {}});
    if (!seen.insert(name).second) issues.push_back({"duplicate column name", {}, name});
    if (options.row_name_column && name == *options.row_name_column) {
      name_col = j;
    } else {
      column_names.push_back(name);
      data_cols.push_back(j);
    }
  }
  if (options.row_name_column && !name_col) {
    issues.push_back({"row name column not found in header", {}, *options.row_name_column});
  }
  if (records.size() < 2) issues.push_back({"CSV input has a header but no data rows", {}, {}});
  if (!issues.empty()) throw ValidationError(std::move(issues));

  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> row_names;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::size_t row = r - 1;
    if (rec.size() != header.size()) {
      issues.push_back({"expected " + std::to_string(header.size()) + " fields, found " + std::to_string(rec.size()),
                        row, {}});
      continue;
    }
    if (name_col) row_names.emplace_back(trim(rec[*name_col]));
    std::vector<Cell> cells;
    cells.reserve(data_cols.size());
    for (std::size_t k = 0; k < data_cols.size(); ++k) {
      const std::string_view raw = trim(rec[data_cols[k]]);
      const bool labels_only = options.label_columns.contains(column_names[k]);
      if (raw.empty()) {
        cells.emplace_back(Missing{});
        continue;
      }
      if (!labels_only) {
        if (const auto v = parse_number(raw)) {
          cells.emplace_back(*v);
          continue;
        }
      }
      LabelList labels;
      std::size_t start = 0;
      while (start <= raw.size()) {
        const auto stop = std::min(raw.find(';', start), raw.size());
        const auto token = trim(raw.substr(start, stop - start));
        if (!token.empty()) labels.emplace_back(token);
        start = stop + 1;
      }
      cells.emplace_back(std::move(labels));
    }
    rows.push_back(std::move(cells));
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return RawTable(std::move(column_names), std::move(rows), std::move(row_names));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RawTable read_table_csv_file(const std::filesystem::path& path, const CsvOptions& options) {
  return read_table_csv(read_file(path), options);
}

}  // namespace genesim::io
