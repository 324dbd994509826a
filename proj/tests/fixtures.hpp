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

#ifndef GENESIM_TESTS_FIXTURES_HPP
#define GENESIM_TESTS_FIXTURES_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "genesim/model.hpp"
#include "genesim/table.hpp"

#ifndef GENESIM_TEST_DATA_DIR
#error "GENESIM_TEST_DATA_DIR must be defined"
#endif

namespace fixtures {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(GENESIM_TEST_DATA_DIR) / name;
}

inline genesim::RawTable numeric_table(const std::vector<std::string>& cols,
                                       const std::vector<std::vector<double>>& rows,
                                       const std::vector<std::string>& names = {}) {
  std::vector<std::vector<genesim::Cell>> cells;
  for (const auto& r : rows) cells.emplace_back(r.begin(), r.end());
  return genesim::RawTable(cols, std::move(cells), names);
}

inline std::vector<genesim::FeatureSpec> specs(std::initializer_list<genesim::FitnessKind> kinds) {
  std::vector<genesim::FeatureSpec> out;
  std::size_t j = 0;
  for (const auto k : kinds) out.push_back({j++, k, {}});
  return out;
}

/// Three flights: price, time of transfer, stops.
inline genesim::RawTable flights3() {
  return numeric_table({"price", "time", "stops"}, {{300, 10, 2}, {600, 5, 2}, {1500, 4, 1}}, {"A", "B", "C"});
}

/// Ten flights with luggage allowance and rating added.
inline genesim::RawTable flights10() {
  return numeric_table({"price", "time", "stops", "luggages", "rating"},
                       {{300, 10, 2, 0, 2.5},
                        {600, 5, 2, 1, 3.0},
                        {1500, 4, 1, 2, 4.0},
                        {400, 8, 2, 0, 3.5},
                        {500, 8, 2, 1, 3.0},
                        {700, 5, 2, 1, 4.5},
                        {900, 6, 1, 1, 4.0},
                        {1100, 6, 1, 2, 3.5},
                        {1300, 5, 2, 2, 5.0},
                        {1700, 4, 1, 2, 5.0}},
                       {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J"});
}

inline genesim::Population<double> simple_population() {
  using K = genesim::FitnessKind;
  const auto s = specs({K::inverse_percentage, K::inverse_percentage, K::inverse_percentage});
  return genesim::build_population<double>(flights3(), s);
}

inline genesim::Population<double> real_world_population() {
  using K = genesim::FitnessKind;
  const auto s = specs({K::inverse_percentage, K::inverse_percentage, K::inverse_percentage, K::percentage,
                        K::percentage});
  return genesim::build_population<double>(flights10(), s);
}

inline nlohmann::json golden() {
  std::ifstream in(data_path("golden_first_iteration.json"));
  return nlohmann::json::parse(in);
}

inline genesim::MatrixXd to_matrix(const nlohmann::json& rows) {
  genesim::MatrixXd m(static_cast<genesim::Index>(rows.size()), static_cast<genesim::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<genesim::Index>(i), static_cast<genesim::Index>(j)) = rows[i][j].get<double>();
  return m;
}

inline std::vector<std::vector<double>> to_rows(const genesim::MatrixXd& m) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(m.rows()));
  for (genesim::Index i = 0; i < m.rows(); ++i)
    for (genesim::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(m(i, j));
  return out;
}

}  // namespace fixtures

#endif  // GENESIM_TESTS_FIXTURES_HPP
