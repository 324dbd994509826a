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

#ifndef GENESIM_IO_REPORT_HPP
#define GENESIM_IO_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "genesim/analysis.hpp"
#include "genesim/model.hpp"

namespace genesim::io {

nlohmann::json to_json(const Matrix<double>& m);
nlohmann::json to_json(const SignMatrix& signs);

struct SummaryContext {
  nlohmann::json config_echo = nlohmann::json::object();
  /// File name of the trace CSV; genes then reference their series in it.
  std::optional<std::string> trace_ref;
  std::string mode = "fixed";
};

/// Summary document: meta, config_echo, converged, iterations, genes,
/// organisms (in rank order), alphas, warnings, plus attachments with the
/// kinship matrices and final sign scenarios.
nlohmann::json summary_json(const EseReport<double>& report, const Population<double>& pop,
                            const SummaryContext& context);

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const nlohmann::json& doc);

}  // namespace genesim::io

#endif  // GENESIM_IO_REPORT_HPP
