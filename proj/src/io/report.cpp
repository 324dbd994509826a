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

#include "genesim/io/report.hpp"

namespace genesim::io {

using nlohmann::json;

json to_json(const Matrix<double>& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const SignMatrix& signs) {
  json rows = json::array();
  for (const auto& r : signs) {
    json row = json::array();
    for (const auto& p : r) row.push_back(to_string(p));
    rows.push_back(std::move(row));
  }
  return rows;
}

json summary_json(const EseReport<double>& report, const Population<double>& pop, const SummaryContext& context) {
  json genes = json::array();
  for (const auto& g : report.genes) {
    genes.push_back({
        {"name", g.name},
        {"gamma_final", g.gamma},
        {"velocity", g.velocity},
        {"gamma_series_ref",
         context.trace_ref ? json(*context.trace_ref + "#kind=gamma&name=" + g.name) : json(nullptr)},
    });
  }
  json organisms = json::array();
  for (const auto& e : report.ranking.entries) {
    organisms.push_back({{"name", e.name}, {"r_final", e.fitness}, {"rank", e.rank}});
  }

  json warnings = json::array();
  if (!report.converged) {
    warnings.push_back("did not converge within " + std::to_string(report.iterations) + " iterations");
  }
  if (report.clamp_events > 0) {
    warnings.push_back("accumulated delta clamped " + std::to_string(report.clamp_events) + " time(s)");
  }
  const auto missing = (!pop.present().array()).count();
  if (missing > 0) warnings.push_back(std::to_string(missing) + " missing cell(s) contribute no resources");
  if (pop.cols() == 1) warnings.push_back("single gene: gene fitness is fixed at 1");

  return {
      {"meta",
       {{"tool", "genesim"},
        {"format_version", 1},
        {"organisms", pop.rows()},
        {"genes", pop.cols()},
        {"mode", context.mode}}},
      {"config_echo", context.config_echo},
      {"converged", report.converged},
      {"iterations", report.iterations},
      {"genes", std::move(genes)},
      {"organisms", std::move(organisms)},
      {"alphas",
       {{"gene", {{"dominant", report.alpha_gene[0]}, {"altruistic", report.alpha_gene[1]}}},
        {"organism", {{"balanced", report.alpha_organism[0]}, {"selfish", report.alpha_organism[1]}}}}},
      {"top_gene", report.genes.at(static_cast<std::size_t>(report.top_gene)).name},
      {"bottom_gene", report.genes.at(static_cast<std::size_t>(report.bottom_gene)).name},
      {"warnings", std::move(warnings)},
      {"attachments",
       {{"gene_kinship", to_json(report.gene_kinship.values)},
        {"organism_kinship", to_json(report.organism_kinship.values)},
        {"rho", report.rho},
        {"contribution_shares", to_json(report.diagnostics.mu)},
        {"gene_signs", to_json(report.diagnostics.gene_signs)},
        {"organism_signs", to_json(report.diagnostics.organism_signs)}}},
  };
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace genesim::io
