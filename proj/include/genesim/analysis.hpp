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

#ifndef GENESIM_ANALYSIS_HPP
#define GENESIM_ANALYSIS_HPP

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "genesim/engine.hpp"
#include "genesim/model.hpp"
#include "genesim/strategies.hpp"
#include "genesim/types.hpp"

namespace genesim {

template <typename Scalar = double>
struct RankEntry {
  Index row = 0;
  std::string name;
  Scalar fitness = 0;
  std::size_t rank = 0;
};

/// Organisms sorted by fitness, best first.
template <typename Scalar = double>
struct Ranking {
  std::vector<RankEntry<Scalar>> entries;
  std::size_t iteration = 0;

  const RankEntry<Scalar>& best() const { return entries.front(); }
};

/// Sorts descending by fitness; equal fitness keeps input order and shares
/// the smaller rank number (1, 1, 3, ...).
template <typename Derived>
auto rank(const Eigen::MatrixBase<Derived>& r, const std::vector<std::string>& names, std::size_t iteration = 0) {
  using Scalar = typename Derived::Scalar;
  if (!names.empty() && static_cast<Index>(names.size()) != r.size()) {
    throw DimensionError("name count does not match fitness vector");
  }
  std::vector<Index> order(static_cast<std::size_t>(r.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return r(a) > r(b); });

  Ranking<Scalar> out;
  out.iteration = iteration;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const Index i = order[pos];
    RankEntry<Scalar> e{i, names.empty() ? "row" + std::to_string(i + 1) : names[static_cast<std::size_t>(i)], r(i),
                        pos + 1};
    if (pos > 0 && out.entries.back().fitness == e.fitness) e.rank = out.entries.back().rank;
    out.entries.push_back(std::move(e));
  }
  return out;
}

template <typename Scalar = double>
struct GeneSummary {
  std::string name;
  Scalar gamma = 0;
  Scalar velocity = 0;
};

/// Condensed outcome of a simulation, plus static diagnostics of the
/// population at the final snapshot.
template <typename Scalar = double>
struct EseReport {
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<GeneSummary<Scalar>> genes;
  Ranking<Scalar> ranking;
  Vector<Scalar> final_r;
  std::array<Scalar, 2> alpha_gene{};
  std::array<Scalar, 2> alpha_organism{};
  Index top_gene = 0;
  Index bottom_gene = 0;
  /// gamma^(K) - gamma^(K-1); zero when the trace holds only record 0.
  Vector<Scalar> velocity;
  std::size_t clamp_events = 0;

  KinshipMatrix<Scalar> gene_kinship;
  KinshipMatrix<Scalar> organism_kinship;
  Scalar rho = 1;
  StrategyDiagnostics<Scalar> diagnostics;
};

/// Pure function of the trace and the population it was produced from.
template <typename Scalar>
EseReport<Scalar> summarize(const Trace<Scalar>& trace, const Population<Scalar>& pop) {
  if (trace.records.empty()) throw std::invalid_argument("cannot summarize an empty trace");
  const auto& last = trace.final();
  if (last.gamma.size() != pop.cols() || last.r.size() != pop.rows()) {
    throw DimensionError("trace does not match population shape");
  }

  EseReport<Scalar> rep;
  rep.converged = trace.converged();
  rep.iterations = trace.iterations();
  rep.final_r = last.r;
  rep.alpha_gene = last.alpha_gene;
  rep.alpha_organism = last.alpha_organism;
  rep.velocity = trace.records.size() >= 2 ? Vector<Scalar>(last.gamma - trace.records[trace.records.size() - 2].gamma)
                                           : Vector<Scalar>::Zero(last.gamma.size());
  for (const auto& rec : trace.records) rep.clamp_events += rec.clamps.size();

  const auto& names = trace.gene_names.empty() ? pop.gene_names() : trace.gene_names;
  for (Index j = 0; j < last.gamma.size(); ++j) {
    rep.genes.push_back({names[static_cast<std::size_t>(j)], last.gamma(j), rep.velocity(j)});
    if (last.gamma(j) > last.gamma(rep.top_gene)) rep.top_gene = j;
    if (last.gamma(j) < last.gamma(rep.bottom_gene)) rep.bottom_gene = j;
  }
  rep.ranking = rank(last.r, trace.organism_names.empty() ? pop.organism_names() : trace.organism_names,
                     trace.iterations());

  rep.gene_kinship = kinship(pop, Axis::gene);
  rep.organism_kinship = kinship(pop, Axis::organism);
  rep.rho = initial_fitness_range(trace.initial().r).rho;
  rep.diagnostics = sign_scenarios(pop, last.gamma, last.r, rep.gene_kinship, rep.organism_kinship, rep.rho);
  return rep;
}

}  // namespace genesim

#endif  // GENESIM_ANALYSIS_HPP
