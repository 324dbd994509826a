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

#ifndef GENESIM_ENGINE_HPP
#define GENESIM_ENGINE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "genesim/error.hpp"
#include "genesim/model.hpp"
#include "genesim/strategies.hpp"
#include "genesim/types.hpp"

namespace genesim {

/// Normalized gene fitness gamma at iteration k.
template <typename Scalar = double>
struct GeneFitnessState {
  Vector<Scalar> gamma;
  std::size_t iteration = 0;
};

enum class ClampPolicy { on, off };

/// How the absolute effect of a gene strategy is scaled. `mean` is the plain
/// mean of |Delta_ij|; `per_equation` multiplies it by m.
enum class GeneEffectScale { mean, per_equation };

enum class TerminalStatus { converged, max_iterations };

std::string_view to_string(TerminalStatus s);

inline constexpr double kClampLower = -1.0 + 1e-6;
inline constexpr double kClampUpper = 1.0;

struct SimConfig {
  std::optional<VectorXd> initial_gamma;  // uniform when unset
  double epsilon = 1e-8;                  // on the L-infinity norm of the step
  std::size_t max_iterations = 500;
  StrategyMix mix = StrategyMix::dom_bal();
  ClampPolicy clamp_policy = ClampPolicy::on;
  GeneEffectScale gene_effect_scale = GeneEffectScale::mean;
  SelfishNormalization selfish_normalization = SelfishNormalization::organism_fitness;
  /// Strategy kernels of one iteration run on up to this many threads.
  /// Results do not depend on it.
  unsigned workers = 1;

  /// Throws ValidationError for a config that cannot drive a population
  /// with `genes` columns.
  void validate(Index genes) const;
};

struct ClampEvent {
  Index gene = 0;
  double raw = 0;
  double clamped = 0;
};

template <typename Scalar = double>
struct TraceRecord {
  std::size_t k = 0;
  Vector<Scalar> gamma;
  Vector<Scalar> r;
  std::array<Scalar, 2> alpha_gene{};      // dominant, altruistic
  std::array<Scalar, 2> alpha_organism{};  // balanced, selfish
  /// Absolute strategy effects evaluated on the snapshot of record k-1.
  /// Empty for record 0.
  std::map<Strategy, Scalar> delta_bar;
  /// Accumulated Delta_j that produced this record. Empty for record 0.
  Vector<Scalar> accumulated;
  std::vector<ClampEvent> clamps;
};

template <typename Scalar = double>
struct Trace {
  std::vector<TraceRecord<Scalar>> records;
  TerminalStatus status = TerminalStatus::max_iterations;
  MixMode mode = MixMode::fixed;
  double epsilon = 1e-8;
  std::vector<std::string> gene_names;
  std::vector<std::string> organism_names;

  const TraceRecord<Scalar>& initial() const { return records.front(); }
  const TraceRecord<Scalar>& final() const { return records.back(); }
  std::size_t iterations() const { return records.empty() ? 0 : records.size() - 1; }
  bool converged() const { return status == TerminalStatus::converged; }
};

/// True when the step from `prev` to `next` is below epsilon in every
/// tracked quantity: gamma always, the mixing weights in self-consistent mode.
template <typename Scalar>
bool step_converged(const TraceRecord<Scalar>& prev, const TraceRecord<Scalar>& next, double epsilon, MixMode mode) {
  Scalar change = (next.gamma - prev.gamma).cwiseAbs().maxCoeff();
  if (mode == MixMode::self_consistent) {
    for (std::size_t s = 0; s < 2; ++s) {
      change = std::max({change, std::abs(next.alpha_gene[s] - prev.alpha_gene[s]),
                         std::abs(next.alpha_organism[s] - prev.alpha_organism[s])});
    }
  }
  return change < static_cast<Scalar>(epsilon);
}

/// Terminal status implied by the last step of a trace.
template <typename Scalar>
TerminalStatus infer_status(const Trace<Scalar>& trace) {
  const auto& r = trace.records;
  if (r.size() >= 2 && step_converged(r[r.size() - 2], r.back(), trace.epsilon, trace.mode)) {
    return TerminalStatus::converged;
  }
  return TerminalStatus::max_iterations;
}

/// Delta_j = sum_i (Delta^g_ij + Delta^w_ij), optionally clamped to
/// [kClampLower, kClampUpper]; each clamp is appended to `events`.
template <typename Scalar>
Vector<Scalar> accumulate(const DeltaMatrix<Scalar>& gene, const DeltaMatrix<Scalar>& organism,
                          ClampPolicy policy = ClampPolicy::on, std::vector<ClampEvent>* events = nullptr) {
  if (gene.values.rows() != organism.values.rows() || gene.values.cols() != organism.values.cols()) {
    throw DimensionError("gene and organism deltas differ in shape");
  }
  if (!gene.values.allFinite() || !organism.values.allFinite()) {
    throw std::domain_error("non-finite strategy contribution");
  }
  const Index n = gene.values.rows();
  const Index m = gene.values.cols();
  Vector<Scalar> total(m);
  for (Index j = 0; j < m; ++j) {
    Scalar acc = 0;
    for (Index i = 0; i < n; ++i) acc += gene.values(i, j) + organism.values(i, j);
    total(j) = acc;
  }
  if (policy == ClampPolicy::on) {
    for (Index j = 0; j < m; ++j) {
      const Scalar c = std::clamp(total(j), static_cast<Scalar>(kClampLower), static_cast<Scalar>(kClampUpper));
      if (c != total(j)) {
        if (events) events->push_back({j, static_cast<double>(total(j)), static_cast<double>(c)});
        total(j) = c;
      }
    }
  }
  return total;
}

namespace detail {

/// Multiplicative update w_s (1 + d_s) followed by renormalization.
template <typename Scalar, typename DerivedW, typename DerivedD>
Vector<Scalar> replicate(const Eigen::MatrixBase<DerivedW>& w, const Eigen::MatrixBase<DerivedD>& d) {
  if (w.size() != d.size()) throw DimensionError("weight and delta lengths differ");
  const Vector<Scalar> grown = w.cwiseProduct((Vector<Scalar>::Ones(w.size()) + d).eval());
  if ((grown.array() < 0).any()) throw std::domain_error("replicator update produced a negative weight");
  Scalar total = 0;
  for (Index k = 0; k < grown.size(); ++k) total += grown(k);
  if (!(total > 0)) throw std::domain_error("replicator update has zero total");
  return grown / total;
}

}  // namespace detail

/// Replicator update of the gene fitness.
template <typename Scalar, typename Derived>
GeneFitnessState<Scalar> replicator_step(const GeneFitnessState<Scalar>& state, const Eigen::MatrixBase<Derived>& delta) {
  if (!delta.allFinite()) throw std::domain_error("non-finite accumulated delta");
  return {detail::replicate<Scalar>(state.gamma, delta), state.iteration + 1};
}

/// Absolute effect of one strategy on the current snapshot.
template <typename Scalar, typename Derived>
Scalar strategy_effect(const DeltaMatrix<Scalar>& delta, const Eigen::MatrixBase<Derived>& gamma, Axis axis,
                       GeneEffectScale scale = GeneEffectScale::mean) {
  const Matrix<Scalar>& d = delta.values;
  if (d.size() == 0) return 0;
  if (axis == Axis::organism) {
    if (gamma.size() != d.cols()) throw DimensionError("gamma length does not match delta columns");
    return (d.cwiseAbs() * gamma).sum() / static_cast<Scalar>(d.rows());
  }
  Scalar e = d.cwiseAbs().sum() / static_cast<Scalar>(d.size());
  if (scale == GeneEffectScale::per_equation) e *= static_cast<Scalar>(d.cols());
  return e;
}

/// Replicator update of one set of mixing weights from their effects.
template <typename Scalar, std::size_t N>
std::array<Scalar, N> alpha_replicator_step(const std::array<Scalar, N>& alpha,
                                            const std::array<Scalar, N>& delta_bar) {
  const Eigen::Map<const Vector<Scalar>> a(alpha.data(), static_cast<Index>(N));
  const Eigen::Map<const Vector<Scalar>> d(delta_bar.data(), static_cast<Index>(N));
  const Vector<Scalar> next = detail::replicate<Scalar>(a, d);
  std::array<Scalar, N> out{};
  for (std::size_t s = 0; s < N; ++s) out[s] = next(static_cast<Index>(s));
  return out;
}

/// The four strategy matrices evaluated on one (gamma, r) snapshot.
template <typename Scalar = double>
struct StrategySet {
  DeltaMatrix<Scalar> dominant;
  DeltaMatrix<Scalar> altruistic;
  DeltaMatrix<Scalar> balanced;
  DeltaMatrix<Scalar> selfish;

  std::map<Strategy, DeltaMatrix<Scalar>> gene() const {
    return {{Strategy::gs_dominant, dominant}, {Strategy::gs_altruistic, altruistic}};
  }
  std::map<Strategy, DeltaMatrix<Scalar>> organism() const {
    return {{Strategy::os_balanced, balanced}, {Strategy::os_selfish, selfish}};
  }
};

/// Iterates the replicator dynamics on a fixed population. Static
/// quantities (kinships, rho) are computed once at construction.
template <typename Scalar = double>
class Simulation {
 public:
  Simulation(const Population<Scalar>& pop, SimConfig config)
      : pop_(pop),
        config_(std::move(config)),
        gene_kinship_(kinship(pop, Axis::gene)),
        organism_kinship_(kinship(pop, Axis::organism)) {
    config_.validate(pop.cols());
    initial_gamma_ = config_.initial_gamma
                         ? Vector<Scalar>(config_.initial_gamma->template cast<Scalar>())
                         : Vector<Scalar>::Constant(pop.cols(), Scalar(1) / static_cast<Scalar>(pop.cols()));
    rho_ = initial_fitness_range(organism_fitness(pop_, initial_gamma_)).rho;
  }

  const SimConfig& config() const noexcept { return config_; }
  const KinshipMatrix<Scalar>& gene_kinship() const noexcept { return gene_kinship_; }
  const KinshipMatrix<Scalar>& organism_kinship() const noexcept { return organism_kinship_; }
  Scalar rho() const noexcept { return rho_; }

  TraceRecord<Scalar> initial_record() const {
    TraceRecord<Scalar> rec;
    rec.gamma = initial_gamma_;
    rec.r = organism_fitness(pop_, initial_gamma_);
    rec.alpha_gene = {static_cast<Scalar>(config_.mix.dominant), static_cast<Scalar>(config_.mix.altruistic)};
    rec.alpha_organism = {static_cast<Scalar>(config_.mix.balanced), static_cast<Scalar>(config_.mix.selfish)};
    return rec;
  }

  /// All strategies on the snapshot; every kernel sees the same inputs.
  StrategySet<Scalar> evaluate(const Vector<Scalar>& gamma, const Vector<Scalar>& r) const {
    const auto gene_side = [&] {
      return std::pair{gs_dominant(pop_, gamma), gs_altruistic(pop_, gamma, gene_kinship_)};
    };
    const auto organism_side = [&] {
      auto balanced = os_balanced(pop_, gamma, r);
      auto selfish = os_selfish(pop_, r, organism_kinship_, rho_, balanced, config_.selfish_normalization);
      return std::pair{std::move(balanced), std::move(selfish)};
    };
    if (config_.workers > 1) {
      auto organism_future = std::async(std::launch::async, organism_side);
      auto [dom, alt] = gene_side();
      auto [bal, sel] = organism_future.get();
      return {std::move(dom), std::move(alt), std::move(bal), std::move(sel)};
    }
    auto [dom, alt] = gene_side();
    auto [bal, sel] = organism_side();
    return {std::move(dom), std::move(alt), std::move(bal), std::move(sel)};
  }

  /// One iteration from `prev`: evaluate, mix with prev's alphas, update
  /// gamma, then (self-consistent mode) advance the alphas.
  TraceRecord<Scalar> advance(const TraceRecord<Scalar>& prev) const {
    const StrategySet<Scalar> set = evaluate(prev.gamma, prev.r);

    TraceRecord<Scalar> next;
    next.k = prev.k + 1;
    next.delta_bar = {
        {Strategy::gs_dominant, strategy_effect(set.dominant, prev.gamma, Axis::gene, config_.gene_effect_scale)},
        {Strategy::gs_altruistic, strategy_effect(set.altruistic, prev.gamma, Axis::gene, config_.gene_effect_scale)},
        {Strategy::os_balanced, strategy_effect(set.balanced, prev.gamma, Axis::organism)},
        {Strategy::os_selfish, strategy_effect(set.selfish, prev.gamma, Axis::organism)},
    };

    StrategyMix weights = config_.mix;
    weights.dominant = static_cast<double>(prev.alpha_gene[0]);
    weights.altruistic = static_cast<double>(prev.alpha_gene[1]);
    weights.balanced = static_cast<double>(prev.alpha_organism[0]);
    weights.selfish = static_cast<double>(prev.alpha_organism[1]);
    const auto [gene_mix, organism_mix] = mix(set.gene(), set.organism(), weights);

    next.accumulated = accumulate(gene_mix, organism_mix, config_.clamp_policy, &next.clamps);
    next.gamma = replicator_step(GeneFitnessState<Scalar>{prev.gamma, prev.k}, next.accumulated).gamma;
    next.r = organism_fitness(pop_, next.gamma);

    if (config_.mix.mode == MixMode::self_consistent) {
      next.alpha_gene = alpha_replicator_step(
          prev.alpha_gene, {next.delta_bar[Strategy::gs_dominant], next.delta_bar[Strategy::gs_altruistic]});
      next.alpha_organism = alpha_replicator_step(
          prev.alpha_organism, {next.delta_bar[Strategy::os_balanced], next.delta_bar[Strategy::os_selfish]});
    } else {
      next.alpha_gene = prev.alpha_gene;
      next.alpha_organism = prev.alpha_organism;
    }
    return next;
  }

  Trace<Scalar> run() const {
    Trace<Scalar> trace;
    trace.mode = config_.mix.mode;
    trace.epsilon = config_.epsilon;
    trace.gene_names = pop_.gene_names();
    trace.organism_names = pop_.organism_names();
    trace.records.push_back(initial_record());
    while (trace.records.size() <= config_.max_iterations) {
      trace.records.push_back(advance(trace.records.back()));
      const auto& r = trace.records;
      if (step_converged(r[r.size() - 2], r.back(), config_.epsilon, config_.mix.mode)) {
        trace.status = TerminalStatus::converged;
        break;
      }
    }
    return trace;
  }

 private:
  Population<Scalar> pop_;
  SimConfig config_;
  KinshipMatrix<Scalar> gene_kinship_;
  KinshipMatrix<Scalar> organism_kinship_;
  Vector<Scalar> initial_gamma_;
  Scalar rho_ = 1;
};

/// Runs the simulation with the mixing mode given in `config`.
template <typename Scalar>
Trace<Scalar> simulate(const Population<Scalar>& pop, const SimConfig& config) {
  return Simulation<Scalar>(pop, config).run();
}

/// Runs with self-consistent mixing; the weights in `config.mix` are the
/// starting alphas.
template <typename Scalar>
Trace<Scalar> simulate_self_consistent(const Population<Scalar>& pop, SimConfig config) {
  config.mix.mode = MixMode::self_consistent;
  return Simulation<Scalar>(pop, std::move(config)).run();
}

}  // namespace genesim

#endif  // GENESIM_ENGINE_HPP
