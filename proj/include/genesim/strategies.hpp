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

#ifndef GENESIM_STRATEGIES_HPP
#define GENESIM_STRATEGIES_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "genesim/error.hpp"
#include "genesim/model.hpp"
#include "genesim/types.hpp"

namespace genesim {

enum class Strategy { gs_dominant, gs_altruistic, os_balanced, os_selfish, mixed_gene, mixed_organism };

std::string_view to_string(Strategy s);
/// Short name used in reports and trace files: dominant, altruistic, ...
std::string_view short_name(Strategy s);

/// Per-cell resource change Delta_ij of one strategy, n x m.
template <typename Scalar = double>
struct DeltaMatrix {
  Strategy strategy = Strategy::gs_dominant;
  Matrix<Scalar> values;

  /// Column totals: the contribution of all organisms to each gene.
  Vector<Scalar> column_sums() const { return values.colwise().sum().transpose(); }
};

enum class MixMode { fixed, self_consistent };

/// Convex weights for the gene pair (dominant, altruistic) and the organism
/// pair (balanced, selfish).
struct StrategyMix {
  double dominant = 1.0;
  double altruistic = 0.0;
  double balanced = 1.0;
  double selfish = 0.0;
  MixMode mode = MixMode::fixed;

  static StrategyMix dom_bal() { return {1.0, 0.0, 1.0, 0.0, MixMode::fixed}; }
  static StrategyMix alt_sel() { return {0.0, 1.0, 0.0, 1.0, MixMode::fixed}; }
  static StrategyMix self_consistent() { return {0.5, 0.5, 0.5, 0.5, MixMode::self_consistent}; }

  std::map<Strategy, double> gene_weights() const {
    return {{Strategy::gs_dominant, dominant}, {Strategy::gs_altruistic, altruistic}};
  }
  std::map<Strategy, double> organism_weights() const {
    return {{Strategy::os_balanced, balanced}, {Strategy::os_selfish, selfish}};
  }

  /// Throws ValidationError listing every violated weight rule.
  void validate() const;
};

/// How the selfish contribution is normalized by the organism fitness.
/// `organism_fitness` divides by r_i and reproduces the published worked
/// numbers; `per_equation` divides by 2 r_i as the formula is typeset.
enum class SelfishNormalization { organism_fitness, per_equation };

inline constexpr double kWeightSumTolerance = 1e-12;

namespace detail {

template <typename Scalar>
void zero_absent(Matrix<Scalar>& m, const Population<Scalar>& pop) {
  m = pop.present().select(m, Matrix<Scalar>::Zero(m.rows(), m.cols()));
}

template <typename Scalar, typename Derived>
void check_gamma(const Population<Scalar>& pop, const Eigen::MatrixBase<Derived>& gamma) {
  if (gamma.size() != pop.cols()) throw DimensionError("gamma length does not match gene count");
}

template <typename Scalar, typename Derived>
void check_organism_vector(const Population<Scalar>& pop, const Eigen::MatrixBase<Derived>& r) {
  if (r.size() != pop.rows()) throw DimensionError("organism vector length does not match row count");
}

template <typename Scalar>
void check_shape(const Population<Scalar>& pop, const Matrix<Scalar>& m) {
  if (m.rows() != pop.rows() || m.cols() != pop.cols()) throw DimensionError("delta matrix shape mismatch");
}

}  // namespace detail

/// GS-Dominant: Delta_ij = (4 gamma_j^2 / n) (phi_ij - 1/2).
template <typename Scalar, typename Derived>
DeltaMatrix<Scalar> gs_dominant(const Population<Scalar>& pop, const Eigen::MatrixBase<Derived>& gamma) {
  detail::check_gamma(pop, gamma);
  const auto n = static_cast<Scalar>(pop.rows());
  const Vector<Scalar> prefactor = (Scalar(4) / n) * gamma.array().square().matrix();
  Matrix<Scalar> d = (pop.values().array() - Scalar(0.5)).matrix() * prefactor.asDiagonal();
  detail::zero_absent(d, pop);
  return {Strategy::gs_dominant, std::move(d)};
}

/// Contribution shares mu_ij = gamma_j phi_ij / r_i. Rows with r_i = 0 are 0.
template <typename Scalar, typename DerivedG, typename DerivedR>
Matrix<Scalar> contribution_shares(const Population<Scalar>& pop, const Eigen::MatrixBase<DerivedG>& gamma,
                                   const Eigen::MatrixBase<DerivedR>& r) {
  detail::check_gamma(pop, gamma);
  detail::check_organism_vector(pop, r);
  Matrix<Scalar> mu = pop.values() * gamma.asDiagonal();
  for (Index i = 0; i < mu.rows(); ++i) {
    if (r(i) > 0) {
      mu.row(i) /= r(i);
    } else {
      mu.row(i).setZero();
    }
  }
  return mu;
}

/// OS-Balanced: Delta_ij = -(2 r_i / n)(mu_ij - 1/m). Rows with r_i = 0
/// contribute nothing.
template <typename Scalar, typename DerivedG, typename DerivedR>
DeltaMatrix<Scalar> os_balanced(const Population<Scalar>& pop, const Eigen::MatrixBase<DerivedG>& gamma,
                                const Eigen::MatrixBase<DerivedR>& r) {
  const Matrix<Scalar> mu = contribution_shares(pop, gamma, r);
  const auto n = static_cast<Scalar>(pop.rows());
  const Scalar inv_m = Scalar(1) / static_cast<Scalar>(pop.cols());
  Matrix<Scalar> d(pop.rows(), pop.cols());
  for (Index i = 0; i < d.rows(); ++i) {
    if (r(i) > 0) {
      d.row(i) = (-Scalar(2) * r(i) / n) * (mu.row(i).array() - inv_m).matrix();
    } else {
      d.row(i).setZero();
    }
  }
  detail::zero_absent(d, pop);
  return {Strategy::os_balanced, std::move(d)};
}

/// Kinship-weighted relative advantage of the other genes in the same
/// organism: (4/m) sum_{l != j} gamma_l kappa_jl (phi_il - phi_ij).
template <typename Scalar, typename Derived>
Matrix<Scalar> altruistic_transfer(const Population<Scalar>& pop, const Eigen::MatrixBase<Derived>& gamma,
                                   const KinshipMatrix<Scalar>& gene_kinship) {
  detail::check_gamma(pop, gamma);
  const Index m = pop.cols();
  if (gene_kinship.values.rows() != m || gene_kinship.values.cols() != m) {
    throw DimensionError("gene kinship must be m x m");
  }
  const Matrix<Scalar>& phi = pop.values();
  // w_jl = gamma_l kappa_jl for l != j.
  Matrix<Scalar> w = gene_kinship.values * gamma.asDiagonal();
  w.diagonal().setZero();
  const Vector<Scalar> w_total = w.rowwise().sum();
  // sum_l w_jl (phi_il - phi_ij) = (phi w^T)_ij - phi_ij * w_total_j
  Matrix<Scalar> t = phi * w.transpose() - phi * w_total.asDiagonal();
  return (Scalar(4) / static_cast<Scalar>(m)) * t;
}

/// GS-Altruistic: Delta_ij = Delta^dom_ij * transfer_ij / gamma_j, evaluated
/// as (4 gamma_j / n)(phi_ij - 1/2) transfer_ij so gamma_j = 0 yields 0.
template <typename Scalar, typename Derived>
DeltaMatrix<Scalar> gs_altruistic(const Population<Scalar>& pop, const Eigen::MatrixBase<Derived>& gamma,
                                  const KinshipMatrix<Scalar>& gene_kinship) {
  const Matrix<Scalar> transfer = altruistic_transfer(pop, gamma, gene_kinship);
  const auto n = static_cast<Scalar>(pop.rows());
  const Vector<Scalar> prefactor = (Scalar(4) / n) * gamma;
  Matrix<Scalar> d =
      ((pop.values().array() - Scalar(0.5)) * transfer.array()).matrix() * prefactor.asDiagonal();
  detail::zero_absent(d, pop);
  return {Strategy::gs_altruistic, std::move(d)};
}

/// Per-organism selfish pressure (1/n) sum_{t != i} kappa_it (r_i - r_t) / rho.
template <typename Scalar, typename Derived>
Vector<Scalar> selfish_pressure(const Eigen::MatrixBase<Derived>& r, const KinshipMatrix<Scalar>& organism_kinship,
                                Scalar rho) {
  const Index n = r.size();
  if (organism_kinship.values.rows() != n || organism_kinship.values.cols() != n) {
    throw DimensionError("organism kinship must be n x n");
  }
  Vector<Scalar> p(n);
  for (Index i = 0; i < n; ++i) {
    Scalar acc = 0;
    for (Index t = 0; t < n; ++t) {
      if (t != i) acc += organism_kinship.values(i, t) * (r(i) - r(t));
    }
    p(i) = acc / (static_cast<Scalar>(n) * rho);
  }
  return p;
}

/// OS-Selfish: Delta_ij = Delta^bal_ij * pressure_i / (c r_i), with c = 1
/// or 2 depending on the normalization. Rows with r_i = 0 are 0.
template <typename Scalar, typename Derived>
DeltaMatrix<Scalar> os_selfish(const Population<Scalar>& pop, const Eigen::MatrixBase<Derived>& r,
                               const KinshipMatrix<Scalar>& organism_kinship, Scalar rho,
                               const DeltaMatrix<Scalar>& balanced,
                               SelfishNormalization norm = SelfishNormalization::organism_fitness) {
  detail::check_organism_vector(pop, r);
  detail::check_shape(pop, balanced.values);
  if (!(rho > 0)) throw std::invalid_argument("rho must be positive");
  const Vector<Scalar> pressure = selfish_pressure(r, organism_kinship, rho);
  const Scalar c = norm == SelfishNormalization::per_equation ? Scalar(2) : Scalar(1);
  Matrix<Scalar> d(pop.rows(), pop.cols());
  for (Index i = 0; i < d.rows(); ++i) {
    if (r(i) > 0) {
      d.row(i) = balanced.values.row(i) * (pressure(i) / (c * r(i)));
    } else {
      d.row(i).setZero();
    }
  }
  detail::zero_absent(d, pop);
  return {Strategy::os_selfish, std::move(d)};
}

/// Weighted sum of strategy matrices. Weights must be non-negative, sum to
/// 1 within kWeightSumTolerance, and name strategies present in `deltas`.
/// Zero weights may refer to strategies that were not evaluated.
template <typename Scalar>
DeltaMatrix<Scalar> combine(const std::map<Strategy, DeltaMatrix<Scalar>>& deltas,
                            const std::map<Strategy, double>& weights, Strategy label, std::string_view what) {
  std::vector<Issue> issues;
  double total = 0;
  for (const auto& [s, w] : weights) {
    if (!(w >= 0)) issues.push_back({std::string(what) + " alphas must be non-negative", {}, {}});
    total += w;
  }
  if (!(std::abs(total - 1.0) <= kWeightSumTolerance)) {
    issues.push_back({std::string(what) + " alphas must sum to 1", {}, {}});
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  Matrix<Scalar> out;
  for (const auto& [s, w] : weights) {
    const auto it = deltas.find(s);
    if (it == deltas.end()) {
      if (w == 0) continue;
      throw std::invalid_argument("no delta matrix for strategy " + std::string(to_string(s)));
    }
    if (out.size() == 0) {
      out = Matrix<Scalar>::Zero(it->second.values.rows(), it->second.values.cols());
    } else if (out.rows() != it->second.values.rows() || out.cols() != it->second.values.cols()) {
      throw DimensionError("delta matrices differ in shape");
    }
    out += static_cast<Scalar>(w) * it->second.values;
  }
  if (out.size() == 0) throw std::invalid_argument("no strategy with non-zero weight");
  return {label, std::move(out)};
}

/// Mixes gene and organism strategies with the weights of `mix`.
template <typename Scalar>
std::pair<DeltaMatrix<Scalar>, DeltaMatrix<Scalar>> mix(const std::map<Strategy, DeltaMatrix<Scalar>>& gene_deltas,
                                                        const std::map<Strategy, DeltaMatrix<Scalar>>& organism_deltas,
                                                        const StrategyMix& weights) {
  return {combine(gene_deltas, weights.gene_weights(), Strategy::mixed_gene, "gene"),
          combine(organism_deltas, weights.organism_weights(), Strategy::mixed_organism, "organism")};
}

/// Sign of one factor plus a magnitude bucket (1 = ordinary, 2 = larger,
/// 3 = much larger). Level is 0 when the sign is 0.
struct SignCode {
  int sign = 0;
  int level = 0;
  bool operator==(const SignCode&) const = default;
};

struct SignPair {
  SignCode first;
  SignCode second;
  bool operator==(const SignPair&) const = default;
};

/// Renders as "(+,--)"; a zero sign renders as "0".
std::string to_string(const SignPair& p);

using SignMatrix = std::vector<std::vector<SignPair>>;

template <typename Scalar = double>
struct StrategyDiagnostics {
  Matrix<Scalar> mu;
  SignMatrix gene_signs;      // (sign Delta^dom, sign altruistic transfer)
  SignMatrix organism_signs;  // (sign Delta^bal, sign selfish pressure)
};

namespace detail {

/// Buckets |x| against the median of the non-zero magnitudes: >= 3x median
/// is level 3, >= 1.5x is level 2.
template <typename Scalar>
std::vector<SignCode> sign_codes(const Matrix<Scalar>& x) {
  std::vector<Scalar> mags;
  for (Index k = 0; k < x.size(); ++k) {
    if (x(k) != 0) mags.push_back(std::abs(x(k)));
  }
  Scalar median = 0;
  if (!mags.empty()) {
    std::sort(mags.begin(), mags.end());
    const std::size_t h = mags.size() / 2;
    median = mags.size() % 2 ? mags[h] : (mags[h - 1] + mags[h]) / 2;
  }
  std::vector<SignCode> out(static_cast<std::size_t>(x.size()));
  for (Index k = 0; k < x.size(); ++k) {
    const Scalar v = x(k);
    if (v == 0) continue;
    const Scalar a = std::abs(v);
    const int level = a >= 3 * median ? 3 : a >= Scalar(1.5) * median ? 2 : 1;
    out[static_cast<std::size_t>(k)] = {v > 0 ? 1 : -1, level};
  }
  return out;
}

template <typename Scalar>
SignMatrix pair_up(const Matrix<Scalar>& first, const Matrix<Scalar>& second) {
  const auto a = sign_codes(first);
  const auto b = sign_codes(second);
  SignMatrix out(static_cast<std::size_t>(first.rows()),
                 std::vector<SignPair>(static_cast<std::size_t>(first.cols())));
  for (Index i = 0; i < first.rows(); ++i) {
    for (Index j = 0; j < first.cols(); ++j) {
      // Eigen storage is column-major.
      const auto k = static_cast<std::size_t>(j * first.rows() + i);
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = {a[k], b[k]};
    }
  }
  return out;
}

}  // namespace detail

/// Sign scenarios of the two composite strategies on one snapshot.
template <typename Scalar, typename DerivedG, typename DerivedR>
StrategyDiagnostics<Scalar> sign_scenarios(const Population<Scalar>& pop, const Eigen::MatrixBase<DerivedG>& gamma,
                                           const Eigen::MatrixBase<DerivedR>& r,
                                           const KinshipMatrix<Scalar>& gene_kinship,
                                           const KinshipMatrix<Scalar>& organism_kinship, Scalar rho) {
  const auto dominant = gs_dominant(pop, gamma);
  Matrix<Scalar> transfer = altruistic_transfer(pop, gamma, gene_kinship);
  detail::zero_absent(transfer, pop);
  const auto balanced = os_balanced(pop, gamma, r);
  const Vector<Scalar> pressure = selfish_pressure(r, organism_kinship, rho);
  Matrix<Scalar> pressure_cells = pressure.replicate(1, pop.cols());
  detail::zero_absent(pressure_cells, pop);
  for (Index i = 0; i < pop.rows(); ++i) {
    if (!(r(i) > 0)) pressure_cells.row(i).setZero();
  }
  return {contribution_shares(pop, gamma, r), detail::pair_up(dominant.values, transfer),
          detail::pair_up(balanced.values, pressure_cells)};
}

}  // namespace genesim

#endif  // GENESIM_STRATEGIES_HPP
