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

#ifndef GENESIM_MODEL_HPP
#define GENESIM_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "genesim/error.hpp"
#include "genesim/table.hpp"
#include "genesim/types.hpp"

namespace genesim {

/// Gene-variant fitness of a single column together with its presence flags.
template <typename Scalar = double>
struct ColumnFitness {
  Vector<Scalar> values;
  std::vector<bool> present;
};

/// Applies one fitness function to a column of raw cells.
///
/// Missing cells get fitness 0 and are flagged non-present. Percentage and
/// inverse percentage normalize by the column maximum over present cells;
/// when that maximum is 0 every present cell is treated as both the best
/// and the worst value (percentage 0, inverse 1). Issues carry the row only;
/// build_population attaches the column.
template <typename Scalar = double>
ColumnFitness<Scalar> variant_fitness(const FeatureSpec& spec, std::span<const Cell> column) {
  const auto n = static_cast<Index>(column.size());
  if (n == 0) throw ValidationError("column is empty");

  ColumnFitness<Scalar> out{Vector<Scalar>::Zero(n), std::vector<bool>(column.size(), false)};
  std::vector<Issue> issues;
  const bool numeric =
      spec.kind == FitnessKind::percentage || spec.kind == FitnessKind::inverse_percentage;

  if (spec.kind == FitnessKind::overlap && spec.target_labels.empty()) {
    throw ValidationError("overlap fitness needs at least one target label");
  }

  std::size_t present_count = 0;
  Scalar column_max = 0;
  for (std::size_t i = 0; i < column.size(); ++i) {
    const Cell& cell = column[i];
    if (is_missing(cell)) continue;
    ++present_count;
    out.present[i] = true;
    if (numeric) {
      if (!is_number(cell)) {
        issues.push_back({"label cell in numeric column", i, {}});
        continue;
      }
      const double v = std::get<double>(cell);
      if (!std::isfinite(v)) {
        issues.push_back({"numeric cell is not finite", i, {}});
      } else if (v < 0.0) {
        issues.push_back({"numeric cell is negative", i, {}});
      } else {
        column_max = std::max(column_max, static_cast<Scalar>(v));
      }
    } else if (spec.kind == FitnessKind::overlap && !is_labels(cell)) {
      issues.push_back({"numeric cell in label column", i, {}});
    }
  }
  if (present_count == 0) issues.push_back({"column has no present cells", {}, {}});
  if (!issues.empty()) throw ValidationError(std::move(issues));

  for (std::size_t i = 0; i < column.size(); ++i) {
    if (!out.present[i]) continue;
    const auto row = static_cast<Index>(i);
    switch (spec.kind) {
      case FitnessKind::boolean:
        out.values(row) = Scalar(1);
        break;
      case FitnessKind::percentage: {
        const auto v = static_cast<Scalar>(std::get<double>(column[i]));
        out.values(row) = column_max > 0 ? v / column_max : Scalar(0);
        break;
      }
      case FitnessKind::inverse_percentage: {
        const auto v = static_cast<Scalar>(std::get<double>(column[i]));
        out.values(row) = column_max > 0 ? Scalar(1) - v / column_max : Scalar(1);
        break;
      }
      case FitnessKind::overlap: {
        const auto& labels = std::get<LabelList>(column[i]);
        std::size_t matched = 0;
        for (const auto& target : spec.target_labels) {
          if (std::find(labels.begin(), labels.end(), target) != labels.end()) ++matched;
        }
        out.values(row) =
            static_cast<Scalar>(matched) / static_cast<Scalar>(spec.target_labels.size());
        break;
      }
    }
  }
  return out;
}

/// The normalized gene-variant fitness matrix. Rows are organisms, columns
/// are genes. Immutable once built.
template <typename Scalar = double>
class Population {
 public:
  /// Checks that present entries lie in [0, 1] and absent entries are 0.
  Population(Matrix<Scalar> values, Mask present, std::vector<std::string> gene_names = {},
             std::vector<std::string> organism_names = {})
      : values_(std::move(values)),
        present_(std::move(present)),
        gene_names_(std::move(gene_names)),
        organism_names_(std::move(organism_names)) {
    if (values_.rows() < 1 || values_.cols() < 1) throw DimensionError("population must be at least 1x1");
    if (present_.rows() != values_.rows() || present_.cols() != values_.cols()) {
      throw DimensionError("presence mask shape does not match values");
    }
    for (Index i = 0; i < values_.rows(); ++i) {
      for (Index j = 0; j < values_.cols(); ++j) {
        const Scalar v = values_(i, j);
        if (present_(i, j) ? !(v >= 0 && v <= 1) : v != 0) {
          throw ValidationError(Issue{"gene-variant fitness out of range",
                                      static_cast<std::size_t>(i), std::to_string(j)});
        }
      }
    }
    fill_default_names(gene_names_, values_.cols(), "gene");
    fill_default_names(organism_names_, values_.rows(), "row");
  }

  /// Fully present population.
  explicit Population(Matrix<Scalar> values)
      : Population(values, Mask::Constant(values.rows(), values.cols(), true)) {}

  Index rows() const noexcept { return values_.rows(); }
  Index cols() const noexcept { return values_.cols(); }
  const Matrix<Scalar>& values() const noexcept { return values_; }
  const Mask& present() const noexcept { return present_; }
  const std::vector<std::string>& gene_names() const noexcept { return gene_names_; }
  const std::vector<std::string>& organism_names() const noexcept { return organism_names_; }

  /// Column j, the vector g_j.
  auto gene(Index j) const { return values_.col(j); }
  /// Row i, the vector omega_i.
  auto organism(Index i) const { return values_.row(i); }

 private:
  static void fill_default_names(std::vector<std::string>& names, Index count, const char* prefix) {
    if (names.empty()) {
      for (Index k = 0; k < count; ++k) names.push_back(prefix + std::to_string(k + 1));
    } else if (static_cast<Index>(names.size()) != count) {
      throw DimensionError("name count does not match population shape");
    }
  }

  Matrix<Scalar> values_;
  Mask present_;
  std::vector<std::string> gene_names_;
  std::vector<std::string> organism_names_;
};

/// Maps every column through its fitness function. Exactly one spec per
/// column is required.
template <typename Scalar = double>
Population<Scalar> build_population(const RawTable& table, std::span<const FeatureSpec> specs) {
  const std::size_t n = table.rows();
  const std::size_t m = table.cols();

  std::vector<Issue> issues;
  std::vector<const FeatureSpec*> by_column(m, nullptr);
  for (const auto& spec : specs) {
    if (spec.column >= m) {
      issues.push_back({"fitness spec refers to column index " + std::to_string(spec.column) +
                            " outside the table",
                        {}, {}});
    } else if (by_column[spec.column] != nullptr) {
      issues.push_back({"column has more than one fitness spec", {}, table.column_names()[spec.column]});
    } else {
      by_column[spec.column] = &spec;
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (by_column[j] == nullptr) issues.push_back({"column has no fitness spec", {}, table.column_names()[j]});
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  Matrix<Scalar> values(static_cast<Index>(n), static_cast<Index>(m));
  Mask present(static_cast<Index>(n), static_cast<Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    const auto cells = table.column(j);
    try {
      auto fitness = variant_fitness<Scalar>(*by_column[j], cells);
      values.col(static_cast<Index>(j)) = fitness.values;
      for (std::size_t i = 0; i < n; ++i) present(static_cast<Index>(i), static_cast<Index>(j)) = fitness.present[i];
    } catch (const ValidationError& e) {
      for (auto issue : e.issues()) {
        issue.column = table.column_names()[j];
        issues.push_back(std::move(issue));
      }
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return Population<Scalar>(std::move(values), std::move(present), table.column_names(), table.row_names());
}

/// Linear organism fitness r = Phi * gamma.
template <typename Scalar, typename Derived>
Vector<Scalar> organism_fitness(const Population<Scalar>& pop, const Eigen::MatrixBase<Derived>& gamma) {
  if (gamma.size() != pop.cols()) throw DimensionError("gamma length does not match gene count");
  return pop.values() * gamma;
}

/// Symmetric similarity between genes or organisms: one minus the
/// Euclidean distance of the two vectors divided by their length.
template <typename Scalar = double>
struct KinshipMatrix {
  Matrix<Scalar> values;
  Axis axis = Axis::gene;
};

template <typename Scalar>
KinshipMatrix<Scalar> kinship(const Population<Scalar>& pop, Axis axis) {
  const Matrix<Scalar>& phi = pop.values();
  const Index count = axis == Axis::gene ? phi.cols() : phi.rows();
  const auto length = static_cast<Scalar>(axis == Axis::gene ? phi.rows() : phi.cols());

  Matrix<Scalar> k = Matrix<Scalar>::Identity(count, count);
  for (Index a = 0; a < count; ++a) {
    for (Index b = a + 1; b < count; ++b) {
      const Scalar dist = axis == Axis::gene ? (phi.col(a) - phi.col(b)).norm()
                                             : (phi.row(a) - phi.row(b)).norm();
      k(a, b) = k(b, a) = Scalar(1) - dist / length;
    }
  }
  return {std::move(k), axis};
}

template <typename Scalar = double>
struct ScaleConstants {
  Scalar rho = 1;
};

/// Spread of the initial organism fitness. Falls back to the maximum when
/// all values are equal and to 1 when that is also 0, so rho > 0 always.
template <typename Derived>
auto initial_fitness_range(const Eigen::MatrixBase<Derived>& r0) {
  using Scalar = typename Derived::Scalar;
  if (r0.size() == 0) throw DimensionError("empty organism fitness vector");
  const Scalar hi = r0.maxCoeff();
  const Scalar lo = r0.minCoeff();
  Scalar rho = hi - lo;
  if (!(rho > 0)) rho = hi;
  if (!(rho > 0)) rho = Scalar(1);
  return ScaleConstants<Scalar>{rho};
}

}  // namespace genesim

#endif  // GENESIM_MODEL_HPP
