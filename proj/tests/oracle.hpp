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

// Straight transcription of the update equations with plain loops. Kept
// independent of the library kernels so the two can check each other.
#ifndef GENESIM_TESTS_ORACLE_HPP
#define GENESIM_TESTS_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;
using Mask = std::vector<std::vector<bool>>;

inline Vec organism_fitness(const Mat& phi, const Vec& gamma) {
  Vec r(phi.size(), 0.0);
  for (std::size_t i = 0; i < phi.size(); ++i)
    for (std::size_t j = 0; j < gamma.size(); ++j) r[i] += gamma[j] * phi[i][j];
  return r;
}

inline Mat gene_kinship(const Mat& phi) {
  const std::size_t n = phi.size(), m = phi[0].size();
  Mat k(m, Vec(m, 0.0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += (phi[i][a] - phi[i][b]) * (phi[i][a] - phi[i][b]);
      k[a][b] = 1.0 - std::sqrt(s) / static_cast<double>(n);
    }
  return k;
}

inline Mat organism_kinship(const Mat& phi) {
  const std::size_t n = phi.size(), m = phi[0].size();
  Mat k(n, Vec(n, 0.0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double s = 0;
      for (std::size_t j = 0; j < m; ++j) s += (phi[a][j] - phi[b][j]) * (phi[a][j] - phi[b][j]);
      k[a][b] = 1.0 - std::sqrt(s) / static_cast<double>(m);
    }
  return k;
}

inline double range(const Vec& r) {
  double hi = r[0], lo = r[0];
  for (double v : r) {
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  if (hi - lo > 0) return hi - lo;
  if (hi > 0) return hi;
  return 1.0;
}

struct Deltas {
  Mat dom, alt, bal, sel;
};

/// `selfish_divisor` is 1 for division by r_i, 2 for 2 r_i.
/// Cells where `present` is false are forced to 0 in every matrix.
inline Deltas strategies(const Mat& phi, const Vec& gamma, double rho, const Mask& present = {},
                         double selfish_divisor = 1.0) {
  const std::size_t n = phi.size(), m = phi[0].size();
  const Vec r = organism_fitness(phi, gamma);
  const Mat kg = gene_kinship(phi);
  const Mat ko = organism_kinship(phi);
  Deltas d{Mat(n, Vec(m, 0.0)), Mat(n, Vec(m, 0.0)), Mat(n, Vec(m, 0.0)), Mat(n, Vec(m, 0.0))};
  for (std::size_t i = 0; i < n; ++i) {
    double pressure = 0;
    for (std::size_t t = 0; t < n; ++t)
      if (t != i) pressure += ko[i][t] * (r[i] - r[t]) / rho;
    pressure /= static_cast<double>(n);
    for (std::size_t j = 0; j < m; ++j) {
      d.dom[i][j] = 4.0 * gamma[j] * gamma[j] / static_cast<double>(n) * (phi[i][j] - 0.5);
      double transfer = 0;
      for (std::size_t l = 0; l < m; ++l)
        if (l != j) transfer += gamma[l] * kg[j][l] * (phi[i][l] - phi[i][j]);
      transfer *= 4.0 / static_cast<double>(m);
      d.alt[i][j] = gamma[j] > 0 ? d.dom[i][j] * transfer / gamma[j] : 0.0;
      if (r[i] > 0) {
        const double mu = gamma[j] * phi[i][j] / r[i];
        d.bal[i][j] = -(2.0 * r[i] / static_cast<double>(n)) * (mu - 1.0 / static_cast<double>(m));
        d.sel[i][j] = d.bal[i][j] * pressure / (selfish_divisor * r[i]);
      }
      if (!present.empty() && !present[i][j]) d.dom[i][j] = d.alt[i][j] = d.bal[i][j] = d.sel[i][j] = 0.0;
    }
  }
  return d;
}

struct Step {
  Vec gamma, r;
  Vec alpha_gene, alpha_organism;
  Vec effects;  // dominant, altruistic, balanced, selfish
};

/// One iteration with mixing weights (a_dom, a_alt) and (a_bal, a_sel);
/// alphas advance only when `self_consistent`.
inline Step step(const Mat& phi, const Mask& present, const Vec& gamma, double rho, const Vec& ag, const Vec& ao,
                 bool self_consistent) {
  const std::size_t n = phi.size(), m = phi[0].size();
  const Deltas d = strategies(phi, gamma, rho, present);
  Vec delta(m, 0.0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i)
      delta[j] += ag[0] * d.dom[i][j] + ag[1] * d.alt[i][j] + ao[0] * d.bal[i][j] + ao[1] * d.sel[i][j];
  for (double& v : delta) v = std::min(1.0, std::max(-1.0 + 1e-6, v));
  Step s;
  double total = 0;
  s.gamma.resize(m);
  for (std::size_t j = 0; j < m; ++j) total += s.gamma[j] = gamma[j] * (1.0 + delta[j]);
  for (double& g : s.gamma) g /= total;
  s.r = organism_fitness(phi, s.gamma);

  const auto gene_effect = [&](const Mat& x) {
    double acc = 0;
    for (const auto& row : x)
      for (double v : row) acc += std::abs(v);
    return acc / static_cast<double>(n * m);
  };
  const auto organism_effect = [&](const Mat& x) {
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) acc += std::abs(x[i][j]) * gamma[j];
    return acc / static_cast<double>(n);
  };
  s.effects = {gene_effect(d.dom), gene_effect(d.alt), organism_effect(d.bal), organism_effect(d.sel)};
  s.alpha_gene = ag;
  s.alpha_organism = ao;
  if (self_consistent) {
    const double g0 = ag[0] * (1 + s.effects[0]), g1 = ag[1] * (1 + s.effects[1]);
    const double o0 = ao[0] * (1 + s.effects[2]), o1 = ao[1] * (1 + s.effects[3]);
    s.alpha_gene = {g0 / (g0 + g1), g1 / (g0 + g1)};
    s.alpha_organism = {o0 / (o0 + o1), o1 / (o0 + o1)};
  }
  return s;
}

}  // namespace oracle

#endif  // GENESIM_TESTS_ORACLE_HPP
