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

#include "genesim/engine.hpp"

namespace genesim {

std::string_view to_string(TerminalStatus s) {
  return s == TerminalStatus::converged ? "converged" : "max_iterations";
}

void SimConfig::validate(Index genes) const {
  std::vector<Issue> issues;
  if (!(epsilon > 0)) issues.push_back({"epsilon must be positive", {}, {}});
  if (max_iterations < 1) issues.push_back({"max_iterations must be at least 1", {}, {}});
  if (workers < 1) issues.push_back({"workers must be at least 1", {}, {}});
  if (initial_gamma) {
    const VectorXd& g = *initial_gamma;
    if (g.size() != genes) {
      issues.push_back({"initial_gamma has " + std::to_string(g.size()) + " entries, expected " +
                            std::to_string(genes),
                        {}, {}});
    } else if (!g.allFinite() || (g.array() < 0).any()) {
      issues.push_back({"initial_gamma entries must be finite and non-negative", {}, {}});
    } else if (!(std::abs(g.sum() - 1.0) <= 1e-12)) {
      issues.push_back({"initial_gamma must sum to 1", {}, {}});
    }
  }
  try {
    mix.validate();
  } catch (const ValidationError& e) {
    issues.insert(issues.end(), e.issues().begin(), e.issues().end());
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

}  // namespace genesim
