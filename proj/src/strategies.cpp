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

#include "genesim/strategies.hpp"

#include <cmath>

namespace genesim {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::gs_dominant: return "gs_dominant";
    case Strategy::gs_altruistic: return "gs_altruistic";
    case Strategy::os_balanced: return "os_balanced";
    case Strategy::os_selfish: return "os_selfish";
    case Strategy::mixed_gene: return "mixed_gene";
    case Strategy::mixed_organism: return "mixed_organism";
  }
  return "unknown";
}

std::string_view short_name(Strategy s) {
  switch (s) {
    case Strategy::gs_dominant: return "dominant";
    case Strategy::gs_altruistic: return "altruistic";
    case Strategy::os_balanced: return "balanced";
    case Strategy::os_selfish: return "selfish";
    case Strategy::mixed_gene: return "gene";
    case Strategy::mixed_organism: return "organism";
  }
  return "unknown";
}

void StrategyMix::validate() const {
  std::vector<Issue> issues;
  const auto check_pair = [&](double a, double b, const char* what) {
    if (!(a >= 0) || !(b >= 0)) issues.push_back({std::string(what) + " alphas must be non-negative", {}, {}});
    if (!(std::abs(a + b - 1.0) <= kWeightSumTolerance)) {
      issues.push_back({std::string(what) + " alphas must sum to 1", {}, {}});
    }
  };
  check_pair(dominant, altruistic, "gene");
  check_pair(balanced, selfish, "organism");
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::string to_string(const SignPair& p) {
  const auto render = [](const SignCode& c) {
    if (c.sign == 0) return std::string("0");
    return std::string(static_cast<std::size_t>(c.level), c.sign > 0 ? '+' : '-');
  };
  return "(" + render(p.first) + "," + render(p.second) + ")";
}

}  // namespace genesim
