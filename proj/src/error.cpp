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

#include "genesim/error.hpp"

#include <utility>

namespace genesim {

namespace {

std::string join_messages(const std::vector<Issue>& issues) {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += "; ";
    out += to_string(issue);
  }
  return out;
}

}  // namespace

std::string to_string(const Issue& issue) {
  std::string where;
  if (issue.column) where += "column '" + *issue.column + "'";
  if (issue.row) {
    if (!where.empty()) where += ", ";
    where += "row " + std::to_string(*issue.row + 1);
  }
  return where.empty() ? issue.message : where + ": " + issue.message;
}

ValidationError::ValidationError(std::vector<Issue> issues)
    : std::runtime_error(join_messages(issues)), issues_(std::move(issues)) {}

ValidationError::ValidationError(Issue issue)
    : ValidationError(std::vector<Issue>{std::move(issue)}) {}

ValidationError::ValidationError(std::string message)
    : ValidationError(Issue{std::move(message), std::nullopt, std::nullopt}) {}

}  // namespace genesim
