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

#ifndef GENESIM_ERROR_HPP
#define GENESIM_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace genesim {

/// One problem found while validating input. Coordinates are 0-based data
/// rows (header excluded) and column names, when known.
struct Issue {
  std::string message;
  std::optional<std::size_t> row;
  std::optional<std::string> column;
};

std::string to_string(const Issue& issue);

/// Input rejected by a validation rule. Carries every issue found so the
/// CLI can report all of them at once.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Issue> issues);
  explicit ValidationError(Issue issue);
  explicit ValidationError(std::string message);

  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  std::vector<Issue> issues_;
};

/// Shape mismatch between arguments of a numerical routine.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace genesim

#endif  // GENESIM_ERROR_HPP
