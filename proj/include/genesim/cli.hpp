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

#ifndef GENESIM_CLI_HPP
#define GENESIM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace genesim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

/// Entry point shared by the executable and the tests. `args[0]` is the
/// program name. Subcommands: run, analyze, validate.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace genesim::cli

#endif  // GENESIM_CLI_HPP
