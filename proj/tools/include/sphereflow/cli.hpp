// Copyright 2026 The sphereflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPHEREFLOW_CLI_HPP
#define SPHEREFLOW_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sphereflow::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFailure = 1;  ///< runtime failure: divergence, parse error, I/O
inline constexpr int kExitUsage = 2;    ///< bad flags, missing paths, invalid config

inline constexpr unsigned long long kDefaultSeed = 20220101;

/// Runs one subcommand. args[0] is the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv);

}  // namespace sphereflow::cli

#endif  // SPHEREFLOW_CLI_HPP
