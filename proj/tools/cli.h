// Copyright 2026 The netbargain Authors
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


#ifndef NETBARGAIN_TOOLS_CLI_H_
#define NETBARGAIN_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace netbargain::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNonexistence = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitUsage = 64;

// Runs one subcommand. `args` excludes the program name. The JSON report goes
// to `out`, the log and usage errors to `err`.
int CliMain(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netbargain::cli

#endif  // NETBARGAIN_TOOLS_CLI_H_
