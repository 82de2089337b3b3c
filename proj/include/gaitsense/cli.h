// Copyright 2026 The Gaitsense Authors
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

#ifndef GAITSENSE_CLI_H_
#define GAITSENSE_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace gaitsense {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSimulation = 3;
inline constexpr int kExitMalformedLog = 4;
inline constexpr int kExitMismatch = 5;

// Environment variable naming the directory relative output paths resolve
// against. Unset means the working directory.
inline constexpr const char* kOutRootEnv = "GAITSENSE_OUT_ROOT";

// Commands: defaults, simulate, analyze, evaluate. args excludes the program
// name. Never throws; failures become exit codes with a message on err.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace gaitsense

#endif  // GAITSENSE_CLI_H_
