// Copyright 2026 The Triplerank Authors.
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

#ifndef TRIPLERANK_CLI_H_
#define TRIPLERANK_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace triplerank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;  // also usage errors
inline constexpr int kExitIo = 2;          // I/O failure or parse abort

// Runs one subcommand. `args` excludes the program name. Data goes to files
// or `out`, diagnostics to `err`.
int Run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

}  // namespace triplerank::cli

#endif  // TRIPLERANK_CLI_H_
