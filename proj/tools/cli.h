// Copyright 2026 The stepcoin Authors.
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

#ifndef STEPCOIN_TOOLS_CLI_H_
#define STEPCOIN_TOOLS_CLI_H_

#include <ostream>

namespace stepcoin::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation, dimension, I/O errors
inline constexpr int kExitUsage = 2;    // bad flags, missing input files

// Entry point of the `stepcoin` tool. Normal output goes to `out`,
// diagnostics to `err`.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

// Asks a running `serve` subcommand to shut down. Async-signal-safe.
void RequestShutdown();

}  // namespace stepcoin::cli

#endif  // STEPCOIN_TOOLS_CLI_H_
