// Copyright 2026 The qmask Authors
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

#ifndef QMASK_TOOLS_CLI_H
#define QMASK_TOOLS_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace qmask::cli {

inline constexpr const char *kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kVerdictFalse = 1, kUsageError = 2 };

/// Runs one command. Reports go to `out`, diagnostics and usage text to `err`.
int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qmask::cli

#endif
