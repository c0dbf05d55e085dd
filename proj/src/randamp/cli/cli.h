// Copyright 2026 The randamp Authors
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

#ifndef RANDAMP_CLI_CLI_H
#define RANDAMP_CLI_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace randamp {

/// Exit codes: 0 success, 1 a check found violations, 2 precondition or contract violation,
/// 64 usage error (unknown flag, malformed value, missing seed), 70 internal error, 73 unwritable output.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInternal = 70;
inline constexpr int kExitCantCreate = 73;

/// args excludes the program name. Reports go to `out` unless --out is given; summaries and errors go to `err`.
int parse_and_dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

int parse_and_dispatch(int argc, const char *const *argv);

}  // namespace randamp

#endif
