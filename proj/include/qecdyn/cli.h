// Copyright 2026 The qecdyn Authors
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

#ifndef QECDYN_CLI_H
#define QECDYN_CLI_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qecdyn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitUnsupported = 3;

/// Runs the command line tool. `args` excludes the program name. Returns the
/// process exit code: 0 on success, 2 for invalid input, 3 for operations the
/// selected code does not support, 1 for anything else.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Reduces numerator / 2^k and prints it as "p/q" (or "p" when q = 1).
std::string format_rational(int64_t numerator, int64_t denominator);

}  // namespace qecdyn

#endif
