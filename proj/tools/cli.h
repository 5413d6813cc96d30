// Copyright 2026 The ramseyqf Authors
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

#ifndef RAMSEYQF_TOOLS_CLI_H_
#define RAMSEYQF_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "certificate.h"

namespace ramseyqf {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitInputError = 3;

// Runs one subcommand; `args` excludes the program name. Without --output
// the certificate goes to `out` and the summary to `err`; with it, the
// summary goes to `out`.
int RunCommand(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

// Re-checks a certificate from its payload without colouring search.
// Returns an empty string when it reproduces the recorded verdict and exit
// code, otherwise the reason for rejecting it.
std::string ReplayCertificate(const Certificate& cert);

}  // namespace ramseyqf

#endif  // RAMSEYQF_TOOLS_CLI_H_
