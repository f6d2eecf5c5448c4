// Copyright 2026 The somdms Authors
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

#ifndef SOMDMS_CLI_HPP
#define SOMDMS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace somdms::cli {

constexpr int kExitOk = 0;
constexpr int kExitBadArguments = 2;
constexpr int kExitDegenerateState = 3;

constexpr const char* kSeedVariable = "SOMDMS_SEED";
constexpr const char* kVersion = "1.0.0";

/// Runs one invocation. `args` excludes the program name. Every command
/// writes a manifest (see README) that `replay` can re-execute.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace somdms::cli

#endif  // SOMDMS_CLI_HPP
