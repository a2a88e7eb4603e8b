// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The dcasim Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dcasim {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitRuntime = 2,
};

/// Entry point of the `dcasim` tool. `args` excludes the program name.
///
///   simulate --config PATH [--seed N] [--out DIR] [--set section.key=value]...
///   capacity --config PATH [--V bits] [--wmax bits] [...]
///   sweep    --config PATH --axis KEY --values v1,v2,... [...]
///   analytic dof --tc T --ns N (--m M | --unbounded-m)
///   analytic timeshare --mode FRACTION:T1,T2,... [--mode ...]
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dcasim
