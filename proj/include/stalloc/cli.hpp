// Copyright 2026 The stalloc Authors
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

#include <iostream>
#include <string>
#include <vector>

namespace stalloc::cli {

/// Dispatches a command line (without the program name). Results are JSON on
/// `out` (or the --output file); diagnostics go to `err` as
/// "error[<Kind>]: <message>" lines.
///
/// Exit codes: 0 on success, 1 for domain-negative results under --strict
/// (no unsplit stable assignment, an unstable checked input, a failed
/// verification), 2 on input or usage errors.
int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
        std::ostream& err = std::cerr);

}  // namespace stalloc::cli
