// Copyright 2026 The aklt2d Authors
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

#ifndef AKLT_CLI_H
#define AKLT_CLI_H

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace aklt {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitRuntime = 2, kExitSuiteFailed = 3 };

/// `key = value` lines; '#' starts a comment. Throws std::invalid_argument on a
/// malformed line.
std::map<std::string, std::string> parse_key_value_file(const std::string& text);

/// Comma-separated lists.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

/// Inclusive grid lo, lo + step, ..., hi; values rounded to 1e-9.
std::vector<double> make_grid(double lo, double hi, double step);

/// Runs one subcommand. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aklt

#endif
