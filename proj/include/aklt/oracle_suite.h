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

#ifndef AKLT_ORACLE_SUITE_H
#define AKLT_ORACLE_SUITE_H

#include <string>
#include <vector>

#include "aklt/lattice.h"

namespace aklt {

struct CheckResult {
    std::string name;
    double deviation = 0.0;  // measured deviation from the target
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

/// Identities of the site operator table.
std::vector<CheckResult> site_operator_checks();

/// |sum of all 6^N probabilities - 1| <= 1e-9.
CheckResult completeness_check(int width, int height, BoundaryMode mode);

/// Every compatible configuration has probability 2^w / Z to 1e-9 relative and
/// every incompatible one has probability below 1e-12.
CheckResult weight_formula_check(int width, int height, BoundaryMode mode);

/// 1x2 open: weights 1/144 (all F_z) and 1/2304 (all K_z), probability ratio 1/16.
CheckResult anchor_check();

/// Single-site marginals 4/15 (F) and 1/15 (K) to 1e-9 at every site.
CheckResult marginal_check(int width, int height, BoundaryMode mode);

/// Bond-sum and state-vector probabilities agree to 1e-10 on every 1x2 configuration.
CheckResult dense_agreement_check();

/// Reduced density of one site equals P_S / 5 to 1e-9.
CheckResult reduced_density_check(int width, int height, BoundaryMode mode);

/// Deformed oracle ratios on 1x2 open against the deformed weight, 1e-9
/// relative; at a = 1 the deformed oracle must equal the plain one exactly.
CheckResult deformed_ratio_check(double a);

/// Deformed weight at a = 1 equals the plain weight exactly on random configurations.
CheckResult deformed_identity_check();

/// Everything above on the standard small lattices.
std::vector<CheckResult> run_oracle_suite();

/// "PASS name deviation=... tolerance=... detail" or FAIL.
std::string format_check(const CheckResult& check);

}  // namespace aklt

#endif
