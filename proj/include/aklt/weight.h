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

#ifndef AKLT_WEIGHT_H
#define AKLT_WEIGHT_H

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "aklt/domain_graph.h"
#include "aklt/gf2.h"
#include "aklt/lattice.h"
#include "aklt/povm.h"

namespace aklt {

/// Relative probability of a POVM outcome configuration, as an integer power
/// of two plus an optional real-valued deformation term.
struct WeightResult {
    bool compatible = true;
    int64_t log2_weight = 0;  // meaningful only when compatible
    double deformation_log2_extra = 0.0;

    // Exponent terms.
    int raw_edges = 0;     // |calE|
    int num_vertices = 0;  // |V|, partners included
    int num_K = 0;         // |J_K|
    int kernel_dim = 0;    // dim ker H
    int num_Fz = 0;

    /// log2_weight + deformation_log2_extra, or -infinity when the weight is zero.
    double total_log2() const;
    bool is_zero() const;

    friend bool operator==(const WeightResult&, const WeightResult&) = default;
};

/// Columns of H: the all-K real domains, in vertex order.
std::vector<int> measured_columns(const DomainGraph& graph);

/// H_{mu,nu} = 1 iff generator mu anticommutes with X on column domain nu.
BinaryMatrix build_H(const DomainGraph& graph, const std::vector<int>& columns);
BinaryMatrix build_H(const DomainGraph& graph);

/// True iff some kernel vector's generator product carries the sign opposite to
/// the product of the measured operators (-1)^{|V_c|} X_c. Throws
/// std::logic_error if a product fails to reduce to a pure X string.
bool incompatibility(const DomainGraph& graph, const std::vector<int>& columns, const KernelBasis& kernel);

/// Relative sign of the kernel vector q: +1 when the generator product matches
/// the measured operators, -1 otherwise.
int kernel_sign(const DomainGraph& graph, const std::vector<int>& columns, const BitVector& q);

WeightResult log_weight(const Lattice& lattice, const PovmConfig& config);

class DeformationRangeError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Valid for 1/sqrt(3) <= a <= sqrt(3).
void check_deformation(double a);

/// log2 of the per-F_z factor (3 - a^2) / (2 a^2); -infinity at a = sqrt(3).
double deformation_log2_factor(double a);

WeightResult deformed_log_weight(const Lattice& lattice, const PovmConfig& config, double a);

}  // namespace aklt

#endif
