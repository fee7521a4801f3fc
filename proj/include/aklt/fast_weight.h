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

#ifndef AKLT_FAST_WEIGHT_H
#define AKLT_FAST_WEIGHT_H

#include <cstdint>
#include <vector>

#include "aklt/lattice.h"
#include "aklt/povm.h"
#include "aklt/weight.h"

namespace aklt {

/// Flat-array evaluator producing the same WeightResult as log_weight, for use
/// inside the sampling loop. The kernel of H is computed per connected block
/// of all-K domains, and kernel signs are evaluated sparsely.
///
/// Holds scratch buffers, so one instance must not be shared between threads.
class FastWeightEngine {
   public:
    explicit FastWeightEngine(const Lattice& lattice);

    /// codes[site] = PovmOutcome::code().
    WeightResult evaluate(const std::vector<uint8_t>& codes);
    WeightResult evaluate(const PovmConfig& config);

    /// Outcome codes of a config.
    static std::vector<uint8_t> codes_of(const PovmConfig& config);

    /// Root site per site from the last evaluate() call; equal roots share a domain.
    const std::vector<int>& domain_roots() const { return parent_; }

   private:
    int find(int v);

    const Lattice& lattice_;
    int n_;
    int num_legs_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> port_;  // 4 * site + slot -> neighbor site, or -(leg + 1)
    std::vector<int8_t> lambda_;

    // Scratch.
    std::vector<int> parent_;
    std::vector<uint8_t> all_k_;
    std::vector<int> k_index_;    // root site -> index into K-domain arrays, -1 otherwise
    std::vector<int> k_roots_;
    std::vector<int> k_site_start_;
    std::vector<int> k_sites_;
    std::vector<int> k_size_;
    std::vector<uint8_t> k_loop_;
    std::vector<int8_t> k_sign_;
    std::vector<int> k_nb_start_;
    std::vector<int> k_nb_;  // reduced neighbor ids: root site, or n + leg for partners
    std::vector<int> scratch_nb_;
    std::vector<int> block_parent_;
    std::vector<int> row_owner_;  // neighbor id -> first K column touching it, -1 otherwise
    std::vector<int> touched_rows_;
};

}  // namespace aklt

#endif
