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

#ifndef AKLT_LOCAL_UPDATE_H
#define AKLT_LOCAL_UPDATE_H

#include <cstdint>
#include <vector>

#include "aklt/lattice.h"
#include "aklt/weight.h"

namespace aklt {

/// Weight change of a single-site update, computed from the domains and H
/// blocks near the site only. Produces exactly the WeightResult that a full
/// recomputation would.
///
/// Outside the domains touching the site and its neighbors, nothing about the
/// domain graph changes; the H blocks that can change are those holding an
/// all-K domain in or next to that region, closed under block membership in
/// both the old and the new configuration.
class LocalWeightUpdater {
   public:
    explicit LocalWeightUpdater(const Lattice& lattice);

    /// Weight of `codes` with codes[site] = proposal. `current` must be the
    /// (compatible) weight of `codes` as given; `codes` is restored before returning.
    WeightResult propose(std::vector<uint8_t>& codes, const WeightResult& current, int site, uint8_t proposal);

   private:
    struct Dom {
        int root;
        uint8_t axis;
        bool all_k;
        int start;
        int count;
        bool nb_ready;
        int nb_start;
        int nb_count;
        bool loop;
        int sign;
    };
    struct View {
        std::vector<uint32_t> stamp;
        std::vector<int> dom;
        std::vector<Dom> doms;
        std::vector<int> sites;
        std::vector<int> nbs;
    };

    int domain_of(View& v, const std::vector<uint8_t>& codes, int site);
    void ensure_neighbors(View& v, const std::vector<uint8_t>& codes, int d);
    int column_of(View& v, const std::vector<uint8_t>& codes, int id);
    void add(int id);
    void close_blocks(View& v, const std::vector<uint8_t>& codes);
    bool block_kernel(View& v, const std::vector<uint8_t>& codes, int& kernel_dim);

    const Lattice& lattice_;
    int n_;
    std::vector<int> port_;  // 4 * site + slot -> neighbor site, or -(leg + 1)
    std::vector<int> leg_site_;
    std::vector<int8_t> lambda_;
    uint32_t epoch_ = 0;
    View views_[2];
    std::vector<uint32_t> in_set_;
    std::vector<int> set_;
    std::vector<uint32_t> region_mark_;
    std::vector<int> region_;
    std::vector<int> stack_;
    std::vector<int> scratch_;
    std::vector<int> rows_;
    std::vector<int> nb_scratch_;
    std::vector<int> cols_scratch_;
};

}  // namespace aklt

#endif
