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

#ifndef AKLT_SRC_KERNEL_BLOCK_H
#define AKLT_SRC_KERNEL_BLOCK_H

// Internal helpers shared by the flat-array and local weight evaluators.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "aklt/gf2.h"
#include "aklt/povm.h"

namespace aklt::internal {

/// Sign and center letter of a real domain's generator, from the parity of
/// the (-1) and lambda factors and the count n of edges to third-axis neighbors.
inline int generator_sign(int minus_parity, int n_not_b, Axis axis, bool& loop) {
    int sign = (minus_parity & 1) ? -1 : 1;
    loop = (n_not_b & 1) != 0;
    if (!loop) {
        if ((n_not_b / 2) & 1) {
            sign = -sign;
        }
    } else {
        sign = -sign;
        if (((n_not_b + 1) / 2) & 1) {
            sign = -sign;
        }
        if (axis == Axis::x) {
            sign = -sign;
        }
    }
    return sign;
}

/// One H column: an all-K domain.
struct Column {
    int id;                       // vertex identity
    const int* nb_begin;          // sorted reduced neighbor identities
    const int* nb_end;
    bool loop;
    int sign;
    int size;                     // number of sites
};

/// Adds dim ker H over the given columns to kernel_dim and returns false if some
/// kernel vector carries the wrong sign.
inline bool kernel_block(const std::vector<Column>& columns, int& kernel_dim) {
    size_t m = columns.size();
    std::vector<int> row_ids;
    for (const Column& c : columns) {
        row_ids.insert(row_ids.end(), c.nb_begin, c.nb_end);
        if (c.loop) {
            row_ids.push_back(c.id);
        }
    }
    std::sort(row_ids.begin(), row_ids.end());
    row_ids.erase(std::unique(row_ids.begin(), row_ids.end()), row_ids.end());
    auto row_of = [&](int id) {
        return static_cast<size_t>(std::lower_bound(row_ids.begin(), row_ids.end(), id) - row_ids.begin());
    };

    BinaryMatrix h(row_ids.size(), m);
    for (size_t j = 0; j < m; ++j) {
        for (const int* it = columns[j].nb_begin; it != columns[j].nb_end; ++it) {
            h.set(row_of(*it), j, true);
        }
        if (columns[j].loop) {
            h.set(row_of(columns[j].id), j, true);
        }
    }
    KernelBasis kernel = gf2_kernel(h);
    kernel_dim += static_cast<int>(kernel.dimension());

    std::vector<size_t> members;
    for (const BitVector& q : kernel.vectors) {
        // Generator c is sign_c i^{loop_c} X_c Z_c^{loop_c} Z_{nb(c)}. The ordered
        // product gains -1 per E-edge inside the support and ends as a pure X string.
        members.clear();
        for (size_t j = 0; j < m; ++j) {
            if (q.get(j)) {
                members.push_back(j);
            }
        }
        int phase = 0;
        int sites = 0;
        for (size_t i = 0; i < members.size(); ++i) {
            const Column& c = columns[members[i]];
            phase += c.sign < 0 ? 2 : 0;
            phase += c.loop ? 1 : 0;
            sites += c.size;
            for (size_t k = i + 1; k < members.size(); ++k) {
                if (std::binary_search(c.nb_begin, c.nb_end, columns[members[k]].id)) {
                    phase += 2;
                }
            }
        }
        phase &= 3;
        if (phase & 1) {
            throw std::logic_error("non-Hermitian kernel product");
        }
        int product_sign = phase == 0 ? 1 : -1;
        int measured_sign = (sites & 1) ? -1 : 1;
        if (product_sign != measured_sign) {
            return false;
        }
    }
    return true;
}

}  // namespace aklt::internal

#endif
