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

#include "aklt/fast_weight.h"

#include <algorithm>
#include <stdexcept>

#include "aklt/domain_graph.h"
#include "kernel_block.h"

namespace aklt {

namespace {

inline Axis axis_of(uint8_t code) { return static_cast<Axis>(code % 3); }
inline bool is_k(uint8_t code) { return code >= 3; }

}  // namespace

FastWeightEngine::FastWeightEngine(const Lattice& lattice)
    : lattice_(lattice), n_(lattice.num_sites()), num_legs_(static_cast<int>(lattice.boundary_legs().size())) {
    for (const Edge& e : lattice.edges()) {
        edges_.emplace_back(e.a, e.b);
    }
    port_.assign(4 * n_, 0);
    for (int s = 0; s < n_; ++s) {
        for (Slot slot : kSlots) {
            const Port& p = lattice.port(s, slot);
            port_[4 * s + static_cast<int>(slot)] = p.is_leg ? -(p.index + 1) : p.neighbor;
        }
        lambda_.push_back(static_cast<int8_t>(lattice.sublattice_sign(s)));
    }
    parent_.resize(n_);
    all_k_.resize(n_);
    k_index_.assign(n_, -1);
    row_owner_.assign(n_ + num_legs_, -1);
}

std::vector<uint8_t> FastWeightEngine::codes_of(const PovmConfig& config) {
    std::vector<uint8_t> codes(config.size());
    for (int s = 0; s < config.size(); ++s) {
        codes[s] = static_cast<uint8_t>(config[s].code());
    }
    return codes;
}

WeightResult FastWeightEngine::evaluate(const PovmConfig& config) {
    if (!config.matches(lattice_)) {
        throw std::invalid_argument("config shape does not match lattice");
    }
    return evaluate(codes_of(config));
}

int FastWeightEngine::find(int v) {
    while (parent_[v] != v) {
        parent_[v] = parent_[parent_[v]];
        v = parent_[v];
    }
    return v;
}

WeightResult FastWeightEngine::evaluate(const std::vector<uint8_t>& codes) {
    WeightResult r;
    for (int s = 0; s < n_; ++s) {
        parent_[s] = s;
    }
    int cross = 0;
    for (const auto& [a, b] : edges_) {
        if (axis_of(codes[a]) != axis_of(codes[b])) {
            ++cross;
            continue;
        }
        int ra = find(a);
        int rb = find(b);
        if (ra != rb) {
            if (ra < rb) {
                parent_[rb] = ra;
            } else {
                parent_[ra] = rb;
            }
        }
    }
    int domains = 0;
    for (int s = 0; s < n_; ++s) {
        all_k_[s] = 1;
    }
    for (int s = 0; s < n_; ++s) {
        int root = find(s);
        parent_[s] = root;
        if (root == s) {
            ++domains;
        }
        if (!is_k(codes[s])) {
            all_k_[root] = 0;
        } else {
            ++r.num_K;
        }
        if (codes[s] == 2) {
            ++r.num_Fz;
        }
    }
    r.raw_edges = cross + num_legs_;
    r.num_vertices = domains + num_legs_;

    // All-K domains, with their sites grouped contiguously.
    k_roots_.clear();
    for (int s = 0; s < n_; ++s) {
        if (parent_[s] == s && all_k_[s]) {
            k_index_[s] = static_cast<int>(k_roots_.size());
            k_roots_.push_back(s);
        }
    }
    int m = static_cast<int>(k_roots_.size());
    if (m == 0) {
        r.log2_weight = -(int64_t{r.raw_edges} - r.num_vertices + 2 * int64_t{r.num_K});
        return r;
    }
    k_size_.assign(m, 0);
    for (int s = 0; s < n_; ++s) {
        if (all_k_[parent_[s]]) {
            ++k_size_[k_index_[parent_[s]]];
        }
    }
    k_site_start_.assign(m + 1, 0);
    for (int c = 0; c < m; ++c) {
        k_site_start_[c + 1] = k_site_start_[c] + k_size_[c];
    }
    k_sites_.resize(k_site_start_[m]);
    {
        std::vector<int>& fill = scratch_nb_;
        fill.assign(k_site_start_.begin(), k_site_start_.end() - 1);
        for (int s = 0; s < n_; ++s) {
            if (all_k_[parent_[s]]) {
                k_sites_[fill[k_index_[parent_[s]]]++] = s;
            }
        }
    }

    // Generators: reduced neighbor sets, self-loops and signs.
    k_loop_.assign(m, 0);
    k_sign_.assign(m, 1);
    k_nb_start_.assign(m + 1, 0);
    k_nb_.clear();
    for (int c = 0; c < m; ++c) {
        int root = k_roots_[c];
        Axis a = axis_of(codes[root]);
        Axis t = third_axis(a);
        int minus = 0;
        int internal_twice = 0;
        int n_not_b = 0;
        scratch_nb_.clear();
        for (int i = k_site_start_[c]; i < k_site_start_[c + 1]; ++i) {
            int s = k_sites_[i];
            for (int slot = 0; slot < 4; ++slot) {
                int j = port_[4 * s + slot];
                if (j < 0) {
                    scratch_nb_.push_back(n_ + (-j - 1));
                    minus ^= 1;
                    continue;
                }
                int rj = parent_[j];
                if (rj == root) {
                    ++internal_twice;
                    continue;
                }
                scratch_nb_.push_back(rj);
                minus ^= 1;
                if (lambda_[j] < 0) {
                    minus ^= 1;
                }
                if (axis_of(codes[j]) == t) {
                    ++n_not_b;
                    if (lambda_[s] < 0) {
                        minus ^= 1;
                    }
                }
            }
        }
        minus ^= (internal_twice / 2) & 1;
        bool loop = false;
        k_sign_[c] = static_cast<int8_t>(internal::generator_sign(minus, n_not_b, a, loop));
        k_loop_[c] = loop;

        std::sort(scratch_nb_.begin(), scratch_nb_.end());
        for (size_t i = 0; i < scratch_nb_.size();) {
            size_t j = i;
            while (j < scratch_nb_.size() && scratch_nb_[j] == scratch_nb_[i]) {
                ++j;
            }
            if ((j - i) & 1) {
                k_nb_.push_back(scratch_nb_[i]);
            }
            i = j;
        }
        k_nb_start_[c + 1] = static_cast<int>(k_nb_.size());
    }

    // Blocks: columns sharing a row. Row ids are neighbor ids plus the column's own root.
    block_parent_.resize(m);
    for (int c = 0; c < m; ++c) {
        block_parent_[c] = c;
    }
    auto block_find = [&](int c) {
        while (block_parent_[c] != c) {
            block_parent_[c] = block_parent_[block_parent_[c]];
            c = block_parent_[c];
        }
        return c;
    };
    touched_rows_.clear();
    auto touch = [&](int row, int c) {
        int& owner = row_owner_[row];
        if (owner < 0) {
            owner = c;
            touched_rows_.push_back(row);
        } else {
            int x = block_find(owner);
            int y = block_find(c);
            if (x != y) {
                block_parent_[std::max(x, y)] = std::min(x, y);
            }
        }
    };
    for (int c = 0; c < m; ++c) {
        for (int i = k_nb_start_[c]; i < k_nb_start_[c + 1]; ++i) {
            touch(k_nb_[i], c);
        }
        if (k_loop_[c]) {
            touch(k_roots_[c], c);
        }
    }
    for (int row : touched_rows_) {
        row_owner_[row] = -1;
    }

    std::vector<std::vector<int>> blocks;
    std::vector<int> block_of(m, -1);
    for (int c = 0; c < m; ++c) {
        int b = block_find(c);
        if (block_of[b] < 0) {
            block_of[b] = static_cast<int>(blocks.size());
            blocks.emplace_back();
        }
        blocks[block_of[b]].push_back(c);
    }
    int kernel_dim = 0;
    bool compatible = true;
    std::vector<internal::Column> cols;
    for (const std::vector<int>& block : blocks) {
        cols.clear();
        for (int c : block) {
            cols.push_back({k_roots_[c], k_nb_.data() + k_nb_start_[c], k_nb_.data() + k_nb_start_[c + 1],
                            k_loop_[c] != 0, k_sign_[c], k_size_[c]});
        }
        compatible = internal::kernel_block(cols, kernel_dim) && compatible;
    }
    for (int root : k_roots_) {
        k_index_[root] = -1;
    }
    r.kernel_dim = kernel_dim;
    r.compatible = compatible;
    r.log2_weight =
        compatible ? -(int64_t{r.raw_edges} - r.num_vertices + 2 * int64_t{r.num_K} - kernel_dim) : 0;
    return r;
}

}  // namespace aklt
