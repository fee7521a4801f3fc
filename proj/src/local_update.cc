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

#include "aklt/local_update.h"

#include <algorithm>
#include <stdexcept>

#include "aklt/domain_graph.h"
#include "kernel_block.h"

namespace aklt {

namespace {

inline uint8_t axis_of(uint8_t code) { return code % 3; }
inline bool is_k(uint8_t code) { return code >= 3; }

}  // namespace

LocalWeightUpdater::LocalWeightUpdater(const Lattice& lattice) : lattice_(lattice), n_(lattice.num_sites()) {
    port_.assign(4 * n_, 0);
    for (int s = 0; s < n_; ++s) {
        for (Slot slot : kSlots) {
            const Port& p = lattice.port(s, slot);
            port_[4 * s + static_cast<int>(slot)] = p.is_leg ? -(p.index + 1) : p.neighbor;
        }
        lambda_.push_back(static_cast<int8_t>(lattice.sublattice_sign(s)));
    }
    for (const BoundaryLeg& leg : lattice.boundary_legs()) {
        leg_site_.push_back(leg.site);
    }
    for (View& v : views_) {
        v.stamp.assign(n_, 0);
        v.dom.assign(n_, -1);
    }
    in_set_.assign(n_ + leg_site_.size(), 0);
    region_mark_.assign(n_, 0);
}

int LocalWeightUpdater::domain_of(View& v, const std::vector<uint8_t>& codes, int site) {
    if (v.stamp[site] == epoch_) {
        return v.dom[site];
    }
    int d = static_cast<int>(v.doms.size());
    uint8_t axis = axis_of(codes[site]);
    Dom dom{site, axis, true, static_cast<int>(v.sites.size()), 0, false, 0, 0, false, 1};
    stack_.clear();
    stack_.push_back(site);
    v.stamp[site] = epoch_;
    v.dom[site] = d;
    while (!stack_.empty()) {
        int s = stack_.back();
        stack_.pop_back();
        v.sites.push_back(s);
        dom.root = std::min(dom.root, s);
        dom.all_k = dom.all_k && is_k(codes[s]);
        for (int slot = 0; slot < 4; ++slot) {
            int j = port_[4 * s + slot];
            if (j >= 0 && v.stamp[j] != epoch_ && axis_of(codes[j]) == axis) {
                v.stamp[j] = epoch_;
                v.dom[j] = d;
                stack_.push_back(j);
            }
        }
    }
    dom.count = static_cast<int>(v.sites.size()) - dom.start;
    v.doms.push_back(dom);
    return d;
}

void LocalWeightUpdater::ensure_neighbors(View& v, const std::vector<uint8_t>& codes, int d) {
    if (v.doms[d].nb_ready) {
        return;
    }
    Axis a = static_cast<Axis>(v.doms[d].axis);
    uint8_t t = static_cast<uint8_t>(third_axis(a));
    int minus = 0;
    int internal_twice = 0;
    int n_not_b = 0;
    std::vector<int>& nb = nb_scratch_;
    nb.clear();
    int start = v.doms[d].start;
    int count = v.doms[d].count;
    for (int i = 0; i < count; ++i) {
        int s = v.sites[start + i];
        for (int slot = 0; slot < 4; ++slot) {
            int j = port_[4 * s + slot];
            if (j < 0) {
                nb.push_back(n_ + (-j - 1));
                minus ^= 1;
                continue;
            }
            if (axis_of(codes[j]) == v.doms[d].axis) {
                ++internal_twice;
                continue;
            }
            int e = domain_of(v, codes, j);
            nb.push_back(v.doms[e].root);
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
    std::sort(nb.begin(), nb.end());
    Dom& dom = v.doms[d];
    dom.nb_start = static_cast<int>(v.nbs.size());
    for (size_t i = 0; i < nb.size();) {
        size_t j = i;
        while (j < nb.size() && nb[j] == nb[i]) {
            ++j;
        }
        if ((j - i) & 1) {
            v.nbs.push_back(nb[i]);
        }
        i = j;
    }
    dom.nb_count = static_cast<int>(v.nbs.size()) - dom.nb_start;
    bool loop = false;
    dom.sign = internal::generator_sign(minus, n_not_b, a, loop);
    dom.loop = loop;
    dom.nb_ready = true;
}

int LocalWeightUpdater::column_of(View& v, const std::vector<uint8_t>& codes, int id) {
    if (id >= n_) {
        return -1;
    }
    int d = domain_of(v, codes, id);
    const Dom& dom = v.doms[d];
    return (dom.root == id && dom.all_k) ? d : -1;
}

void LocalWeightUpdater::add(int id) {
    if (in_set_[id] != epoch_) {
        in_set_[id] = epoch_;
        set_.push_back(id);
    }
}

// Grows set_ until every listed column's H block in this view is included.
void LocalWeightUpdater::close_blocks(View& v, const std::vector<uint8_t>& codes) {
    for (size_t i = 0; i < set_.size(); ++i) {
        int c = column_of(v, codes, set_[i]);
        if (c < 0) {
            continue;
        }
        ensure_neighbors(v, codes, c);
        scratch_.assign(v.nbs.begin() + v.doms[c].nb_start,
                        v.nbs.begin() + v.doms[c].nb_start + v.doms[c].nb_count);
        if (v.doms[c].loop) {
            scratch_.push_back(v.doms[c].root);
        }
        // Columns sharing a row r: r itself when looped, and every all-K E-neighbor of r.
        rows_.swap(scratch_);
        for (int r : rows_) {
            if (r >= n_) {
                continue;  // a partner row only touches its own leg's domain, which is c
            }
            int e = domain_of(v, codes, r);
            if (v.doms[e].all_k) {
                ensure_neighbors(v, codes, e);
                if (v.doms[e].loop) {
                    add(v.doms[e].root);
                }
            }
            // Only K sites can belong to an all-K neighbor.
            nb_scratch_.clear();
            uint8_t axis = v.doms[e].axis;
            int start = v.doms[e].start;
            int count = v.doms[e].count;
            for (int k = 0; k < count; ++k) {
                int s = v.sites[start + k];
                for (int slot = 0; slot < 4; ++slot) {
                    int j = port_[4 * s + slot];
                    if (j >= 0 && is_k(codes[j]) && axis_of(codes[j]) != axis) {
                        int u = domain_of(v, codes, j);
                        if (v.doms[u].all_k) {
                            nb_scratch_.push_back(v.doms[u].root);
                        }
                    }
                }
            }
            std::sort(nb_scratch_.begin(), nb_scratch_.end());
            for (size_t a = 0; a < nb_scratch_.size();) {
                size_t b = a;
                while (b < nb_scratch_.size() && nb_scratch_[b] == nb_scratch_[a]) {
                    ++b;
                }
                if ((b - a) & 1) {
                    add(nb_scratch_[a]);
                }
                a = b;
            }
        }
    }
}

bool LocalWeightUpdater::block_kernel(View& v, const std::vector<uint8_t>& codes, int& kernel_dim) {
    std::vector<int>& cols_idx = cols_scratch_;
    cols_idx.clear();
    for (int id : set_) {
        int c = column_of(v, codes, id);
        if (c >= 0) {
            ensure_neighbors(v, codes, c);
            cols_idx.push_back(c);
        }
    }
    if (cols_idx.empty()) {
        return true;
    }
    std::vector<internal::Column> cols;
    for (int c : cols_idx) {
        const Dom& d = v.doms[c];
        const int* base = v.nbs.data() + d.nb_start;
        cols.push_back({d.root, base, base + d.nb_count, d.loop, d.sign, d.count});
    }
    return internal::kernel_block(cols, kernel_dim);
}

WeightResult LocalWeightUpdater::propose(std::vector<uint8_t>& codes, const WeightResult& current, int site,
                                         uint8_t proposal) {
    if (!current.compatible) {
        throw std::logic_error("local update needs a compatible current state");
    }
    ++epoch_;
    if (epoch_ == 0) {
        for (View& v : views_) {
            std::fill(v.stamp.begin(), v.stamp.end(), 0);
        }
        std::fill(in_set_.begin(), in_set_.end(), 0);
        std::fill(region_mark_.begin(), region_mark_.end(), 0);
        epoch_ = 1;
    }
    for (View& v : views_) {
        v.doms.clear();
        v.sites.clear();
        v.nbs.clear();
    }
    set_.clear();
    region_.clear();

    uint8_t old = codes[site];
    View& before = views_[0];
    View& after = views_[1];

    WeightResult r = current;
    r.num_K += static_cast<int>(is_k(proposal)) - static_cast<int>(is_k(old));
    r.num_Fz += static_cast<int>(proposal == 2) - static_cast<int>(old == 2);
    for (int slot = 0; slot < 4; ++slot) {
        int j = port_[4 * site + slot];
        if (j >= 0) {
            r.raw_edges += static_cast<int>(axis_of(codes[j]) != axis_of(proposal)) -
                           static_cast<int>(axis_of(codes[j]) != axis_of(old));
        }
    }

    // Region: domains of the site and its neighbors (the same site set before and after).
    auto add_region = [&](int d) {
        const Dom& dom = before.doms[d];
        for (int i = 0; i < dom.count; ++i) {
            int s = before.sites[dom.start + i];
            if (region_mark_[s] != epoch_) {
                region_mark_[s] = epoch_;
                region_.push_back(s);
            }
        }
    };
    add_region(domain_of(before, codes, site));
    for (int slot = 0; slot < 4; ++slot) {
        int j = port_[4 * site + slot];
        if (j >= 0) {
            add_region(domain_of(before, codes, j));
        }
    }

    int domains_before = 0;
    for (int s : region_) {
        Dom dom = before.doms[domain_of(before, codes, s)];
        domains_before += dom.root == s;
        if (dom.all_k) {
            add(dom.root);
        }
        for (int slot = 0; slot < 4; ++slot) {
            int j = port_[4 * s + slot];
            if (j >= 0 && region_mark_[j] != epoch_ && is_k(codes[j])) {
                int e = domain_of(before, codes, j);
                if (before.doms[e].all_k) {
                    add(before.doms[e].root);
                }
            }
        }
    }

    codes[site] = proposal;
    int domains_after = 0;
    for (int s : region_) {
        Dom dom = after.doms[domain_of(after, codes, s)];
        domains_after += dom.root == s;
        if (dom.all_k) {
            add(dom.root);
        }
    }
    r.num_vertices += domains_after - domains_before;

    size_t size;
    do {
        size = set_.size();
        codes[site] = old;
        close_blocks(before, codes);
        codes[site] = proposal;
        close_blocks(after, codes);
    } while (set_.size() != size);

    int k_after = 0;
    bool compatible = block_kernel(after, codes, k_after);
    codes[site] = old;
    int k_before = 0;
    if (!block_kernel(before, codes, k_before)) {
        throw std::logic_error("current state is incompatible");
    }

    r.kernel_dim += k_after - k_before;
    r.compatible = compatible;
    r.deformation_log2_extra = 0.0;
    r.log2_weight =
        compatible ? -(int64_t{r.raw_edges} - r.num_vertices + 2 * int64_t{r.num_K} - r.kernel_dim) : 0;
    return r;
}

}  // namespace aklt
