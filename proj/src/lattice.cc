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

#include "aklt/lattice.h"

#include <string>

namespace aklt {

std::string_view to_string(BoundaryMode mode) {
    return mode == BoundaryMode::open ? "open" : "torus";
}

BoundaryMode parse_boundary_mode(std::string_view text) {
    if (text == "open") {
        return BoundaryMode::open;
    }
    if (text == "torus") {
        return BoundaryMode::torus;
    }
    throw std::invalid_argument("unknown boundary mode '" + std::string(text) + "' (expected open or torus)");
}

Lattice::Lattice(int width, int height, BoundaryMode mode) : width_(width), height_(height), mode_(mode) {
    if (width < 1 || height < 1) {
        throw DimensionError("lattice dimensions must be positive, got " + std::to_string(width) + "x" +
                             std::to_string(height));
    }
    if (mode == BoundaryMode::torus) {
        if (width < 2 || height < 2) {
            throw DimensionError("torus lattice needs width >= 2 and height >= 2");
        }
        if (width % 2 != 0 || height % 2 != 0) {
            throw DimensionError("torus lattice needs even width and height to be bipartite");
        }
    }

    ports_.assign(4 * num_sites(), Port{true, -1, -1});
    auto connect = [&](int a, Slot sa, int b, Slot sb) {
        int index = static_cast<int>(edges_.size());
        edges_.push_back({a, sa, b, sb});
        ports_[4 * a + static_cast<int>(sa)] = {false, index, b};
        ports_[4 * b + static_cast<int>(sb)] = {false, index, a};
    };

    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            int s = site_index(x, y);
            if (x + 1 < width) {
                connect(s, Slot::right, site_index(x + 1, y), Slot::left);
            } else if (mode == BoundaryMode::torus) {
                connect(s, Slot::right, site_index(0, y), Slot::left);
            }
            if (y + 1 < height) {
                connect(s, Slot::up, site_index(x, y + 1), Slot::down);
            } else if (mode == BoundaryMode::torus) {
                connect(s, Slot::up, site_index(x, 0), Slot::down);
            }
        }
    }

    for (int s = 0; s < num_sites(); ++s) {
        for (Slot slot : kSlots) {
            Port& p = ports_[4 * s + static_cast<int>(slot)];
            if (p.is_leg) {
                p.index = static_cast<int>(legs_.size());
                legs_.push_back({s, slot});
            }
        }
    }
}

int Lattice::sublattice_sign(int site) const {
    SiteCoord c = coord(site);
    return (c.x + c.y) % 2 == 0 ? +1 : -1;
}

Lattice build_lattice(int width, int height, BoundaryMode mode) {
    return Lattice(width, height, mode);
}

int sublattice_sign(const Lattice& lattice, int site) {
    if (site < 0 || site >= lattice.num_sites()) {
        throw std::out_of_range("site index out of range");
    }
    return lattice.sublattice_sign(site);
}

}  // namespace aklt
