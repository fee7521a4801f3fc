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

#ifndef AKLT_LATTICE_H
#define AKLT_LATTICE_H

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace aklt {

enum class BoundaryMode : uint8_t { open, torus };

std::string_view to_string(BoundaryMode mode);
BoundaryMode parse_boundary_mode(std::string_view text);

/// The four virtual-qubit legs of a site, one per lattice direction.
enum class Slot : uint8_t { right = 0, up = 1, left = 2, down = 3 };

inline constexpr std::array<Slot, 4> kSlots = {Slot::right, Slot::up, Slot::left, Slot::down};

struct SiteCoord {
    int x;
    int y;
};

/// A lattice edge carrying one singlet between virtual qubits (a, slot_a) and (b, slot_b).
struct Edge {
    int a;
    Slot slot_a;
    int b;
    Slot slot_b;
};

/// A dangling virtual qubit on an open boundary; in the AKLT construction it
/// pairs with an external spin-1/2 partner.
struct BoundaryLeg {
    int site;
    Slot slot;
};

/// What sits on the other end of a site's leg: another site (through an edge)
/// or a boundary partner (through a leg).
struct Port {
    bool is_leg;
    int index;     // edge index or leg index
    int neighbor;  // neighbor site, -1 for legs
};

class DimensionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Square-lattice geometry. Sites are indexed row-major: site = y * width + x.
/// Immutable after construction.
class Lattice {
   public:
    Lattice(int width, int height, BoundaryMode mode);

    int width() const { return width_; }
    int height() const { return height_; }
    BoundaryMode mode() const { return mode_; }
    int num_sites() const { return width_ * height_; }

    int site_index(int x, int y) const { return y * width_ + x; }
    SiteCoord coord(int site) const { return {site % width_, site / width_}; }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<BoundaryLeg>& boundary_legs() const { return legs_; }

    const Port& port(int site, Slot slot) const { return ports_[4 * site + static_cast<int>(slot)]; }
    int neighbor(int site, Slot slot) const { return port(site, slot).neighbor; }

    /// +1 on sublattice A (x + y even), -1 on sublattice B.
    int sublattice_sign(int site) const;

    /// Number of virtual qubits: four per site.
    int num_virtual_qubits() const { return 4 * num_sites(); }

   private:
    int width_;
    int height_;
    BoundaryMode mode_;
    std::vector<Edge> edges_;
    std::vector<BoundaryLeg> legs_;
    std::vector<Port> ports_;
};

Lattice build_lattice(int width, int height, BoundaryMode mode);

int sublattice_sign(const Lattice& lattice, int site);

}  // namespace aklt

#endif
