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

#ifndef AKLT_DOMAIN_GRAPH_H
#define AKLT_DOMAIN_GRAPH_H

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aklt/lattice.h"
#include "aklt/pauli.h"
#include "aklt/povm.h"

namespace aklt {

/// Axis b used for the logical X of a domain of axis a (a = z -> x, x -> z, y -> z).
Axis logical_x_axis(Axis a);

/// The remaining axis, neither a nor b(a) (z -> y, x -> y, y -> x). Edges to
/// neighbor domains of this axis count toward n_{!=b}.
Axis third_axis(Axis a);

/// A vertex of the encoded graph: either a maximal connected set of
/// same-axis sites, or the spin-1/2 partner of one open-boundary leg.
struct Domain {
    int id = -1;
    std::optional<Axis> axis;  // unset for partners
    std::vector<int> sites;    // empty for partners
    bool all_K = false;
    bool is_boundary_partner = false;
    int leg = -1;  // partners only: index into Lattice::boundary_legs()
};

/// Real domains first (ordered by smallest site index), then one partner per
/// boundary leg in leg order.
std::vector<Domain> find_domains(const Lattice& lattice, const PovmConfig& config);

struct Neighbor {
    int vertex;
    int multiplicity;  // number of lattice edges or legs joining the two vertices
};

/// Stabilizer generator in sparse form: sign * (X or Y on center) * prod Z_v over z_support.
struct Generator {
    int center = -1;
    PauliLetter center_letter = PauliLetter::X;
    int sign = +1;
    std::vector<int> z_support;  // sorted
};

class DomainGraph {
   public:
    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_real() const { return num_real_; }
    int num_partners() const { return num_vertices() - num_real_; }

    const std::vector<Domain>& vertices() const { return vertices_; }
    const Domain& vertex(int v) const { return vertices_[v]; }

    int domain_of_site(int site) const { return site_domain_[site]; }
    int partner_of_leg(int leg) const { return num_real_ + leg; }

    /// Every vertex sharing at least one lattice edge or leg with v, sorted by id.
    const std::vector<Neighbor>& neighbors(int v) const { return adjacency_[v]; }
    int multiplicity(int u, int v) const;

    /// Neighbors joined by an odd number of edges (the reduced graph E).
    std::vector<int> e_neighbors(int v) const;
    std::vector<std::pair<int, int>> reduced_edges() const;

    bool self_loop(int v) const { return self_loop_[v]; }
    std::vector<int> self_loops() const;

    /// Sum of multiplicities to neighbor domains of axis third_axis(a_v).
    int n_not_b(int v) const { return n_not_b_[v]; }
    int internal_edges(int v) const { return internal_edges_[v]; }

    /// |calE|: lattice edges between distinct domains plus boundary legs.
    int raw_edge_total() const { return raw_edge_total_; }

    const Generator& generator(int v) const { return generators_[v]; }

    friend DomainGraph build_domain_graph(const Lattice& lattice, const PovmConfig& config,
                                          std::vector<Domain> domains);

   private:
    int num_real_ = 0;
    int raw_edge_total_ = 0;
    std::vector<Domain> vertices_;
    std::vector<int> site_domain_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::vector<bool> self_loop_;
    std::vector<int> n_not_b_;
    std::vector<int> internal_edges_;
    std::vector<Generator> generators_;
};

/// Throws std::logic_error if two adjacent same-axis sites fall in different domains.
DomainGraph build_domain_graph(const Lattice& lattice, const PovmConfig& config, std::vector<Domain> domains);
DomainGraph build_domain_graph(const Lattice& lattice, const PovmConfig& config);

/// Dense form of generator(v) on num_vertices() logical qubits.
SignedPauli stabilizer_generator(const DomainGraph& graph, int vertex);

enum class Measured : uint8_t { unmeasured, x_measured, y_measured };

std::string_view to_string(Measured m);

/// All-K real domains are X-measured without a self-loop and Y-measured with one.
std::vector<Measured> classify_measured(const DomainGraph& graph, const PovmConfig& config);

/// Edge-list text: "# vertices <|V|> raw_edges <|calE|> real_domains <n>",
/// "# self_loops <v...>", then one "u v" line per reduced edge.
std::string export_edge_list(const DomainGraph& graph);

}  // namespace aklt

#endif
