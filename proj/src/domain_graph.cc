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

#include "aklt/domain_graph.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "kernel_block.h"

namespace aklt {

Axis logical_x_axis(Axis a) { return a == Axis::z ? Axis::x : Axis::z; }

Axis third_axis(Axis a) { return a == Axis::y ? Axis::x : Axis::y; }

namespace {

int find_root(std::vector<int>& parent, int v) {
    while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    return v;
}

}  // namespace

std::vector<Domain> find_domains(const Lattice& lattice, const PovmConfig& config) {
    int n = lattice.num_sites();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (const Edge& e : lattice.edges()) {
        if (config[e.a].axis != config[e.b].axis) {
            continue;
        }
        int ra = find_root(parent, e.a);
        int rb = find_root(parent, e.b);
        if (ra != rb) {
            parent[std::max(ra, rb)] = std::min(ra, rb);
        }
    }

    std::vector<Domain> domains;
    std::vector<int> root_to_domain(n, -1);
    for (int s = 0; s < n; ++s) {
        int r = find_root(parent, s);
        if (root_to_domain[r] < 0) {
            root_to_domain[r] = static_cast<int>(domains.size());
            Domain d;
            d.id = root_to_domain[r];
            d.axis = config[s].axis;
            d.all_K = true;
            domains.push_back(d);
        }
        Domain& d = domains[root_to_domain[r]];
        d.sites.push_back(s);
        d.all_K = d.all_K && config[s].kind == Kind::K;
    }

    const auto& legs = lattice.boundary_legs();
    for (size_t leg = 0; leg < legs.size(); ++leg) {
        Domain p;
        p.id = static_cast<int>(domains.size());
        p.is_boundary_partner = true;
        p.leg = static_cast<int>(leg);
        domains.push_back(p);
    }
    return domains;
}

int DomainGraph::multiplicity(int u, int v) const {
    for (const Neighbor& nb : adjacency_[u]) {
        if (nb.vertex == v) {
            return nb.multiplicity;
        }
    }
    return 0;
}

std::vector<int> DomainGraph::e_neighbors(int v) const {
    std::vector<int> out;
    for (const Neighbor& nb : adjacency_[v]) {
        if (nb.multiplicity & 1) {
            out.push_back(nb.vertex);
        }
    }
    return out;
}

std::vector<std::pair<int, int>> DomainGraph::reduced_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < num_vertices(); ++u) {
        for (const Neighbor& nb : adjacency_[u]) {
            if (u < nb.vertex && (nb.multiplicity & 1)) {
                out.emplace_back(u, nb.vertex);
            }
        }
    }
    return out;
}

std::vector<int> DomainGraph::self_loops() const {
    std::vector<int> out;
    for (int v = 0; v < num_vertices(); ++v) {
        if (self_loop_[v]) {
            out.push_back(v);
        }
    }
    return out;
}

DomainGraph build_domain_graph(const Lattice& lattice, const PovmConfig& config, std::vector<Domain> domains) {
    DomainGraph g;
    g.vertices_ = std::move(domains);
    int nv = g.num_vertices();
    int num_real = 0;
    while (num_real < nv && !g.vertices_[num_real].is_boundary_partner) {
        ++num_real;
    }
    g.num_real_ = num_real;
    if (nv - num_real != static_cast<int>(lattice.boundary_legs().size())) {
        throw std::logic_error("partner count does not match boundary legs");
    }

    g.site_domain_.assign(lattice.num_sites(), -1);
    for (int v = 0; v < num_real; ++v) {
        for (int s : g.vertices_[v].sites) {
            g.site_domain_[s] = v;
        }
    }

    std::vector<std::map<int, int>> mult(nv);
    g.internal_edges_.assign(nv, 0);
    g.n_not_b_.assign(nv, 0);
    // Parity of the (-1) and lambda factors in each real domain's generator sign.
    std::vector<int> minus_parity(nv, 0);

    for (const Edge& e : lattice.edges()) {
        int da = g.site_domain_[e.a];
        int db = g.site_domain_[e.b];
        if (da == db) {
            g.internal_edges_[da] += 1;
            minus_parity[da] ^= 1;
            continue;
        }
        if (config[e.a].axis == config[e.b].axis) {
            throw std::logic_error("adjacent same-axis sites in different domains");
        }
        mult[da][db] += 1;
        mult[db][da] += 1;
        g.raw_edge_total_ += 1;
        for (int side = 0; side < 2; ++side) {
            int c = side == 0 ? da : db;
            int mu = side == 0 ? db : da;
            int site_c = side == 0 ? e.a : e.b;
            int site_mu = side == 0 ? e.b : e.a;
            Axis ac = *g.vertices_[c].axis;
            minus_parity[c] ^= 1;
            if (lattice.sublattice_sign(site_mu) < 0) {
                minus_parity[c] ^= 1;
            }
            if (*g.vertices_[mu].axis == third_axis(ac)) {
                g.n_not_b_[c] += 1;
                if (lattice.sublattice_sign(site_c) < 0) {
                    minus_parity[c] ^= 1;
                }
            }
        }
    }
    const auto& legs = lattice.boundary_legs();
    for (size_t leg = 0; leg < legs.size(); ++leg) {
        int p = g.partner_of_leg(static_cast<int>(leg));
        int d = g.site_domain_[legs[leg].site];
        mult[d][p] += 1;
        mult[p][d] += 1;
        g.raw_edge_total_ += 1;
        minus_parity[d] ^= 1;
    }

    g.adjacency_.assign(nv, {});
    for (int v = 0; v < nv; ++v) {
        for (const auto& [u, m] : mult[v]) {
            g.adjacency_[v].push_back({u, m});
        }
    }

    g.self_loop_.assign(nv, false);
    g.generators_.assign(nv, {});
    for (int v = 0; v < nv; ++v) {
        Generator& gen = g.generators_[v];
        gen.center = v;
        gen.z_support = g.e_neighbors(v);
        if (v >= num_real) {
            int site = legs[g.vertices_[v].leg].site;
            gen.center_letter = PauliLetter::X;
            gen.sign = -lattice.sublattice_sign(site);
            continue;
        }
        bool loop = false;
        gen.sign = internal::generator_sign(minus_parity[v], g.n_not_b_[v], *g.vertices_[v].axis, loop);
        g.self_loop_[v] = loop;
        gen.center_letter = loop ? PauliLetter::Y : PauliLetter::X;
    }
    return g;
}

DomainGraph build_domain_graph(const Lattice& lattice, const PovmConfig& config) {
    return build_domain_graph(lattice, config, find_domains(lattice, config));
}

SignedPauli stabilizer_generator(const DomainGraph& graph, int vertex) {
    const Generator& gen = graph.generator(vertex);
    size_t nv = static_cast<size_t>(graph.num_vertices());
    SignedPauli p(nv);
    p.set_letter(static_cast<size_t>(gen.center), gen.center_letter);
    for (int u : gen.z_support) {
        p.zs.set(static_cast<size_t>(u), true);
    }
    p.phase = gen.sign > 0 ? 0 : 2;
    return p;
}

std::string_view to_string(Measured m) {
    switch (m) {
        case Measured::unmeasured:
            return "unmeasured";
        case Measured::x_measured:
            return "X";
        case Measured::y_measured:
            return "Y";
    }
    return "?";
}

std::vector<Measured> classify_measured(const DomainGraph& graph, const PovmConfig& config) {
    std::vector<Measured> out(static_cast<size_t>(graph.num_vertices()), Measured::unmeasured);
    for (int v = 0; v < graph.num_real(); ++v) {
        const Domain& d = graph.vertex(v);
        bool all_K = std::all_of(d.sites.begin(), d.sites.end(),
                                 [&](int s) { return config[s].kind == Kind::K; });
        if (all_K) {
            out[v] = graph.self_loop(v) ? Measured::y_measured : Measured::x_measured;
        }
    }
    return out;
}

std::string export_edge_list(const DomainGraph& graph) {
    std::ostringstream out;
    out << "# vertices " << graph.num_vertices() << " raw_edges " << graph.raw_edge_total() << " real_domains "
        << graph.num_real() << "\n";
    out << "# self_loops";
    for (int v : graph.self_loops()) {
        out << ' ' << v;
    }
    out << "\n";
    for (const auto& [u, v] : graph.reduced_edges()) {
        out << u << ' ' << v << "\n";
    }
    return out.str();
}

}  // namespace aklt
