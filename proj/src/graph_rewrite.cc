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

#include "aklt/graph_rewrite.h"

#include <algorithm>
#include <string>

namespace aklt {

int SimpleGraph::add_vertex(const GraphVertex& v) {
    vertices_.push_back(v);
    adj_.emplace_back();
    return num_vertices() - 1;
}

void SimpleGraph::check(int v) const {
    if (v < 0 || v >= num_vertices()) {
        throw GraphRewriteError("vertex " + std::to_string(v) + " out of range");
    }
}

void SimpleGraph::add_edge(int u, int v) {
    check(u);
    check(v);
    if (u == v) {
        throw GraphRewriteError("self-loop at vertex " + std::to_string(u));
    }
    if (!alive(u) || !alive(v)) {
        throw GraphRewriteError("edge to a dead vertex");
    }
    auto insert = [](std::vector<int>& list, int x) {
        auto it = std::lower_bound(list.begin(), list.end(), x);
        if (it == list.end() || *it != x) {
            list.insert(it, x);
        }
    };
    insert(adj_[u], v);
    insert(adj_[v], u);
}

void SimpleGraph::remove_edge(int u, int v) {
    check(u);
    check(v);
    auto erase = [](std::vector<int>& list, int x) {
        auto it = std::lower_bound(list.begin(), list.end(), x);
        if (it != list.end() && *it == x) {
            list.erase(it);
        }
    };
    erase(adj_[u], v);
    erase(adj_[v], u);
}

bool SimpleGraph::has_edge(int u, int v) const {
    check(u);
    check(v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

void SimpleGraph::toggle_edge(int u, int v) {
    if (has_edge(u, v)) {
        remove_edge(u, v);
    } else {
        add_edge(u, v);
    }
}

int SimpleGraph::num_alive() const {
    return static_cast<int>(std::count_if(vertices_.begin(), vertices_.end(), [](const GraphVertex& v) { return v.alive; }));
}

int SimpleGraph::num_edges() const {
    size_t total = 0;
    for (const auto& list : adj_) {
        total += list.size();
    }
    return static_cast<int>(total / 2);
}

std::vector<std::pair<int, int>> SimpleGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < num_vertices(); ++u) {
        for (int v : adj_[u]) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

void SimpleGraph::kill(int v) {
    check(v);
    for (int u : adj_[v]) {
        auto& list = adj_[u];
        list.erase(std::lower_bound(list.begin(), list.end(), v));
    }
    adj_[v].clear();
    vertices_[v].alive = false;
}

bool SimpleGraph::operator==(const SimpleGraph& other) const {
    if (adj_ != other.adj_ || vertices_.size() != other.vertices_.size()) {
        return false;
    }
    for (size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i].alive != other.vertices_[i].alive) {
            return false;
        }
    }
    return true;
}

SimpleGraph simple_graph(const Lattice& lattice, const DomainGraph& graph) {
    SimpleGraph g;
    const auto& legs = lattice.boundary_legs();
    for (int v = 0; v < graph.num_vertices(); ++v) {
        const Domain& d = graph.vertex(v);
        GraphVertex gv;
        if (d.is_boundary_partner) {
            const BoundaryLeg& leg = legs[d.leg];
            SiteCoord c = lattice.coord(leg.site);
            static constexpr double kDx[4] = {0.5, 0.0, -0.5, 0.0};
            static constexpr double kDy[4] = {0.0, 0.5, 0.0, -0.5};
            gv.origin = VertexOrigin::partner;
            gv.x = c.x + kDx[static_cast<int>(leg.slot)];
            gv.y = c.y + kDy[static_cast<int>(leg.slot)];
        } else {
            double sx = 0.0;
            double sy = 0.0;
            for (int s : d.sites) {
                SiteCoord c = lattice.coord(s);
                sx += c.x;
                sy += c.y;
                gv.touches_left = gv.touches_left || c.x == 0;
                gv.touches_right = gv.touches_right || c.x == lattice.width() - 1;
            }
            gv.sites = static_cast<int>(d.sites.size());
            gv.x = sx / gv.sites;
            gv.y = sy / gv.sites;
        }
        g.add_vertex(gv);
    }
    for (const auto& [u, v] : graph.reduced_edges()) {
        g.add_edge(u, v);
    }
    return g;
}

void z_delete(SimpleGraph& graph, int v) {
    if (v < 0 || v >= graph.num_vertices() || !graph.alive(v)) {
        throw GraphRewriteError("z_delete of a dead or missing vertex " + std::to_string(v));
    }
    graph.kill(v);
}

void local_complement(SimpleGraph& graph, int v) {
    if (v < 0 || v >= graph.num_vertices() || !graph.alive(v)) {
        throw GraphRewriteError("local complement at a dead or missing vertex " + std::to_string(v));
    }
    std::vector<int> nb = graph.neighbors(v);
    for (size_t i = 0; i < nb.size(); ++i) {
        for (size_t j = i + 1; j < nb.size(); ++j) {
            graph.toggle_edge(nb[i], nb[j]);
        }
    }
}

void y_delete(SimpleGraph& graph, int v) {
    local_complement(graph, v);
    z_delete(graph, v);
}

ThinResult thin(SimpleGraph graph, const std::vector<Measured>& labels) {
    int nv = graph.num_vertices();
    if (static_cast<int>(labels.size()) != nv) {
        throw GraphRewriteError("classification covers " + std::to_string(labels.size()) + " of " +
                                std::to_string(nv) + " vertices");
    }
    ThinningStats st;
    for (int v = 0; v < nv; ++v) {
        bool partner = graph.vertex(v).origin == VertexOrigin::partner;
        if (partner) {
            ++st.partners;
            if (labels[v] != Measured::unmeasured) {
                throw GraphRewriteError("partner vertex " + std::to_string(v) + " carries a measurement");
            }
        } else {
            ++st.real_domains;
            st.measured += labels[v] != Measured::unmeasured;
        }
        st.vertices_before += graph.alive(v);
    }

    // Partners are degree-1 appendages; removing them first keeps them out of the
    // degree counts below.
    for (int v = 0; v < nv; ++v) {
        if (graph.vertex(v).origin == VertexOrigin::partner && graph.alive(v)) {
            z_delete(graph, v);
        }
    }

    auto measured = [&](int v) { return labels[v] != Measured::unmeasured; };

    // Clusters of adjacent measured vertices.
    std::vector<int> cluster_of(nv, -1);
    std::vector<std::vector<int>> clusters;
    for (int v = 0; v < nv; ++v) {
        if (!measured(v) || cluster_of[v] >= 0 || !graph.alive(v)) {
            continue;
        }
        int id = static_cast<int>(clusters.size());
        clusters.emplace_back();
        std::vector<int> stack{v};
        cluster_of[v] = id;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            clusters[id].push_back(u);
            for (int w : graph.neighbors(u)) {
                if (measured(w) && cluster_of[w] < 0) {
                    cluster_of[w] = id;
                    stack.push_back(w);
                }
            }
        }
    }

    std::vector<int> isolated_y;
    for (const auto& cluster : clusters) {
        bool excise = cluster.size() > 1;
        for (int u : cluster) {
            excise = excise || labels[u] == Measured::x_measured || graph.vertex(u).sites > 2;
        }
        if (!excise) {
            isolated_y.push_back(cluster[0]);
            continue;
        }
        ++st.excised_clusters;
        for (int u : cluster) {
            std::vector<int> nb = graph.neighbors(u);
            for (int w : nb) {
                if (!measured(w) && graph.alive(w)) {
                    z_delete(graph, w);
                    ++st.z_measured;
                }
            }
        }
        for (int u : cluster) {
            z_delete(graph, u);
        }
    }

    std::sort(isolated_y.begin(), isolated_y.end());
    for (int v : isolated_y) {
        int deg = graph.degree(v);
        if (deg > 6) {
            throw GraphRewriteError("Y-measured vertex " + std::to_string(v) + " of degree " + std::to_string(deg));
        }
        if (deg > 3) {
            std::vector<int> nb = graph.neighbors(v);
            for (int i = 0; i < deg - 3; ++i) {
                z_delete(graph, nb[i]);
                ++st.z_measured;
            }
        }
        y_delete(graph, v);
        ++st.y_rule;
    }

    st.vertices_after = graph.num_alive();
    if (st.real_domains > 0) {
        st.r0 = static_cast<double>(st.measured) / st.real_domains;
        st.r1 = static_cast<double>(st.z_measured) / st.real_domains;
    }
    return {std::move(graph), st};
}

}  // namespace aklt
