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

#ifndef AKLT_GRAPH_REWRITE_H
#define AKLT_GRAPH_REWRITE_H

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aklt/domain_graph.h"
#include "aklt/lattice.h"

namespace aklt {

enum class VertexOrigin : uint8_t { domain, partner };

struct GraphVertex {
    double x = 0.0;  // mean site position
    double y = 0.0;
    bool alive = true;
    VertexOrigin origin = VertexOrigin::domain;
    int sites = 0;
    bool touches_left = false;   // some site at x = 0
    bool touches_right = false;  // some site at x = width - 1
};

class GraphRewriteError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Undirected simple graph with per-vertex alive flags. Dead vertices keep their
/// index and have no edges. Neighbor lists are kept sorted.
class SimpleGraph {
   public:
    int add_vertex(const GraphVertex& v);
    /// Throws on self-loops or dead endpoints; adding an existing edge is a no-op.
    void add_edge(int u, int v);
    void remove_edge(int u, int v);
    void toggle_edge(int u, int v);
    bool has_edge(int u, int v) const;

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_alive() const;
    int num_edges() const;
    bool alive(int v) const { return vertices_[v].alive; }
    const GraphVertex& vertex(int v) const { return vertices_[v]; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    std::vector<std::pair<int, int>> edges() const;

    /// Removes every edge at v and marks it dead.
    void kill(int v);

    bool operator==(const SimpleGraph& other) const;

   private:
    void check(int v) const;

    std::vector<GraphVertex> vertices_;
    std::vector<std::vector<int>> adj_;
};

/// G0 as a simple graph: reduced edges only, self-loops dropped, one vertex per
/// domain-graph vertex with the same index.
SimpleGraph simple_graph(const Lattice& lattice, const DomainGraph& graph);

/// Z measurement: v and its edges go away. Throws if v is dead.
void z_delete(SimpleGraph& graph, int v);

/// Complements the edge set among the neighbors of v.
void local_complement(SimpleGraph& graph, int v);

/// Y measurement: local complement at v, then remove v.
void y_delete(SimpleGraph& graph, int v);

struct ThinningStats {
    int real_domains = 0;
    int partners = 0;
    int measured = 0;         // X- or Y-measured real domains
    int z_measured = 0;       // real domains removed by an active Z measurement
    int excised_clusters = 0;
    int y_rule = 0;           // isolated small Y domains handled by local complementation
    int vertices_before = 0;  // alive vertices of G0, partners included
    int vertices_after = 0;
    double r0 = 0.0;
    double r1 = 0.0;
};

struct ThinResult {
    SimpleGraph graph;
    ThinningStats stats;
};

/// Planarity-restoring thinning. `labels` comes from classify_measured and must
/// cover every vertex.
ThinResult thin(SimpleGraph graph, const std::vector<Measured>& labels);

/// Planarity of the alive subgraph.
bool is_planar(const SimpleGraph& graph);

/// Edges of a Kuratowski subgraph (a subdivision of K5 or K3,3) of the alive
/// subgraph; empty when planar.
std::vector<std::pair<int, int>> kuratowski_subgraph(const SimpleGraph& graph);

}  // namespace aklt

#endif
