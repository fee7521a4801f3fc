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

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>
#include <iterator>

#include "aklt/graph_rewrite.h"

namespace aklt {

namespace {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;

// Alive subgraph, compacted; `back` maps boost vertices to graph vertices.
BoostGraph to_boost(const SimpleGraph& graph, std::vector<int>& back) {
    std::vector<int> index(graph.num_vertices(), -1);
    back.clear();
    for (int v = 0; v < graph.num_vertices(); ++v) {
        if (graph.alive(v)) {
            index[v] = static_cast<int>(back.size());
            back.push_back(v);
        }
    }
    BoostGraph g(back.size());
    int e = 0;
    for (const auto& [u, v] : graph.edges()) {
        boost::add_edge(index[u], index[v], e++, g);
    }
    return g;
}

}  // namespace

bool is_planar(const SimpleGraph& graph) {
    std::vector<int> back;
    BoostGraph g = to_boost(graph, back);
    return boost::boyer_myrvold_planarity_test(g);
}

std::vector<std::pair<int, int>> kuratowski_subgraph(const SimpleGraph& graph) {
    std::vector<int> back;
    BoostGraph g = to_boost(graph, back);
    using EdgeT = boost::graph_traits<BoostGraph>::edge_descriptor;
    std::vector<EdgeT> found;
    bool planar = boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = g,
                                                      boost::boyer_myrvold_params::kuratowski_subgraph =
                                                          std::back_inserter(found));
    std::vector<std::pair<int, int>> out;
    if (planar) {
        return out;
    }
    for (const EdgeT& e : found) {
        int u = back[boost::source(e, g)];
        int v = back[boost::target(e, g)];
        out.emplace_back(std::min(u, v), std::max(u, v));
    }
    return out;
}

}  // namespace aklt
