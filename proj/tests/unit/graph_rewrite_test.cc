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

#include <gtest/gtest.h>

#include "aklt/pipeline.h"
#include "aklt/sampler.h"

namespace aklt {

namespace {

SimpleGraph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    SimpleGraph g;
    for (int i = 0; i < n; ++i) {
        g.add_vertex({});
    }
    for (auto [u, v] : edges) {
        g.add_edge(u, v);
    }
    return g;
}

SimpleGraph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            e.emplace_back(i, j);
        }
    }
    return make_graph(n, e);
}

}  // namespace

TEST(GraphRules, ZDelete) {
    SimpleGraph tri = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    z_delete(tri, 2);
    EXPECT_EQ(tri.edges(), (std::vector<std::pair<int, int>>{{0, 1}}));
    EXPECT_FALSE(tri.alive(2));
    EXPECT_THROW(z_delete(tri, 2), GraphRewriteError);

    SimpleGraph star = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
    z_delete(star, 0);
    EXPECT_EQ(star.num_edges(), 0);
    EXPECT_EQ(star.num_alive(), 3);
}

TEST(GraphRules, LocalComplement) {
    SimpleGraph path = make_graph(3, {{0, 1}, {1, 2}});
    local_complement(path, 1);
    EXPECT_TRUE(path.has_edge(0, 2));

    SimpleGraph k4 = complete(4);
    local_complement(k4, 0);
    EXPECT_EQ(k4.edges(), (std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {0, 3}}));

    SimpleGraph leaf = make_graph(2, {{0, 1}});
    SimpleGraph before = leaf;
    local_complement(leaf, 0);
    EXPECT_EQ(leaf, before);
}

TEST(GraphRules, LocalComplementIsAnInvolution) {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + static_cast<int>(rng.below(8));
        SimpleGraph g = make_graph(n, {});
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (rng.bernoulli(0.4)) {
                    g.add_edge(u, v);
                }
            }
        }
        int v = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
        SimpleGraph h = g;
        local_complement(h, v);
        local_complement(h, v);
        EXPECT_EQ(g, h);
    }
}

TEST(GraphRules, YDelete) {
    SimpleGraph path = make_graph(3, {{0, 1}, {1, 2}});
    y_delete(path, 1);
    EXPECT_EQ(path.edges(), (std::vector<std::pair<int, int>>{{0, 2}}));

    SimpleGraph lone = make_graph(2, {});
    y_delete(lone, 0);
    EXPECT_EQ(lone.num_alive(), 1);

    SimpleGraph claw = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
    y_delete(claw, 0);
    EXPECT_EQ(claw.edges(), (std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}}));
}

TEST(GraphRules, SimpleGraphRejectsSelfLoops) {
    SimpleGraph g = make_graph(2, {});
    EXPECT_THROW(g.add_edge(1, 1), GraphRewriteError);
}

TEST(Planarity, SmallGraphs) {
    EXPECT_TRUE(is_planar(complete(4)));
    EXPECT_FALSE(is_planar(complete(5)));
    std::vector<std::pair<int, int>> k33;
    for (int a = 0; a < 3; ++a) {
        for (int b = 3; b < 6; ++b) {
            k33.emplace_back(a, b);
        }
    }
    EXPECT_FALSE(is_planar(make_graph(6, k33)));
    EXPECT_TRUE(kuratowski_subgraph(complete(4)).empty());
    EXPECT_EQ(kuratowski_subgraph(complete(5)).size(), 10u);
}

TEST(Planarity, DeadVerticesIgnored) {
    SimpleGraph k5 = complete(5);
    z_delete(k5, 4);
    EXPECT_TRUE(is_planar(k5));
}

namespace {

SimpleGraph labelled(int n, const std::vector<std::pair<int, int>>& edges, const std::vector<int>& sites) {
    SimpleGraph g;
    for (int i = 0; i < n; ++i) {
        GraphVertex v;
        v.sites = sites.empty() ? 1 : sites[i];
        g.add_vertex(v);
    }
    for (auto [u, v] : edges) {
        g.add_edge(u, v);
    }
    return g;
}

}  // namespace

TEST(Thin, IsolatedXRemovesItsNeighbors) {
    // 0 is X-measured with neighbors 1, 2, 3; 4 hangs off 1.
    SimpleGraph g = labelled(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}}, {});
    std::vector<Measured> labels(5, Measured::unmeasured);
    labels[0] = Measured::x_measured;
    ThinResult r = thin(g, labels);
    EXPECT_EQ(r.graph.num_alive(), 1);
    EXPECT_TRUE(r.graph.alive(4));
    EXPECT_EQ(r.stats.z_measured, 3);
    EXPECT_EQ(r.stats.measured, 1);
    EXPECT_DOUBLE_EQ(r.stats.r0, 0.2);
    EXPECT_DOUBLE_EQ(r.stats.r1, 0.6);
}

TEST(Thin, AdjacentMeasuredClusterExcisedTogether) {
    // X at 0, Y at 1, adjacent; ring 2..5 encloses them; 6 is outside.
    SimpleGraph g = labelled(7, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 6}}, {});
    std::vector<Measured> labels(7, Measured::unmeasured);
    labels[0] = Measured::x_measured;
    labels[1] = Measured::y_measured;
    ThinResult r = thin(g, labels);
    EXPECT_EQ(r.stats.excised_clusters, 1);
    EXPECT_EQ(r.stats.z_measured, 4);
    EXPECT_EQ(r.graph.num_alive(), 1);
    EXPECT_TRUE(r.graph.alive(6));
}

TEST(Thin, SmallYWithFiveNeighbors) {
    // 2-site Y domain 0 with neighbors 1..5: 1 and 2 are Z-deleted, triangle on 3, 4, 5.
    SimpleGraph g = labelled(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}, {2, 1, 1, 1, 1, 1});
    std::vector<Measured> labels(6, Measured::unmeasured);
    labels[0] = Measured::y_measured;
    ThinResult r = thin(g, labels);
    EXPECT_EQ(r.stats.z_measured, 2);
    EXPECT_EQ(r.stats.y_rule, 1);
    EXPECT_EQ(r.graph.edges(), (std::vector<std::pair<int, int>>{{3, 4}, {3, 5}, {4, 5}}));
}

TEST(Thin, LargeYIsExcised) {
    SimpleGraph g = labelled(3, {{0, 1}, {0, 2}}, {3, 1, 1});
    std::vector<Measured> labels(3, Measured::unmeasured);
    labels[0] = Measured::y_measured;
    ThinResult r = thin(g, labels);
    EXPECT_EQ(r.graph.num_alive(), 0);
    EXPECT_EQ(r.stats.excised_clusters, 1);
}

TEST(Thin, RejectsMissingLabels) {
    SimpleGraph g = labelled(3, {{0, 1}}, {});
    EXPECT_THROW(thin(g, std::vector<Measured>(2, Measured::unmeasured)), GraphRewriteError);
}

TEST(Thin, SampledGraphsArePlanarAndCountsReconcile) {
    for (int L : {8, 16}) {
        EnsembleParams p;
        p.L = L;
        p.samples = 20;
        p.chains = 2;
        p.burn_in_sweeps = 30;
        p.seed = 9;
        p.keep_configs = true;
        Ensemble e = sample_ensemble(p);
        Lattice lat(L, L, BoundaryMode::open);
        for (size_t i = 0; i < e.samples.size(); ++i) {
            const ThinnedSample& s = e.samples[i];
            EXPECT_TRUE(is_planar(s.graph));
            const ThinningStats& st = s.stats;
            EXPECT_EQ(st.vertices_before, st.vertices_after + st.measured + st.z_measured + st.partners);
            EXPECT_LE(st.r0 + st.r1, 1.0);
            DomainGraph g = build_domain_graph(lat, e.configs[i]);
            // Domains are connected regions of a planar lattice, so G0 is planar too.
            EXPECT_TRUE(is_planar(simple_graph(lat, g)));
        }
    }
}

}  // namespace aklt
