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

#include "aklt/percolation.h"

#include <gtest/gtest.h>

#include <cmath>

namespace aklt {

namespace {

// w x h grid graph with left/right flags on the outer columns.
SimpleGraph grid(int w, int h) {
    SimpleGraph g;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            GraphVertex v;
            v.x = x;
            v.y = y;
            v.sites = 1;
            v.touches_left = x == 0;
            v.touches_right = x == w - 1;
            g.add_vertex(v);
        }
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (x + 1 < w) g.add_edge(y * w + x, y * w + x + 1);
            if (y + 1 < h) g.add_edge(y * w + x, (y + 1) * w + x);
        }
    }
    return g;
}

PercCurve line(int L, double slope, double intercept, double lo, double hi, int n) {
    PercCurve c;
    c.L = L;
    for (int i = 0; i < n; ++i) {
        double p = lo + (hi - lo) * i / (n - 1);
        PercPoint pt;
        pt.p_delete = p;
        pt.p_span = intercept + slope * p;
        c.points.push_back(pt);
    }
    return c;
}

}  // namespace

TEST(Spans, Basics) {
    EXPECT_FALSE(spans(SimpleGraph{}));

    SimpleGraph one;
    GraphVertex wide;
    wide.touches_left = wide.touches_right = true;
    one.add_vertex(wide);
    EXPECT_TRUE(spans(one));

    SimpleGraph pair;
    GraphVertex l, r;
    l.touches_left = true;
    r.touches_right = true;
    pair.add_vertex(l);
    pair.add_vertex(r);
    EXPECT_FALSE(spans(pair));
    pair.add_edge(0, 1);
    EXPECT_TRUE(spans(pair));
}

TEST(Spans, ComponentDecompositionAgrees) {
    SimpleGraph g = grid(6, 6);
    Rng rng(3);
    for (int t = 0; t < 100; ++t) {
        SimpleGraph h = g;
        delete_sites(h, 0.4, rng);
        // The graph spans iff some single component does.
        std::vector<int> comp(h.num_vertices(), -1);
        bool any = false;
        for (int v = 0; v < h.num_vertices(); ++v) {
            if (!h.alive(v) || comp[v] >= 0) continue;
            std::vector<char> keep(h.num_vertices(), 0);
            std::vector<int> stack{v};
            comp[v] = v;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                keep[u] = 1;
                for (int w : h.neighbors(u)) {
                    if (comp[w] < 0) {
                        comp[w] = v;
                        stack.push_back(w);
                    }
                }
            }
            any = any || spans(h, keep);
        }
        EXPECT_EQ(any, spans(h));
    }
}

TEST(DeleteSites, Extremes) {
    SimpleGraph g = grid(5, 5);
    Rng rng(1);
    SimpleGraph h = g;
    delete_sites(h, 0.0, rng);
    EXPECT_EQ(h, g);
    delete_sites(h, 1.0, rng);
    EXPECT_EQ(h.num_alive(), 0);
    EXPECT_FALSE(spans(h));
    EXPECT_THROW(delete_sites(h, 1.5, rng), PercolationError);
}

TEST(DeleteSites, SurvivorCountIsBinomial) {
    SimpleGraph g = grid(20, 20);
    Rng rng(7);
    double p = 0.3;
    int trials = 200;
    double total = 0.0;
    for (int t = 0; t < trials; ++t) {
        SimpleGraph h = g;
        delete_sites(h, p, rng);
        total += h.num_alive();
    }
    double n = 400.0 * trials;
    double sigma = std::sqrt(n * p * (1 - p));
    EXPECT_NEAR(total, (1 - p) * n, 3 * sigma);
}

TEST(SpanThreshold, MatchesExplicitDeletion) {
    SimpleGraph g = grid(8, 8);
    for (uint64_t t = 0; t < 50; ++t) {
        Rng a = Rng::stream(4, {t});
        double threshold = span_threshold(g, a);
        for (double p : {0.0, 0.2, 0.4, 0.5, 0.6}) {
            Rng b = Rng::stream(4, {t});
            SimpleGraph h = g;
            delete_sites(h, p, b);
            EXPECT_EQ(spans(h), p <= threshold) << t << " " << p;
        }
    }
}

TEST(EstimatePSpan, FullGridAndMonotone) {
    std::vector<SimpleGraph> samples(3, grid(10, 10));
    PercPoint zero = estimate_p_span(samples, 0.0, 20, 1);
    EXPECT_EQ(zero.p_span, 1.0);
    EXPECT_EQ(zero.trials, 60);
    PercCurve c = estimate_p_span(samples, 10, {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}, 50, 2);
    for (size_t i = 1; i < c.points.size(); ++i) {
        EXPECT_LE(c.points[i].p_span, c.points[i - 1].p_span);
    }
    EXPECT_EQ(c.points.back().p_span, 0.0);
    // Threads do not change the result.
    PercCurve d = estimate_p_span(samples, 10, {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}, 50, 2, 3);
    for (size_t i = 0; i < c.points.size(); ++i) {
        EXPECT_EQ(c.points[i].span_count, d.points[i].span_count);
    }
}

TEST(Crossing, SyntheticLines) {
    PercCurve a = line(10, -1.0, 0.75, 0.0, 0.5, 11);  // 0.5 at 0.25
    PercCurve b = line(20, -3.0, 1.25, 0.0, 0.5, 11);  // 0.5 at 0.25
    CrossingEstimate c = find_crossing({a, b});
    EXPECT_NEAR(c.p_star, 0.25, 1e-12);
    EXPECT_EQ(c.intersections.size(), 1u);
    CrossingEstimate reversed = find_crossing({b, a});
    EXPECT_EQ(reversed.p_star, c.p_star);
    EXPECT_THROW(find_crossing({a}), PercolationError);
    PercCurve shifted = line(30, -1.0, 0.9, 0.0, 0.5, 11);
    EXPECT_THROW(find_crossing({a, shifted}), PercolationError);
}

TEST(Crossing, SaturatedStretchesIgnored) {
    PercCurve a, b;
    a.L = 10;
    b.L = 20;
    // Both sit at 1 up to 0.2, then a falls slower than b.
    std::vector<double> ps = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    std::vector<double> ya = {1.0, 1.0, 0.9, 0.6, 0.3, 0.0};
    std::vector<double> yb = {1.0, 1.0, 0.95, 0.5, 0.1, 0.0};
    for (size_t i = 0; i < ps.size(); ++i) {
        a.points.push_back({ps[i], 1, 0, ya[i], 0.0});
        b.points.push_back({ps[i], 1, 0, yb[i], 0.0});
    }
    CrossingEstimate c = find_crossing({a, b});
    ASSERT_EQ(c.intersections.size(), 1u);
    EXPECT_GT(c.p_star, 0.2);
    EXPECT_LT(c.p_star, 0.3);
}

TEST(Collapse, IdenticalCurvesGiveZero) {
    PercCurve a = line(10, -1.0, 0.75, 0.0, 0.5, 11);
    for (double nu : {0.5, 4.0 / 3.0, 3.0}) {
        CollapseResult r = collapse({a, a, a}, 0.25, nu);
        EXPECT_EQ(r.residual, 0.0);
        EXPECT_EQ(r.unscaled_residual, 0.0);
    }
    // Flat curves coincide at every size whatever the rescaling.
    PercCurve f1 = line(10, 0.0, 0.5, 0.0, 0.5, 11);
    PercCurve f2 = line(40, 0.0, 0.5, 0.0, 0.5, 11);
    EXPECT_EQ(collapse({f1, f2}, 0.25, 4.0 / 3.0).residual, 0.0);
    EXPECT_THROW(collapse({a, a}, 0.25, 0.0), PercolationError);
}

TEST(Collapse, ScalingFormRecovered) {
    // p_span = g((p - p*) L^(1/nu)) with a logistic g.
    double nu = 4.0 / 3.0;
    double ps = 0.14;
    std::vector<PercCurve> curves;
    for (int L : {40, 60, 80}) {
        PercCurve c;
        c.L = L;
        for (int i = 0; i <= 12; ++i) {
            double p = 0.08 + 0.01 * i;
            double x = (p - ps) * std::pow(L, 1.0 / nu);
            c.points.push_back({p, 1, 0, 1.0 / (1.0 + std::exp(4.0 * x)), 0.0});
        }
        curves.push_back(c);
    }
    CollapseResult r = collapse(curves, ps, nu);
    EXPECT_LT(r.residual, 1e-4);
    EXPECT_GT(r.unscaled_residual, 10 * r.residual);
    EXPECT_NEAR(find_crossing(curves).p_star, ps, 1e-3);
}

TEST(DomainStats, Census) {
    Lattice lat(4, 4, BoundaryMode::open);
    PovmConfig all(4, 4, std::vector<PovmOutcome>(16, PovmOutcome{Kind::F, Axis::z}));
    DomainCensus c = domain_census(lat, all);
    EXPECT_EQ(c.largest, 16);
    EXPECT_EQ(c.axis_sites[2], 16);
}

TEST(DomainStats, DegenerateRowsLeaveTheFit) {
    std::vector<int> sizes = {4, 8, 16, 32};
    std::vector<std::vector<DomainCensus>> by_L;
    for (int L : sizes) {
        int n = L * L;
        DomainCensus c;
        c.sites = n;
        c.largest = L == 4 ? n : static_cast<int>(3 * std::log(n));
        c.axis_sites = {n / 3, n / 3, n - 2 * (n / 3)};
        by_L.push_back({c, c});
    }
    DomainSizeStats st = largest_domain_stats(sizes, by_L);
    EXPECT_FALSE(st.rows[0].in_fit);
    EXPECT_TRUE(st.rows[1].in_fit);
    EXPECT_GT(st.slope, 2.5);
    EXPECT_LT(st.slope, 3.5);
    EXPECT_GT(st.r2, 0.99);
    EXPECT_LT(st.power, 1.0);
    sizes.pop_back();
    by_L.pop_back();
    EXPECT_THROW(largest_domain_stats(sizes, by_L), PercolationError);
}

}  // namespace aklt
