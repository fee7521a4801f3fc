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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>
#include <tuple>

#include "aklt/domain_graph.h"

namespace aklt {

namespace {

int find_root(std::vector<int>& parent, int v) {
    while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    return v;
}

void unite(std::vector<int>& parent, int a, int b) {
    a = find_root(parent, a);
    b = find_root(parent, b);
    if (a != b) {
        parent[std::max(a, b)] = std::min(a, b);
    }
}

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it == xs.end()) {
        return ys.back();
    }
    size_t k = static_cast<size_t>(it - xs.begin());
    if (xs[k] == x || k == 0) {
        return ys[k];
    }
    double t = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
    return ys[k - 1] + t * (ys[k] - ys[k - 1]);
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

}  // namespace

bool spans(const SimpleGraph& graph, const std::vector<char>& keep) {
    int n = graph.num_vertices();
    std::vector<char> seen(n, 0);
    std::vector<int> queue;
    auto usable = [&](int v) { return graph.alive(v) && (keep.empty() || keep[v]); };
    for (int v = 0; v < n; ++v) {
        if (usable(v) && graph.vertex(v).touches_left) {
            seen[v] = 1;
            queue.push_back(v);
        }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        if (graph.vertex(v).touches_right) {
            return true;
        }
        for (int u : graph.neighbors(v)) {
            if (!seen[u] && usable(u)) {
                seen[u] = 1;
                queue.push_back(u);
            }
        }
    }
    return false;
}

bool spans(const SimpleGraph& graph) { return spans(graph, {}); }

void delete_sites(SimpleGraph& graph, double p_delete, Rng& rng) {
    if (!(p_delete >= 0.0 && p_delete <= 1.0)) {
        throw PercolationError("p_delete must lie in [0, 1]");
    }
    for (int v = 0; v < graph.num_vertices(); ++v) {
        if (graph.alive(v) && rng.uniform() < p_delete) {
            graph.kill(v);
        }
    }
}

double span_threshold(const SimpleGraph& graph, Rng& rng) {
    int n = graph.num_vertices();
    std::vector<std::pair<double, int>> order;
    for (int v = 0; v < n; ++v) {
        if (graph.alive(v)) {
            order.emplace_back(rng.uniform(), v);
        }
    }
    // Insert vertices from the largest u down; the u at which left meets right is
    // the last p that still spans.
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a > b; });
    const int left = n;
    const int right = n + 1;
    std::vector<int> parent(n + 2);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<char> in(n, 0);
    for (const auto& [u, v] : order) {
        in[v] = 1;
        const GraphVertex& gv = graph.vertex(v);
        if (gv.touches_left) {
            unite(parent, v, left);
        }
        if (gv.touches_right) {
            unite(parent, v, right);
        }
        for (int w : graph.neighbors(v)) {
            if (in[w]) {
                unite(parent, v, w);
            }
        }
        if (find_root(parent, left) == find_root(parent, right)) {
            return u;
        }
    }
    return -1.0;
}

PercCurve estimate_p_span(const std::vector<SimpleGraph>& samples, int L, const std::vector<double>& grid,
                          int trials_per_sample, uint64_t seed, int threads) {
    if (samples.empty() || trials_per_sample < 1 || grid.empty()) {
        throw PercolationError("p_span needs samples, trials and a p grid");
    }
    size_t ns = samples.size();
    std::vector<std::vector<double>> thresholds(ns);
    auto work = [&](size_t s) {
        thresholds[s].resize(static_cast<size_t>(trials_per_sample));
        for (int t = 0; t < trials_per_sample; ++t) {
            Rng rng = Rng::stream(seed, {s, static_cast<uint64_t>(t)});
            thresholds[s][t] = span_threshold(samples[s], rng);
        }
    };
    int workers = std::clamp(threads, 1, static_cast<int>(ns));
    if (workers == 1) {
        for (size_t s = 0; s < ns; ++s) {
            work(s);
        }
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (size_t s = static_cast<size_t>(w); s < ns; s += static_cast<size_t>(workers)) {
                    work(s);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }

    PercCurve curve;
    curve.L = L;
    for (double p : grid) {
        PercPoint pt;
        pt.p_delete = p;
        std::vector<double> means(ns);
        for (size_t s = 0; s < ns; ++s) {
            int c = static_cast<int>(std::count_if(thresholds[s].begin(), thresholds[s].end(),
                                                   [p](double t) { return p <= t; }));
            pt.span_count += c;
            means[s] = static_cast<double>(c) / trials_per_sample;
        }
        pt.trials = static_cast<int>(ns) * trials_per_sample;
        pt.p_span = static_cast<double>(pt.span_count) / pt.trials;
        if (ns > 1) {
            double var = 0.0;
            for (double m : means) {
                var += (m - pt.p_span) * (m - pt.p_span);
            }
            var /= static_cast<double>(ns - 1);
            pt.std_error = std::sqrt(var / static_cast<double>(ns));
        } else {
            pt.std_error = std::sqrt(pt.p_span * (1.0 - pt.p_span) / pt.trials);
        }
        curve.points.push_back(pt);
    }
    return curve;
}

PercPoint estimate_p_span(const std::vector<SimpleGraph>& samples, double p_delete, int trials_per_sample,
                          uint64_t seed) {
    return estimate_p_span(samples, 0, {p_delete}, trials_per_sample, seed).points[0];
}

CrossingEstimate find_crossing(const std::vector<PercCurve>& input) {
    if (input.size() < 2) {
        throw PercolationError("a crossing needs at least two curves");
    }
    std::vector<PercCurve> curves = input;
    for (PercCurve& c : curves) {
        std::sort(c.points.begin(), c.points.end(),
                  [](const PercPoint& a, const PercPoint& b) { return a.p_delete < b.p_delete; });
        if (c.points.size() < 2) {
            throw PercolationError("each curve needs two or more points");
        }
    }
    std::sort(curves.begin(), curves.end(), [](const PercCurve& a, const PercCurve& b) { return a.L < b.L; });

    CrossingEstimate est;
    for (size_t i = 0; i < curves.size(); ++i) {
        for (size_t j = i + 1; j < curves.size(); ++j) {
            std::vector<double> xa, ya, xb, yb;
            for (const PercPoint& p : curves[i].points) {
                xa.push_back(p.p_delete);
                ya.push_back(p.p_span);
            }
            for (const PercPoint& p : curves[j].points) {
                xb.push_back(p.p_delete);
                yb.push_back(p.p_span);
            }
            double lo = std::max(xa.front(), xb.front());
            double hi = std::min(xa.back(), xb.back());
            std::vector<double> grid;
            for (double x : xa) {
                if (x >= lo && x <= hi) grid.push_back(x);
            }
            for (double x : xb) {
                if (x >= lo && x <= hi) grid.push_back(x);
            }
            std::sort(grid.begin(), grid.end());
            grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

            std::vector<double> gx, d;
            for (double x : grid) {
                double a = interpolate(xa, ya, x);
                double b = interpolate(xb, yb, x);
                if (a == b && (a == 0.0 || a == 1.0)) {
                    continue;
                }
                gx.push_back(x);
                d.push_back(a - b);
            }
            for (size_t k = 0; k < d.size(); ++k) {
                if (d[k] == 0.0) {
                    est.intersections.push_back({curves[i].L, curves[j].L, gx[k]});
                } else if (k + 1 < d.size() && d[k] * d[k + 1] < 0.0) {
                    double t = d[k] / (d[k] - d[k + 1]);
                    est.intersections.push_back({curves[i].L, curves[j].L, gx[k] + t * (gx[k + 1] - gx[k])});
                }
            }
        }
    }
    if (est.intersections.empty()) {
        throw PercolationError("no pair of curves crosses inside the swept range");
    }
    std::sort(est.intersections.begin(), est.intersections.end(), [](const Intersection& a, const Intersection& b) {
        return std::tie(a.L_a, a.L_b, a.p) < std::tie(b.L_a, b.L_b, b.p);
    });
    std::vector<double> ps;
    for (const Intersection& x : est.intersections) {
        ps.push_back(x.p);
    }
    std::sort(ps.begin(), ps.end());
    size_t m = ps.size();
    est.p_star = m % 2 ? ps[m / 2] : 0.5 * (ps[m / 2 - 1] + ps[m / 2]);
    est.spread = 0.5 * (ps.back() - ps.front());
    return est;
}

double curve_residual(const std::vector<CollapsedCurve>& curves) {
    double sum = 0.0;
    size_t count = 0;
    for (size_t i = 0; i < curves.size(); ++i) {
        for (size_t j = 0; j < curves.size(); ++j) {
            const CollapsedCurve& b = curves[j];
            if (i == j || b.x.empty()) {
                continue;
            }
            for (size_t k = 0; k < curves[i].x.size(); ++k) {
                double x = curves[i].x[k];
                if (x < b.x.front() || x > b.x.back()) {
                    continue;
                }
                double diff = curves[i].y[k] - interpolate(b.x, b.y, x);
                sum += diff * diff;
                ++count;
            }
        }
    }
    return count ? sum / static_cast<double>(count) : std::nan("");
}

CollapseResult collapse(const std::vector<PercCurve>& curves, double p_star, double nu) {
    if (!(nu > 0.0)) {
        throw PercolationError("nu must be positive");
    }
    CollapseResult out;
    std::vector<CollapsedCurve> raw;
    for (const PercCurve& c : curves) {
        CollapsedCurve scaled{c.L, {}, {}};
        CollapsedCurve plain{c.L, {}, {}};
        double factor = std::pow(static_cast<double>(c.L), 1.0 / nu);
        std::vector<PercPoint> pts = c.points;
        std::sort(pts.begin(), pts.end(),
                  [](const PercPoint& a, const PercPoint& b) { return a.p_delete < b.p_delete; });
        for (const PercPoint& p : pts) {
            scaled.x.push_back((p.p_delete - p_star) * factor);
            scaled.y.push_back(p.p_span);
            plain.x.push_back(p.p_delete - p_star);
            plain.y.push_back(p.p_span);
        }
        out.curves.push_back(std::move(scaled));
        raw.push_back(std::move(plain));
    }
    out.residual = curve_residual(out.curves);
    out.unscaled_residual = curve_residual(raw);
    return out;
}

DomainCensus domain_census(const Lattice& lattice, const PovmConfig& config) {
    DomainCensus c;
    c.sites = lattice.num_sites();
    for (const Domain& d : find_domains(lattice, config)) {
        if (d.is_boundary_partner) {
            continue;
        }
        int size = static_cast<int>(d.sites.size());
        c.largest = std::max(c.largest, size);
        c.axis_sites[static_cast<int>(*d.axis)] += size;
    }
    return c;
}

DomainSizeStats largest_domain_stats(const std::vector<int>& sizes,
                                     const std::vector<std::vector<DomainCensus>>& by_L) {
    if (sizes.size() != by_L.size()) {
        throw PercolationError("one census list per size expected");
    }
    DomainSizeStats st;
    std::vector<double> lnN, mean, lnMean;
    std::array<std::vector<double>, 3> fractions;
    for (size_t i = 0; i < sizes.size(); ++i) {
        DomainSizeRow row;
        row.L = sizes[i];
        row.samples = static_cast<int>(by_L[i].size());
        if (row.samples == 0) {
            throw PercolationError("size without samples");
        }
        double sum = 0.0;
        double sq = 0.0;
        for (const DomainCensus& c : by_L[i]) {
            row.N = c.sites;
            sum += c.largest;
            sq += static_cast<double>(c.largest) * c.largest;
            row.max_largest = std::max(row.max_largest, c.largest);
            row.in_fit = row.in_fit && c.largest < c.sites;
            for (int a = 0; a < 3; ++a) {
                fractions[a].push_back(static_cast<double>(c.axis_sites[a]) / c.sites);
            }
        }
        double n = row.samples;
        row.mean_largest = sum / n;
        if (row.samples > 1) {
            double var = (sq - n * row.mean_largest * row.mean_largest) / (n - 1);
            row.std_error = std::sqrt(std::max(var, 0.0) / n);
        }
        if (row.in_fit) {
            lnN.push_back(std::log(static_cast<double>(row.N)));
            mean.push_back(row.mean_largest);
            lnMean.push_back(std::log(row.mean_largest));
        }
        st.rows.push_back(row);
    }
    if (lnN.size() < 3) {
        throw PercolationError("largest-domain fit needs three or more usable sizes");
    }
    LinearFit lin = fit_line(lnN, mean);
    st.slope = lin.slope;
    st.intercept = lin.intercept;
    st.r2 = lin.r2;
    st.power = fit_line(lnN, lnMean).slope;
    for (int a = 0; a < 3; ++a) {
        const auto& f = fractions[a];
        double n = static_cast<double>(f.size());
        double m = std::accumulate(f.begin(), f.end(), 0.0) / n;
        double var = 0.0;
        for (double x : f) {
            var += (x - m) * (x - m);
        }
        st.axis_fraction[a] = m;
        st.axis_stderr[a] = f.size() > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
    }
    return st;
}

}  // namespace aklt
