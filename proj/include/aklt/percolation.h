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

#ifndef AKLT_PERCOLATION_H
#define AKLT_PERCOLATION_H

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "aklt/graph_rewrite.h"
#include "aklt/lattice.h"
#include "aklt/povm.h"
#include "aklt/rng.h"

namespace aklt {

class PercolationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// True iff alive vertices connect a left-touching vertex to a right-touching one.
bool spans(const SimpleGraph& graph);

/// Same, with `keep[v]` as an extra alive mask.
bool spans(const SimpleGraph& graph, const std::vector<char>& keep);

/// Kills each alive vertex independently with probability p_delete.
void delete_sites(SimpleGraph& graph, double p_delete, Rng& rng);

struct PercPoint {
    double p_delete = 0.0;
    int trials = 0;
    int span_count = 0;
    double p_span = 0.0;
    double std_error = 0.0;
};

struct PercCurve {
    int L = 0;
    std::vector<PercPoint> points;
};

/// One deletion trial for all p at once. Each alive vertex draws u from `rng`
/// and is deleted at p iff u < p; the return value t is the largest p at which a
/// spanning path survives (spans iff p <= t), or -1 if the graph never spans.
double span_threshold(const SimpleGraph& graph, Rng& rng);

/// p_span over `samples`, `trials_per_sample` deletion trials each, at every p in
/// `grid`. Trial t of sample s uses Rng::stream(seed, {s, t}). The error bar is
/// the standard error of the per-sample means, which absorbs the correlation
/// between trials on one sample; with a single sample it falls back to the
/// binomial error.
PercCurve estimate_p_span(const std::vector<SimpleGraph>& samples, int L, const std::vector<double>& grid,
                          int trials_per_sample, uint64_t seed, int threads = 1);

/// Single-point form.
PercPoint estimate_p_span(const std::vector<SimpleGraph>& samples, double p_delete, int trials_per_sample,
                          uint64_t seed);

struct Intersection {
    int L_a;
    int L_b;
    double p;
};

struct CrossingEstimate {
    double p_star = 0.0;
    double spread = 0.0;                       // half the range of the intersections
    std::vector<Intersection> intersections;  // sorted by (L_a, L_b, p)
};

/// Pairwise intersections of linearly interpolated curves; p_star is their median.
/// Stretches where both curves sit at the same saturated value (0 or 1) carry no
/// crossing information and are skipped. Throws PercolationError if no pair crosses.
CrossingEstimate find_crossing(const std::vector<PercCurve>& curves);

struct CollapsedCurve {
    int L;
    std::vector<double> x;  // (p - p_star) L^(1/nu)
    std::vector<double> y;
};

struct CollapseResult {
    std::vector<CollapsedCurve> curves;
    double residual = 0.0;           // after rescaling
    double unscaled_residual = 0.0;  // abscissa p - p_star
};

/// Mean squared vertical distance between every ordered pair of curves, each
/// point of one compared with the interpolation of the other where the abscissae
/// overlap.
double curve_residual(const std::vector<CollapsedCurve>& curves);

CollapseResult collapse(const std::vector<PercCurve>& curves, double p_star, double nu);

struct DomainCensus {
    int largest = 0;
    std::array<int, 3> axis_sites{};  // sites per axis x, y, z
    int sites = 0;
};

/// Largest domain and per-axis site counts of one configuration.
DomainCensus domain_census(const Lattice& lattice, const PovmConfig& config);

struct DomainSizeRow {
    int L = 0;
    int N = 0;
    double mean_largest = 0.0;
    double std_error = 0.0;
    int max_largest = 0;
    int samples = 0;
    bool in_fit = true;  // false when some sample is one lattice-filling domain
};

struct DomainSizeStats {
    std::vector<DomainSizeRow> rows;
    double slope = 0.0;  // mean largest vs ln N
    double intercept = 0.0;
    double r2 = 0.0;
    double power = 0.0;  // exponent of a log-log fit; 1 would be extensive
    std::array<double, 3> axis_fraction{};
    std::array<double, 3> axis_stderr{};
};

/// `by_L[i]` holds the censuses of the samples at size `sizes[i]`. Needs three or
/// more sizes usable in the fit.
DomainSizeStats largest_domain_stats(const std::vector<int>& sizes,
                                     const std::vector<std::vector<DomainCensus>>& by_L);

}  // namespace aklt

#endif
