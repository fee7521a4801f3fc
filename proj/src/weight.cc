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

#include "aklt/weight.h"

#include <cmath>
#include <limits>

namespace aklt {

double WeightResult::total_log2() const {
    if (is_zero()) {
        return -std::numeric_limits<double>::infinity();
    }
    return static_cast<double>(log2_weight) + deformation_log2_extra;
}

bool WeightResult::is_zero() const {
    return !compatible || std::isinf(deformation_log2_extra);
}

std::vector<int> measured_columns(const DomainGraph& graph) {
    std::vector<int> cols;
    for (int v = 0; v < graph.num_real(); ++v) {
        if (graph.vertex(v).all_K) {
            cols.push_back(v);
        }
    }
    return cols;
}

BinaryMatrix build_H(const DomainGraph& graph, const std::vector<int>& columns) {
    BinaryMatrix h(static_cast<size_t>(graph.num_vertices()), columns.size());
    for (size_t c = 0; c < columns.size(); ++c) {
        int nu = columns[c];
        // The generator of mu carries Z on nu exactly when nu is an E-neighbor of mu.
        for (int mu : graph.e_neighbors(nu)) {
            h.set(static_cast<size_t>(mu), c, true);
        }
        if (graph.self_loop(nu)) {
            h.set(static_cast<size_t>(nu), c, true);
        }
    }
    return h;
}

BinaryMatrix build_H(const DomainGraph& graph) { return build_H(graph, measured_columns(graph)); }

int kernel_sign(const DomainGraph& graph, const std::vector<int>& columns, const BitVector& q) {
    size_t nv = static_cast<size_t>(graph.num_vertices());
    SignedPauli product(nv);
    SignedPauli target(nv);
    size_t sites = 0;
    for (size_t c = 0; c < columns.size(); ++c) {
        if (!q.get(c)) {
            continue;
        }
        int nu = columns[c];
        product *= stabilizer_generator(graph, nu);
        target.xs.set(static_cast<size_t>(nu), true);
        sites += graph.vertex(nu).sites.size();
    }
    if (!product.same_string(target)) {
        throw std::logic_error("kernel product is not a pure X string: " + product.str());
    }
    int measured_sign = (sites & 1) ? -1 : +1;
    return product.sign() == measured_sign ? +1 : -1;
}

bool incompatibility(const DomainGraph& graph, const std::vector<int>& columns, const KernelBasis& kernel) {
    for (const BitVector& q : kernel.vectors) {
        if (kernel_sign(graph, columns, q) < 0) {
            return true;
        }
    }
    return false;
}

WeightResult log_weight(const Lattice& lattice, const PovmConfig& config) {
    DomainGraph graph = build_domain_graph(lattice, config);
    std::vector<int> columns = measured_columns(graph);
    BinaryMatrix h = build_H(graph, columns);
    KernelBasis kernel = gf2_kernel(h);

    WeightResult r;
    r.raw_edges = graph.raw_edge_total();
    r.num_vertices = graph.num_vertices();
    r.num_K = config.num_K();
    r.kernel_dim = static_cast<int>(kernel.dimension());
    r.num_Fz = config.count(PovmOutcome{Kind::F, Axis::z});
    r.compatible = !incompatibility(graph, columns, kernel);
    r.log2_weight = r.compatible ? -(int64_t{r.raw_edges} - r.num_vertices + 2 * int64_t{r.num_K} - r.kernel_dim) : 0;
    return r;
}

void check_deformation(double a) {
    const double lo = 1.0 / std::sqrt(3.0);
    const double hi = std::sqrt(3.0);
    const double eps = 1e-12;
    if (!(a >= lo - eps && a <= hi + eps)) {
        throw DeformationRangeError("deformation parameter a must lie in [1/sqrt(3), sqrt(3)]");
    }
}

double deformation_log2_factor(double a) {
    check_deformation(a);
    double num = 3.0 - a * a;
    if (num <= 1e-12) {
        return -std::numeric_limits<double>::infinity();
    }
    return std::log2(num / (2.0 * a * a));
}

WeightResult deformed_log_weight(const Lattice& lattice, const PovmConfig& config, double a) {
    double f = deformation_log2_factor(a);
    WeightResult r = log_weight(lattice, config);
    if (r.num_Fz == 0 || a == 1.0) {
        r.deformation_log2_extra = 0.0;
    } else {
        r.deformation_log2_extra = std::isinf(f) ? f : r.num_Fz * f;
    }
    return r;
}

}  // namespace aklt
