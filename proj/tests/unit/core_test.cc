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

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "aklt/domain_graph.h"
#include "aklt/gf2.h"
#include "aklt/lattice.h"
#include "aklt/oracle_suite.h"
#include "aklt/povm.h"
#include "aklt/sampler.h"
#include "aklt/weight.h"

namespace aklt {

namespace {

PovmConfig grid(const std::string& text) { return parse_config(text); }

// Random compatible configurations from a short chain.
std::vector<PovmConfig> chain_samples(int w, int h, BoundaryMode mode, uint64_t seed, int n) {
    ChainParams p;
    p.width = w;
    p.height = h;
    p.mode = mode;
    p.seed = seed;
    p.burn_in_sweeps = 20;
    p.sample_count = n;
    p.sweeps_between_samples = 2;
    return run_chain(p).samples;
}

}  // namespace

TEST(Lattice, Counts) {
    Lattice pair(2, 1, BoundaryMode::open);
    EXPECT_EQ(pair.edges().size(), 1u);
    EXPECT_EQ(pair.boundary_legs().size(), 6u);
    Lattice open(3, 3, BoundaryMode::open);
    EXPECT_EQ(open.edges().size(), 12u);
    EXPECT_EQ(open.boundary_legs().size(), 12u);
    Lattice torus(4, 4, BoundaryMode::torus);
    EXPECT_EQ(torus.edges().size(), 32u);
    EXPECT_TRUE(torus.boundary_legs().empty());
    // Every virtual qubit belongs to exactly one edge or leg.
    for (const Lattice* lat : {&pair, &open, &torus}) {
        EXPECT_EQ(2 * lat->edges().size() + lat->boundary_legs().size(),
                  static_cast<size_t>(lat->num_virtual_qubits()));
    }
    EXPECT_THROW(Lattice(0, 3, BoundaryMode::open), DimensionError);
    EXPECT_THROW(Lattice(3, 3, BoundaryMode::torus), DimensionError);
    EXPECT_THROW(parse_boundary_mode("cylinder"), std::invalid_argument);
}

TEST(Povm, SerializeRoundTrip) {
    Lattice lat(5, 3, BoundaryMode::open);
    Rng rng(9);
    for (int i = 0; i < 20; ++i) {
        PovmConfig c = random_config(lat, rng);
        EXPECT_EQ(parse_config(serialize_config(c), lat), c);
    }
    std::vector<PovmConfig> many = parse_config_stream("# header\nFx Kz\nFy Fy\n\nKx Kx\nFz Fz\n");
    ASSERT_EQ(many.size(), 2u);
    EXPECT_EQ(many[1].at(0, 0), (PovmOutcome{Kind::K, Axis::x}));
    EXPECT_EQ(many[1].at(1, 1), (PovmOutcome{Kind::F, Axis::z}));
}

TEST(Povm, ParseErrorsCarryPosition) {
    try {
        parse_config("Fx Fy\nFz Qq\n");
        FAIL();
    } catch (const ConfigParseError& e) {
        EXPECT_EQ(e.row(), 2);
        EXPECT_EQ(e.column(), 2);
    }
    EXPECT_THROW(parse_config("Fx Fy\nFz\n"), ConfigParseError);
    EXPECT_THROW(parse_config("Fx Fy\n", Lattice(3, 1, BoundaryMode::open)), ConfigParseError);
}

TEST(Gf2, KernelExamples) {
    EXPECT_EQ(gf2_kernel(BinaryMatrix::identity(3)).dimension(), 0u);
    BinaryMatrix row(1, 2);
    row.set(0, 0, true);
    row.set(0, 1, true);
    KernelBasis k = gf2_kernel(row);
    ASSERT_EQ(k.dimension(), 1u);
    EXPECT_TRUE(k.vectors[0].get(0) && k.vectors[0].get(1));
    EXPECT_EQ(gf2_kernel(BinaryMatrix(4, 0)).dimension(), 0u);
}

TEST(Gf2, RankNullityOnRandomMatrices) {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        size_t r = 1 + rng.below(80), c = 1 + rng.below(80);
        BinaryMatrix m(r, c);
        double density = 0.02 + 0.3 * rng.uniform();
        for (size_t i = 0; i < r; ++i) {
            for (size_t j = 0; j < c; ++j) m.set(i, j, rng.bernoulli(density));
        }
        KernelBasis k = gf2_kernel(m);
        EXPECT_EQ(gf2_rank(m) + k.dimension(), c);
        BinaryMatrix basis(k.dimension(), c);
        for (size_t i = 0; i < k.dimension(); ++i) {
            EXPECT_FALSE(m.multiply(k.vectors[i]).any());
            basis.row(i) = k.vectors[i];
        }
        EXPECT_EQ(gf2_rank(basis), k.dimension());
    }
}

TEST(Pauli, Products) {
    SignedPauli x = SignedPauli::single(1, 0, PauliLetter::X);
    SignedPauli z = SignedPauli::single(1, 0, PauliLetter::Z);
    SignedPauli y = SignedPauli::single(1, 0, PauliLetter::Y);
    EXPECT_FALSE(x.commutes_with(z));
    // Y = i X Z, so X Z = -i Y and (X Z)(X Z) = -1.
    SignedPauli xz = x * z;
    EXPECT_TRUE(xz.same_string(y));
    EXPECT_EQ(xz.phase, 3);
    EXPECT_EQ((xz * xz).sign(), -1);
    EXPECT_TRUE((y * y).is_identity());
    EXPECT_EQ((y * y).sign(), +1);
    SignedPauli xx = SignedPauli::single(2, 0, PauliLetter::X) * SignedPauli::single(2, 1, PauliLetter::X);
    SignedPauli zz = SignedPauli::single(2, 0, PauliLetter::Z) * SignedPauli::single(2, 1, PauliLetter::Z);
    EXPECT_TRUE(xx.commutes_with(zz));
}

TEST(DomainGraph, TorusMultiEdgesCancel) {
    Lattice lat(2, 2, BoundaryMode::torus);
    DomainGraph g = build_domain_graph(lat, grid("Fz Fz\nFx Fx\n"));
    ASSERT_EQ(g.num_vertices(), 2);
    EXPECT_EQ(g.multiplicity(0, 1), 4);
    EXPECT_TRUE(g.reduced_edges().empty());
    EXPECT_EQ(g.raw_edge_total(), 4);
}

TEST(DomainGraph, OpenPairCounts) {
    Lattice lat(2, 1, BoundaryMode::open);
    DomainGraph g = build_domain_graph(lat, PovmConfig(lat, {Kind::F, Axis::z}));
    EXPECT_EQ(g.num_real(), 1);
    EXPECT_EQ(g.num_vertices(), 7);
    EXPECT_EQ(g.raw_edge_total(), 6);
}

// Generators of every sampled graph state pairwise commute and are
// independent as symplectic vectors; the self-loop flag matches the Y center.
TEST(DomainGraph, GeneratorsFormStabilizerTableau) {
    for (auto [w, h, mode] : {std::tuple{3, 3, BoundaryMode::open}, std::tuple{4, 4, BoundaryMode::torus},
                              std::tuple{4, 4, BoundaryMode::open}}) {
        Lattice lat(w, h, mode);
        Rng rng = Rng::stream(17, {static_cast<uint64_t>(w), static_cast<uint64_t>(mode)});
        for (int t = 0; t < 60; ++t) {
            PovmConfig c = random_config(lat, rng);
            DomainGraph g = build_domain_graph(lat, c);
            int n = g.num_vertices();
            std::vector<SignedPauli> gens;
            for (int v = 0; v < n; ++v) gens.push_back(stabilizer_generator(g, v));
            BinaryMatrix tableau(n, 2 * n);
            for (int v = 0; v < n; ++v) {
                EXPECT_TRUE(gens[v].is_hermitian());
                EXPECT_EQ(gens[v].letter(v) == PauliLetter::Y, g.self_loop(v));
                for (int u = 0; u < n; ++u) {
                    tableau.set(v, u, gens[v].xs.get(u));
                    tableau.set(v, n + u, gens[v].zs.get(u));
                    if (u != v) {
                        EXPECT_EQ(gens[v].letter(u) == PauliLetter::Z, g.multiplicity(u, v) % 2 == 1);
                    }
                }
                for (int u = 0; u < v; ++u) {
                    ASSERT_TRUE(gens[u].commutes_with(gens[v])) << serialize_config(c) << u << " " << v;
                }
            }
            EXPECT_EQ(gf2_rank(tableau), static_cast<size_t>(n));
        }
    }
}

TEST(Weight, OpenPairExponents) {
    Lattice lat(2, 1, BoundaryMode::open);
    WeightResult f = log_weight(lat, PovmConfig(lat, {Kind::F, Axis::z}));
    EXPECT_TRUE(f.compatible);
    EXPECT_EQ(f.log2_weight, 1);
    WeightResult k = log_weight(lat, PovmConfig(lat, {Kind::K, Axis::z}));
    EXPECT_TRUE(k.compatible);
    EXPECT_EQ(k.log2_weight, -3);
    EXPECT_EQ(k.kernel_dim, 0);
}

TEST(Weight, AllFReducesToEdgeCount) {
    Lattice lat(5, 4, BoundaryMode::open);
    Rng rng(21);
    for (int t = 0; t < 100; ++t) {
        PovmConfig c(lat);
        for (int s = 0; s < lat.num_sites(); ++s) c.set(s, {Kind::F, kAxes[rng.below(3)]});
        WeightResult r = log_weight(lat, c);
        ASSERT_TRUE(r.compatible);
        EXPECT_EQ(r.log2_weight, r.num_vertices - r.raw_edges);
    }
}

TEST(Weight, SignHomomorphismOnKernel) {
    int pairs = 0;
    for (auto [w, h, mode] : {std::tuple{4, 4, BoundaryMode::torus}, std::tuple{4, 4, BoundaryMode::open},
                              std::tuple{6, 6, BoundaryMode::torus}}) {
        Lattice lat(w, h, mode);
        Rng rng = Rng::stream(31, {static_cast<uint64_t>(w), static_cast<uint64_t>(mode)});
        for (int t = 0; t < 400; ++t) {
            // K-heavy configurations so that the kernel is non-trivial.
            PovmConfig c(lat);
            for (int s = 0; s < lat.num_sites(); ++s) {
                c.set(s, {rng.bernoulli(0.7) ? Kind::K : Kind::F, kAxes[rng.below(3)]});
            }
            DomainGraph g = build_domain_graph(lat, c);
            std::vector<int> cols = measured_columns(g);
            KernelBasis k = gf2_kernel(build_H(g, cols));
            bool any_negative = false;
            for (const BitVector& q : k.vectors) any_negative = any_negative || kernel_sign(g, cols, q) < 0;
            EXPECT_EQ(any_negative, incompatibility(g, cols, k));
            EXPECT_EQ(!any_negative, log_weight(lat, c).compatible);
            if (k.dimension() < 2) continue;
            for (int r = 0; r < 4; ++r) {
                BitVector q1(k.cols), q2(k.cols);
                for (const BitVector& b : k.vectors) {
                    if (rng.bernoulli(0.5)) q1 ^= b;
                    if (rng.bernoulli(0.5)) q2 ^= b;
                }
                BitVector sum = q1;
                sum ^= q2;
                EXPECT_EQ(kernel_sign(g, cols, sum), kernel_sign(g, cols, q1) * kernel_sign(g, cols, q2));
                ++pairs;
            }
        }
    }
    EXPECT_GT(pairs, 100);
}

// Turning one F site of a multi-site domain into K on the same axis leaves the
// graph alone and lowers log2 w by exactly 2, as long as the domain keeps an F.
TEST(Weight, ExtraKInMixedDomainCostsTwo) {
    int checked = 0;
    for (const PovmConfig& c : chain_samples(8, 8, BoundaryMode::open, 4, 30)) {
        Lattice lat(8, 8, BoundaryMode::open);
        WeightResult base = log_weight(lat, c);
        for (const Domain& d : find_domains(lat, c)) {
            if (d.is_boundary_partner || d.sites.size() < 2) continue;
            int f_sites = 0;
            for (int s : d.sites) f_sites += c[s].kind == Kind::F;
            if (f_sites < 2) continue;
            for (int s : d.sites) {
                if (c[s].kind != Kind::F) continue;
                PovmConfig m = c;
                m.set(s, {Kind::K, *d.axis});
                WeightResult r = log_weight(lat, m);
                ASSERT_TRUE(r.compatible);
                EXPECT_EQ(r.log2_weight, base.log2_weight - 2);
                ++checked;
                break;
            }
        }
    }
    EXPECT_GT(checked, 50);
}

TEST(Weight, DeformationFactor) {
    Lattice lat(3, 3, BoundaryMode::open);
    Rng rng(8);
    PovmConfig c = random_config(lat, rng);
    c.set(0, {Kind::F, Axis::z});
    WeightResult base = log_weight(lat, c);
    EXPECT_EQ(deformed_log_weight(lat, c, 1.0), base);
    WeightResult low = deformed_log_weight(lat, c, 1.0 / std::sqrt(3.0));
    EXPECT_NEAR(low.deformation_log2_extra, 2.0 * c.count({Kind::F, Axis::z}), 1e-12);
    EXPECT_EQ(low.compatible, base.compatible);
    WeightResult top = deformed_log_weight(lat, c, std::sqrt(3.0));
    EXPECT_TRUE(std::isinf(top.total_log2()));
    EXPECT_TRUE(top.is_zero());
    EXPECT_THROW(deformed_log_weight(lat, c, 0.5), DeformationRangeError);
    EXPECT_THROW(deformed_log_weight(lat, c, 1.8), DeformationRangeError);
}

TEST(Oracle, DeformedRatios) {
    for (double a : {0.8, 1.0, 1.3}) {
        CheckResult r = deformed_ratio_check(a);
        EXPECT_TRUE(r.pass) << format_check(r);
        EXPECT_LE(r.deviation, 1e-9);
    }
    EXPECT_TRUE(deformed_identity_check().pass);
}

TEST(Oracle, SuitePasses) {
    for (const CheckResult& r : run_oracle_suite()) {
        EXPECT_TRUE(r.pass) << format_check(r);
    }
}

TEST(Sampler, AcceptanceRule) {
    Rng rng(1);
    WeightResult from, up, down, zero;
    from.log2_weight = 0;
    up.log2_weight = 1;
    down.log2_weight = -1;
    zero.compatible = false;
    int accepted_down = 0;
    for (int i = 0; i < 1000; ++i) {
        EXPECT_TRUE(metropolis_accept(from, up, 0.0, rng));
        EXPECT_FALSE(metropolis_accept(from, zero, 0.0, rng));
        accepted_down += metropolis_accept(from, down, 0.0, rng);
    }
    EXPECT_NEAR(accepted_down, 500, 3 * std::sqrt(250.0));
}

// Three compatible states with weights 4 : 2 : 1 and one zero-weight state,
// symmetric uniform proposal over the other three.
TEST(Sampler, DetailedBalanceToy) {
    std::vector<WeightResult> states(4);
    states[0].log2_weight = 0;
    states[1].log2_weight = -1;
    states[2].log2_weight = -2;
    states[3].compatible = false;
    Rng rng(12345);
    int cur = 0;
    std::array<int, 4> counts{};
    const int n = 40000, thin = 10;
    for (int step = 0; step < n * thin; ++step) {
        int prop = (cur + 1 + static_cast<int>(rng.below(3))) % 4;
        if (metropolis_accept(states[cur], states[prop], 0.0, rng)) cur = prop;
        if (step % thin == 0) ++counts[cur];
    }
    EXPECT_EQ(counts[3], 0);
    const double target[3] = {4.0 / 7, 2.0 / 7, 1.0 / 7};
    for (int i = 0; i < 3; ++i) {
        double sigma = std::sqrt(n * target[i] * (1 - target[i]));
        EXPECT_NEAR(counts[i], n * target[i], 3 * sigma) << i;
    }
}

TEST(Sampler, DeterministicAndCompatible) {
    ChainParams p;
    p.width = p.height = 6;
    p.seed = 99;
    p.sample_count = 8;
    p.burn_in_sweeps = 10;
    ChainResult a = run_chain(p);
    ChainResult b = run_chain(p);
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_GT(a.acceptance_rate, 0.0);
    EXPECT_LT(a.acceptance_rate, 1.0);
    Lattice lat(6, 6, BoundaryMode::open);
    for (const PovmConfig& c : a.samples) EXPECT_TRUE(log_weight(lat, c).compatible);
    p.seed = 100;
    EXPECT_NE(run_chain(p).samples, a.samples);
}

TEST(Sampler, RejectsBadParams) {
    ChainParams p;
    p.deform_a = 2.0;
    EXPECT_THROW(validate(p), ChainParamsError);
    p.deform_a = 1.0;
    p.sample_count = 0;
    EXPECT_THROW(validate(p), ChainParamsError);
}

TEST(Sampler, OutcomeFrequencies) {
    // Each F axis 4/15 and each K axis 1/15 in the bulk.
    ChainParams p;
    p.width = p.height = 16;
    p.mode = BoundaryMode::torus;
    p.seed = 5;
    p.burn_in_sweeps = 50;
    p.sample_count = 60;
    p.sweeps_between_samples = 2;
    std::array<double, 6> freq{};
    std::vector<std::array<double, 6>> per;
    run_chain(p, [&](const PovmConfig& c, const SampleDiagnostics&) {
        std::array<double, 6> f{};
        for (PovmOutcome o : c.outcomes()) f[o.code()] += 1.0 / c.size();
        per.push_back(f);
    });
    for (int o = 0; o < 6; ++o) {
        double mean = 0.0, var = 0.0;
        for (const auto& f : per) mean += f[o] / per.size();
        for (const auto& f : per) var += (f[o] - mean) * (f[o] - mean) / (per.size() - 1);
        freq[o] = mean;
        double target = o < 3 ? 4.0 / 15 : 1.0 / 15;
        // Consecutive samples are correlated; allow a wide band.
        EXPECT_NEAR(mean, target, 5 * std::sqrt(var / per.size()) + 0.01) << o;
    }
}

}  // namespace aklt
