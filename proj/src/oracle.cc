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

#include "aklt/oracle.h"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>

#include "aklt/weight.h"

namespace aklt {

namespace {

using Qubit = Eigen::Matrix<Complex, 2, 1>;

// +1 eigenstate of sigma_a when plus is true, -1 eigenstate otherwise.
Qubit axis_state(Axis axis, bool plus) {
    const double r = 1.0 / std::sqrt(2.0);
    Qubit q;
    switch (axis) {
        case Axis::z:
            q << (plus ? 1.0 : 0.0), (plus ? 0.0 : 1.0);
            break;
        case Axis::x:
            q << r, (plus ? r : -r);
            break;
        case Axis::y:
            q << r, (plus ? Complex(0, r) : Complex(0, -r));
            break;
    }
    return q;
}

SiteVector fourfold(const Qubit& q) {
    SiteVector v;
    for (int i = 0; i < 16; ++i) {
        Complex amp = 1.0;
        for (int bit = 0; bit < 4; ++bit) {
            amp *= q((i >> bit) & 1);
        }
        v(i) = amp;
    }
    return v;
}

SiteMatrix projector(const SiteVector& v) { return v * v.adjoint(); }

SiteMatrix pauli_power4(Axis axis) {
    // sigma_axis on every qubit.
    SiteMatrix m = SiteMatrix::Zero();
    for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
            Complex amp = 1.0;
            for (int bit = 0; bit < 4; ++bit) {
                int r = (i >> bit) & 1;
                int c = (j >> bit) & 1;
                Complex e = 0.0;
                switch (axis) {
                    case Axis::x:
                        e = (r != c) ? 1.0 : 0.0;
                        break;
                    case Axis::y:
                        e = (r == c) ? 0.0 : (r == 0 ? Complex(0, -1) : Complex(0, 1));
                        break;
                    case Axis::z:
                        e = (r == c) ? (r == 0 ? 1.0 : -1.0) : 0.0;
                        break;
                }
                amp *= e;
            }
            m(i, j) = amp;
        }
    }
    return m;
}

int numerical_rank(const SiteMatrix& m) {
    Eigen::JacobiSVD<SiteMatrix> svd(m);
    int rank = 0;
    for (int i = 0; i < 16; ++i) {
        if (svd.singularValues()(i) > 1e-9) {
            ++rank;
        }
    }
    return rank;
}

std::vector<SiteVector> decompose(const SiteMatrix& effect) {
    Eigen::SelfAdjointEigenSolver<SiteMatrix> solver(effect);
    std::vector<SiteVector> out;
    for (int k = 0; k < 16; ++k) {
        double lambda = solver.eigenvalues()(k);
        if (lambda > 1e-13) {
            out.push_back(std::sqrt(lambda) * solver.eigenvectors().col(k));
        }
    }
    return out;
}

}  // namespace

SiteMatrix SiteOperatorTable::deformation(double a) const {
    const SiteMatrix& pz = code_projector[static_cast<int>(Axis::z)];
    return pz / a + (symmetric_projector - pz);
}

SiteMatrix SiteOperatorTable::deformation_inverse(double a) const {
    const SiteMatrix& pz = code_projector[static_cast<int>(Axis::z)];
    return pz * a + (symmetric_projector - pz);
}

SiteMatrix SiteOperatorTable::deformed_op(PovmOutcome outcome, double a) const {
    double scale = 1.0;
    if (outcome == PovmOutcome{Kind::F, Axis::z}) {
        scale = std::sqrt(std::max(0.0, 3.0 - a * a) / (2.0 * a * a));
    }
    return scale * op(outcome) * deformation(a);
}

SiteOperatorTable build_site_operators() {
    SiteOperatorTable t;
    const double f = std::sqrt(2.0 / 3.0);
    const double k = std::sqrt(1.0 / 3.0);
    for (Axis axis : kAxes) {
        int i = static_cast<int>(axis);
        SiteVector up = fourfold(axis_state(axis, true));
        SiteVector down = fourfold(axis_state(axis, false));
        SiteVector ghz = (up - down) / std::sqrt(2.0);
        t.code_projector[i] = projector(up) + projector(down);
        t.ghz_minus[i] = projector(ghz);
        t.ops[PovmOutcome{Kind::F, axis}.code()] = f * t.code_projector[i];
        t.ops[PovmOutcome{Kind::K, axis}.code()] = k * t.ghz_minus[i];
    }
    // Symmetric subspace: one Dicke state per Hamming weight.
    t.symmetric_projector = SiteMatrix::Zero();
    for (int w = 0; w <= 4; ++w) {
        SiteVector dicke = SiteVector::Zero();
        for (int i = 0; i < 16; ++i) {
            if (std::popcount(static_cast<unsigned>(i)) == w) {
                dicke(i) = 1.0;
            }
        }
        dicke.normalize();
        t.symmetric_projector += projector(dicke);
    }
    for (const IdentityCheck& c : verify_site_operators(t)) {
        if (!c.pass) {
            throw OracleError("site operator identity failed: " + c.name);
        }
    }
    return t;
}

std::vector<IdentityCheck> verify_site_operators(const SiteOperatorTable& t, double tolerance) {
    std::vector<IdentityCheck> out;
    auto add = [&](std::string name, double dev) { out.push_back({std::move(name), dev, dev <= tolerance}); };

    SiteMatrix sum = SiteMatrix::Zero();
    for (const SiteMatrix& m : t.ops) {
        sum += m.adjoint() * m;
    }
    add("completeness", (sum - t.symmetric_projector).cwiseAbs().maxCoeff());

    const double s = std::sqrt(1.5);
    for (Axis axis : kAxes) {
        int i = static_cast<int>(axis);
        std::string a(1, axis_char(axis));
        const SiteMatrix& kop = t.op({Kind::K, axis});
        const SiteMatrix& fop = t.op({Kind::F, axis});
        add("K_" + a + " = sqrt(3/2) K_" + a + " F_" + a, (kop - s * kop * fop).cwiseAbs().maxCoeff());
        add("K_" + a + " = sqrt(1/2) GHZ_" + a + " F_" + a,
            (kop - std::sqrt(0.5) * t.ghz_minus[i] * fop).cwiseAbs().maxCoeff());

        SiteMatrix b4 = pauli_power4(logical_x_axis(axis));
        SiteMatrix sandwich = t.code_projector[i] * (SiteMatrix::Identity() - b4) * 0.5 * t.code_projector[i];
        add("GHZ_" + a + " = Pi (1 - b^4)/2 Pi", (sandwich - t.ghz_minus[i]).cwiseAbs().maxCoeff());

        add("rank F_" + a + " = 2", std::abs(numerical_rank(fop) - 2));
        add("rank K_" + a + " = 1", std::abs(numerical_rank(kop) - 1));
        add("F_" + a + " inside symmetric subspace",
            (t.symmetric_projector * fop * t.symmetric_projector - fop).cwiseAbs().maxCoeff());
    }
    for (int c = 0; c < 6; ++c) {
        add("hermitian " + to_string(PovmOutcome::from_code(c)),
            (t.ops[c] - t.ops[c].adjoint()).cwiseAbs().maxCoeff());
    }
    add("P_S idempotent", (t.symmetric_projector * t.symmetric_projector - t.symmetric_projector).cwiseAbs().maxCoeff());
    add("trace P_S = 5", std::abs(t.symmetric_projector.trace() - 5.0));
    return out;
}

OracleEvaluator::OracleEvaluator(const Lattice& lattice, double a) : lattice_(lattice), a_(a) {
    check_deformation(a);
    int num_edges = static_cast<int>(lattice.edges().size());
    num_legs_ = static_cast<int>(lattice.boundary_legs().size());
    num_bonds_ = num_edges + num_legs_;
    if (num_bonds_ > kMaxBonds) {
        throw OracleError("lattice too large for exhaustive oracle: " + std::to_string(num_bonds_) + " bonds");
    }
    // Bond word: edge bits low, leg bits high.
    int n = lattice.num_sites();
    size_t words = size_t{1} << num_bonds_;
    index_table_.assign(words * n, 0);
    sign_table_.assign(words, 1);
    for (size_t w = 0; w < words; ++w) {
        int sign = 1;
        for (int e = 0; e < num_edges; ++e) {
            const Edge& edge = lattice.edges()[e];
            int bit = static_cast<int>((w >> e) & 1);
            if (bit) {
                sign = -sign;
            }
            index_table_[w * n + edge.a] |= static_cast<uint8_t>(bit << static_cast<int>(edge.slot_a));
            index_table_[w * n + edge.b] |= static_cast<uint8_t>((1 - bit) << static_cast<int>(edge.slot_b));
        }
        for (int l = 0; l < num_legs_; ++l) {
            const BoundaryLeg& leg = lattice.boundary_legs()[l];
            int bit = static_cast<int>((w >> (num_edges + l)) & 1);
            index_table_[w * n + leg.site] |= static_cast<uint8_t>(bit << static_cast<int>(leg.slot));
        }
        sign_table_[w] = static_cast<int8_t>(sign);
    }

    SiteOperatorTable table = build_site_operators();
    SiteMatrix state_op = table.deformation_inverse(a);
    for (int c = 0; c < 6; ++c) {
        SiteMatrix o = table.deformed_op(PovmOutcome::from_code(c), a) * state_op;
        outcome_decomp_[c] = decompose(o.adjoint() * o);
    }
    norm_decomp_ = decompose(state_op.adjoint() * state_op);
    std::vector<const Decomposition*> sites(n, &norm_decomp_);
    normalization_ = contract(sites);
}

double OracleEvaluator::contract(const std::vector<const Decomposition*>& sites) const {
    int n = lattice_.num_sites();
    int num_edges = num_bonds_ - num_legs_;
    size_t words = size_t{1} << num_bonds_;
    size_t edge_words = size_t{1} << num_edges;
    size_t leg_words = size_t{1} << num_legs_;

    std::vector<int> choice(n, 0);
    std::vector<Complex> amp(leg_words);
    double total = 0.0;
    while (true) {
        std::fill(amp.begin(), amp.end(), Complex(0.0));
        for (size_t w = 0; w < words; ++w) {
            Complex term = static_cast<double>(sign_table_[w]);
            const uint8_t* idx = &index_table_[w * n];
            for (int v = 0; v < n; ++v) {
                term *= std::conj((*sites[v])[choice[v]](idx[v]));
            }
            amp[w / edge_words] += term;
        }
        for (const Complex& x : amp) {
            total += std::norm(x);
        }
        int v = 0;
        while (v < n && ++choice[v] == static_cast<int>(sites[v]->size())) {
            choice[v] = 0;
            ++v;
        }
        if (v == n) {
            break;
        }
    }
    // Singlet normalization 1/sqrt(2) per edge, maximally mixed legs 1/2 each.
    return total * std::ldexp(1.0, -num_edges) * std::ldexp(1.0, -num_legs_);
}

double OracleEvaluator::weight(const PovmConfig& config) const {
    if (!config.matches(lattice_)) {
        throw std::invalid_argument("config shape does not match lattice");
    }
    std::vector<const Decomposition*> sites;
    for (int v = 0; v < lattice_.num_sites(); ++v) {
        const Decomposition& d = outcome_decomp_[config[v].code()];
        if (d.empty()) {
            return 0.0;
        }
        sites.push_back(&d);
    }
    return contract(sites);
}

double OracleEvaluator::probability(const PovmConfig& config) const { return weight(config) / normalization_; }

double config_probability(const Lattice& lattice, const PovmConfig& config, double a) {
    return OracleEvaluator(lattice, a).probability(config);
}

namespace {

using StateVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

// Site qubits 4v + slot, then one partner qubit per leg.
StateVector bond_state(const Lattice& lattice) {
    int n = lattice.num_sites();
    int num_edges = static_cast<int>(lattice.edges().size());
    int num_legs = static_cast<int>(lattice.boundary_legs().size());
    int qubits = 4 * n + num_legs;
    if (qubits > 22) {
        throw OracleError("lattice too large for state-vector oracle");
    }
    StateVector psi = StateVector::Zero(Eigen::Index{1} << qubits);
    int bonds = num_edges + num_legs;
    for (size_t w = 0; w < (size_t{1} << bonds); ++w) {
        size_t index = 0;
        int sign = 1;
        auto put = [&](int qubit, int bit) { index |= static_cast<size_t>(bit) << qubit; };
        for (int e = 0; e < num_edges; ++e) {
            const Edge& edge = lattice.edges()[e];
            int bit = static_cast<int>((w >> e) & 1);
            sign = bit ? -sign : sign;
            put(4 * edge.a + static_cast<int>(edge.slot_a), bit);
            put(4 * edge.b + static_cast<int>(edge.slot_b), 1 - bit);
        }
        for (int l = 0; l < num_legs; ++l) {
            const BoundaryLeg& leg = lattice.boundary_legs()[l];
            int bit = static_cast<int>((w >> (num_edges + l)) & 1);
            sign = bit ? -sign : sign;
            put(4 * leg.site + static_cast<int>(leg.slot), bit);
            put(4 * n + l, 1 - bit);
        }
        psi(static_cast<Eigen::Index>(index)) = static_cast<double>(sign) * std::sqrt(std::ldexp(1.0, -bonds));
    }
    return psi;
}

void apply_site(StateVector& psi, int site, const SiteMatrix& m) {
    size_t shift = 4 * static_cast<size_t>(site);
    size_t low = (size_t{1} << shift) - 1;
    size_t size = static_cast<size_t>(psi.size());
    SiteVector in;
    for (size_t rest = 0; rest < size / 16; ++rest) {
        size_t base = (rest & low) | ((rest & ~low) << 4);
        for (size_t i = 0; i < 16; ++i) {
            in(static_cast<Eigen::Index>(i)) = psi(static_cast<Eigen::Index>(base | (i << shift)));
        }
        SiteVector out = m * in;
        for (size_t i = 0; i < 16; ++i) {
            psi(static_cast<Eigen::Index>(base | (i << shift))) = out(static_cast<Eigen::Index>(i));
        }
    }
}

}  // namespace

double dense_config_probability(const Lattice& lattice, const PovmConfig& config, double a) {
    check_deformation(a);
    if (!config.matches(lattice)) {
        throw std::invalid_argument("config shape does not match lattice");
    }
    SiteOperatorTable table = build_site_operators();
    StateVector psi = bond_state(lattice);
    for (int v = 0; v < lattice.num_sites(); ++v) {
        apply_site(psi, v, table.deformation_inverse(a));
    }
    double norm = psi.squaredNorm();
    for (int v = 0; v < lattice.num_sites(); ++v) {
        apply_site(psi, v, table.deformed_op(config[v], a));
    }
    return psi.squaredNorm() / norm;
}

SiteMatrix dense_reduced_site_density(const Lattice& lattice, int site) {
    SiteOperatorTable table = build_site_operators();
    StateVector psi = bond_state(lattice);
    for (int v = 0; v < lattice.num_sites(); ++v) {
        apply_site(psi, v, table.symmetric_projector);
    }
    psi /= psi.norm();
    size_t shift = 4 * static_cast<size_t>(site);
    size_t low = (size_t{1} << shift) - 1;
    size_t size = static_cast<size_t>(psi.size());
    SiteMatrix rho = SiteMatrix::Zero();
    for (size_t rest = 0; rest < size / 16; ++rest) {
        size_t base = (rest & low) | ((rest & ~low) << 4);
        SiteVector v;
        for (size_t i = 0; i < 16; ++i) {
            v(static_cast<Eigen::Index>(i)) = psi(static_cast<Eigen::Index>(base | (i << shift)));
        }
        rho += v * v.adjoint();
    }
    return rho;
}

PovmConfig EnumerationResult::config(size_t index) const {
    std::vector<PovmOutcome> outcomes;
    for (int s = 0; s < width * height; ++s) {
        outcomes.push_back(PovmOutcome::from_code(static_cast<int>(index % 6)));
        index /= 6;
    }
    return PovmConfig(width, height, std::move(outcomes));
}

EnumerationResult enumerate_all(const Lattice& lattice, double a) {
    if (lattice.num_sites() > 4) {
        throw OracleError("enumerate_all requires at most 4 sites");
    }
    OracleEvaluator eval(lattice, a);
    EnumerationResult r;
    r.width = lattice.width();
    r.height = lattice.height();
    size_t count = 1;
    for (int s = 0; s < lattice.num_sites(); ++s) {
        count *= 6;
    }
    r.probabilities.resize(count);
    for (size_t i = 0; i < count; ++i) {
        double p = eval.probability(r.config(i));
        r.probabilities[i] = p;
        r.total += p;
        if (p < kZeroProbability) {
            ++r.zero_count;
        }
    }
    return r;
}

std::vector<std::array<double, 6>> single_site_marginals(const EnumerationResult& table) {
    int n = table.width * table.height;
    std::vector<std::array<double, 6>> m(n, std::array<double, 6>{});
    for (size_t i = 0; i < table.probabilities.size(); ++i) {
        size_t index = i;
        for (int s = 0; s < n; ++s) {
            m[s][index % 6] += table.probabilities[i];
            index /= 6;
        }
    }
    return m;
}

std::vector<std::array<double, 6>> single_site_marginals(const Lattice& lattice) {
    return single_site_marginals(enumerate_all(lattice));
}

}  // namespace aklt
