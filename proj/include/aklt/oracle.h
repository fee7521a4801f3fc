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

#ifndef AKLT_ORACLE_H
#define AKLT_ORACLE_H

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aklt/lattice.h"
#include "aklt/povm.h"

namespace aklt {

using Complex = std::complex<double>;
/// Operator on the four virtual qubits of one site. Basis index bit q is the qubit of slot q.
using SiteMatrix = Eigen::Matrix<Complex, 16, 16>;
using SiteVector = Eigen::Matrix<Complex, 16, 1>;

class OracleError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct IdentityCheck {
    std::string name;
    double deviation;
    bool pass;
};

/// The six POVM elements in the four-qubit representation plus the supporting
/// projectors.
struct SiteOperatorTable {
    std::array<SiteMatrix, 6> ops;  // indexed by PovmOutcome::code()
    SiteMatrix symmetric_projector;
    std::array<SiteMatrix, 3> ghz_minus;   // |GHZ-_a><GHZ-_a|, by axis
    std::array<SiteMatrix, 3> code_projector;  // Pi_a, by axis

    const SiteMatrix& op(PovmOutcome outcome) const { return ops[outcome.code()]; }

    /// D(a) = (1/a) Pi_z + (P_S - Pi_z), acting on the symmetric subspace.
    SiteMatrix deformation(double a) const;
    /// a Pi_z + (P_S - Pi_z); inverse of deformation(a) on the symmetric subspace.
    SiteMatrix deformation_inverse(double a) const;
    /// Deformed POVM element: scale * op * D(a), with scale^2 = (3 - a^2) / (2 a^2) for F_z.
    SiteMatrix deformed_op(PovmOutcome outcome, double a) const;
};

/// Builds the table and checks its algebraic identities; throws OracleError on failure.
SiteOperatorTable build_site_operators();

/// Completeness, K = sqrt(3/2) K F, Pi-sandwich form of the GHZ projector, ranks, Hermiticity.
std::vector<IdentityCheck> verify_site_operators(const SiteOperatorTable& table, double tolerance = 1e-12);

/// Exact outcome probabilities by summing over bond basis states, with
/// dangling legs traced as maximally mixed.
class OracleEvaluator {
   public:
    static constexpr int kMaxBonds = 20;

    /// Throws OracleError when edges + legs exceed kMaxBonds.
    explicit OracleEvaluator(const Lattice& lattice, double a = 1.0);

    double probability(const PovmConfig& config) const;

    /// Unnormalized <E_1 (x) ... (x) E_N> over the bond state.
    double weight(const PovmConfig& config) const;
    double normalization() const { return normalization_; }

    const Lattice& lattice() const { return lattice_; }
    double deformation() const { return a_; }

   private:
    // sqrt(eigenvalue) * eigenvector for each nonzero eigenvalue.
    using Decomposition = std::vector<SiteVector>;

    double contract(const std::vector<const Decomposition*>& sites) const;

    Lattice lattice_;
    double a_;
    int num_bonds_;
    int num_legs_;
    std::vector<uint8_t> index_table_;  // [word * N + site] -> 4-bit site basis index
    std::vector<int8_t> sign_table_;    // [word] -> product of singlet signs
    std::array<Decomposition, 6> outcome_decomp_;
    Decomposition norm_decomp_;
    double normalization_;
};

double config_probability(const Lattice& lattice, const PovmConfig& config, double a = 1.0);

/// Independent state-vector path: materializes site and partner qubits. Limited to 22 qubits.
double dense_config_probability(const Lattice& lattice, const PovmConfig& config, double a = 1.0);

/// Reduced density operator of one site's four virtual qubits, from the state-vector path.
SiteMatrix dense_reduced_site_density(const Lattice& lattice, int site);

struct EnumerationResult {
    int width = 0;
    int height = 0;
    std::vector<double> probabilities;  // index = sum_site code(site) * 6^site
    double total = 0.0;
    int zero_count = 0;  // probabilities below 1e-12

    PovmConfig config(size_t index) const;
};

inline constexpr double kZeroProbability = 1e-12;

/// All 6^N probabilities; requires N <= 4.
EnumerationResult enumerate_all(const Lattice& lattice, double a = 1.0);

/// marginals[site][code]
std::vector<std::array<double, 6>> single_site_marginals(const EnumerationResult& table);
std::vector<std::array<double, 6>> single_site_marginals(const Lattice& lattice);

}  // namespace aklt

#endif
