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

#ifndef AKLT_SAMPLER_H
#define AKLT_SAMPLER_H

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "aklt/fast_weight.h"
#include "aklt/lattice.h"
#include "aklt/local_update.h"
#include "aklt/povm.h"
#include "aklt/rng.h"
#include "aklt/weight.h"

namespace aklt {

struct ChainParams {
    int width = 8;
    int height = 8;
    BoundaryMode mode = BoundaryMode::open;
    uint64_t seed = 1;
    int burn_in_sweeps = 100;
    int sweeps_between_samples = 5;
    int sample_count = 10;
    double deform_a = 1.0;
    /// Propose only F outcomes; samples the all-F sector.
    bool f_only = false;
    /// One F/K flip of a whole domain after every sweep.
    bool domain_flip = true;
};

class ChainParamsError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Throws ChainParamsError for nonpositive sizes or counts, or a outside [1/sqrt(3), sqrt(3)).
void validate(const ChainParams& params);

struct ChainState {
    std::vector<uint8_t> codes;  // outcome code per site
    WeightResult weight;
    uint64_t steps = 0;       // single-site proposals
    uint64_t accepted = 0;
    uint64_t rejected_incompatible = 0;
    uint64_t flip_proposals = 0;
    uint64_t flip_accepted = 0;

    PovmConfig config(const Lattice& lattice) const;
    double acceptance_rate() const { return steps ? static_cast<double>(accepted) / static_cast<double>(steps) : 0.0; }
    double k_fraction() const;
};

/// Full and local weight evaluators for one chain; not shareable between threads.
struct ChainEngines {
    explicit ChainEngines(const Lattice& lattice) : full(lattice), local(lattice) {}
    FastWeightEngine full;
    LocalWeightUpdater local;
};

/// All-F start with F_z on the (x + y even) sublattice and F_x on the other.
ChainState initialize_chain(const Lattice& lattice, ChainEngines& engines);

/// Log2 of the per-F_z deformation factor used by the acceptance ratio.
double sampler_deform_log2(double a);

/// Metropolis rule: rejects incompatible targets, else accepts with
/// min(1, 2^(delta log2 weight + deform_log2 * delta n_Fz)).
bool metropolis_accept(const WeightResult& from, const WeightResult& to, double deform_log2, Rng& rng);

/// One single-site Metropolis step. Returns true if the proposal was accepted.
bool metropolis_step(ChainState& state, ChainEngines& engines, Rng& rng, const ChainParams& params);

/// Flips K <-> F on every site of one uniformly chosen domain, accepted by the same ratio.
bool domain_flip_step(ChainState& state, const Lattice& lattice, ChainEngines& engines, Rng& rng,
                      const ChainParams& params);

/// N single-site steps followed by the optional domain flip.
void sweep(ChainState& state, const Lattice& lattice, ChainEngines& engines, Rng& rng, const ChainParams& params);

struct SampleDiagnostics {
    uint64_t step;
    double acceptance_rate;
    double k_fraction;
};

struct ChainResult {
    std::vector<PovmConfig> samples;
    std::vector<SampleDiagnostics> diagnostics;
    double acceptance_rate = 0.0;
    double mean_k_fraction = 0.0;
};

using SampleVisitor = std::function<void(const PovmConfig&, const SampleDiagnostics&)>;

/// Streams samples to the visitor instead of storing them.
ChainResult run_chain(const ChainParams& params, const SampleVisitor& visit);
ChainResult run_chain(const ChainParams& params);

}  // namespace aklt

#endif
