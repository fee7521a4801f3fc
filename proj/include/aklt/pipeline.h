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

#ifndef AKLT_PIPELINE_H
#define AKLT_PIPELINE_H

#include <cstdint>
#include <vector>

#include "aklt/graph_rewrite.h"
#include "aklt/lattice.h"
#include "aklt/percolation.h"
#include "aklt/povm.h"

namespace aklt {

struct ThinnedSample {
    SimpleGraph graph;
    ThinningStats stats;
    DomainCensus census;
};

/// Domain graph, measured classification and thinning of one configuration.
ThinnedSample process_config(const Lattice& lattice, const PovmConfig& config);

struct EnsembleParams {
    int L = 16;
    BoundaryMode mode = BoundaryMode::open;
    uint64_t seed = 1;
    int samples = 10;
    /// Independent chains; the samples are split between them in order. Fixed by
    /// the caller, not by the thread count, so results do not depend on threads.
    int chains = 4;
    int burn_in_sweeps = 100;
    int sweeps_between_samples = 5;
    double deform_a = 1.0;
    bool f_only = false;
    int threads = 1;
    bool keep_configs = false;
};

struct Ensemble {
    int L = 0;
    std::vector<ThinnedSample> samples;
    std::vector<PovmConfig> configs;  // only with keep_configs
    double acceptance_rate = 0.0;     // mean over chains
    double k_fraction = 0.0;          // mean over samples
};

/// Seed of chain c at size L.
uint64_t chain_seed(uint64_t seed, int L, int chain);

Ensemble sample_ensemble(const EnsembleParams& params);

}  // namespace aklt

#endif
