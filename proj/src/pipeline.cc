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

#include "aklt/pipeline.h"

#include <algorithm>
#include <thread>

#include "aklt/domain_graph.h"
#include "aklt/rng.h"
#include "aklt/sampler.h"

namespace aklt {

ThinnedSample process_config(const Lattice& lattice, const PovmConfig& config) {
    DomainCensus census = domain_census(lattice, config);
    DomainGraph graph = build_domain_graph(lattice, config);
    ThinResult thinned = thin(simple_graph(lattice, graph), classify_measured(graph, config));
    return {std::move(thinned.graph), thinned.stats, census};
}

uint64_t chain_seed(uint64_t seed, int L, int chain) {
    Rng r = Rng::stream(seed, {static_cast<uint64_t>(L), static_cast<uint64_t>(chain)});
    return r();
}

Ensemble sample_ensemble(const EnsembleParams& params) {
    int chains = std::clamp(params.chains, 1, std::max(1, params.samples));
    struct ChainOut {
        std::vector<ThinnedSample> samples;
        std::vector<PovmConfig> configs;
        double acceptance = 0.0;
        double k_sum = 0.0;
    };
    std::vector<ChainOut> out(chains);
    Lattice lattice(params.L, params.L, params.mode);

    auto run = [&](int c) {
        ChainParams cp;
        cp.width = cp.height = params.L;
        cp.mode = params.mode;
        cp.seed = chain_seed(params.seed, params.L, c);
        cp.burn_in_sweeps = params.burn_in_sweeps;
        cp.sweeps_between_samples = params.sweeps_between_samples;
        cp.sample_count = params.samples / chains + (c < params.samples % chains ? 1 : 0);
        cp.deform_a = params.deform_a;
        cp.f_only = params.f_only;
        ChainOut& o = out[c];
        ChainResult r = run_chain(cp, [&](const PovmConfig& config, const SampleDiagnostics& d) {
            o.samples.push_back(process_config(lattice, config));
            o.k_sum += d.k_fraction;
            if (params.keep_configs) {
                o.configs.push_back(config);
            }
        });
        o.acceptance = r.acceptance_rate;
    };

    int workers = std::clamp(params.threads, 1, chains);
    if (workers == 1) {
        for (int c = 0; c < chains; ++c) {
            run(c);
        }
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int c = w; c < chains; c += workers) {
                    run(c);
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    Ensemble e;
    e.L = params.L;
    double k_sum = 0.0;
    for (ChainOut& o : out) {
        e.acceptance_rate += o.acceptance / chains;
        k_sum += o.k_sum;
        for (auto& s : o.samples) {
            e.samples.push_back(std::move(s));
        }
        for (auto& c : o.configs) {
            e.configs.push_back(std::move(c));
        }
    }
    e.k_fraction = e.samples.empty() ? 0.0 : k_sum / static_cast<double>(e.samples.size());
    return e;
}

}  // namespace aklt
