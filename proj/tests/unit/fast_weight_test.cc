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

#include "aklt/fast_weight.h"

#include <gtest/gtest.h>

#include "aklt/sampler.h"

namespace aklt {

TEST(FastWeight, MatchesPipelineOnRandomConfigs) {
    for (auto [w, h, mode] : {std::tuple{2, 2, BoundaryMode::open}, std::tuple{3, 3, BoundaryMode::open},
                              std::tuple{4, 4, BoundaryMode::torus}, std::tuple{6, 5, BoundaryMode::open},
                              std::tuple{8, 8, BoundaryMode::torus}}) {
        Lattice lat(w, h, mode);
        FastWeightEngine engine(lat);
        Rng rng = Rng::stream(11, {static_cast<uint64_t>(w), static_cast<uint64_t>(h)});
        int incompatible = 0;
        for (int i = 0; i < 3000; ++i) {
            PovmConfig c = random_config(lat, rng);
            WeightResult a = log_weight(lat, c);
            WeightResult b = engine.evaluate(c);
            incompatible += !a.compatible;
            ASSERT_EQ(a, b) << serialize_config(c);
        }
        RecordProperty("incompatible_" + std::to_string(w) + "x" + std::to_string(h), incompatible);
    }
}

TEST(Sampler, ModerateLatticeEquilibrates) {
    ChainParams p;
    p.width = p.height = 32;
    p.burn_in_sweeps = 2;
    p.sample_count = 4;
    p.sweeps_between_samples = 1;
    p.seed = 3;
    ChainResult r = run_chain(p);
    EXPECT_GT(r.acceptance_rate, 0.3);
    EXPECT_LT(r.acceptance_rate, 0.9);
    EXPECT_GT(r.mean_k_fraction, 0.1);
}

TEST(LocalUpdate, MatchesFullRecompute) {
    for (auto [w, h, mode] : {std::tuple{2, 2, BoundaryMode::open}, std::tuple{2, 2, BoundaryMode::torus},
                              std::tuple{3, 3, BoundaryMode::open}, std::tuple{4, 4, BoundaryMode::torus},
                              std::tuple{7, 5, BoundaryMode::open}, std::tuple{12, 12, BoundaryMode::torus}}) {
        Lattice lat(w, h, mode);
        ChainEngines engines(lat);
        ChainState state = initialize_chain(lat, engines);
        Rng rng = Rng::stream(5, {static_cast<uint64_t>(w * 100 + h)});
        int checked = 0;
        for (int i = 0; i < 20000; ++i) {
            int site = static_cast<int>(rng.below(lat.num_sites()));
            uint8_t proposal = static_cast<uint8_t>((state.codes[site] + 1 + rng.below(5)) % 6);
            WeightResult local = engines.local.propose(state.codes, state.weight, site, proposal);
            std::vector<uint8_t> next = state.codes;
            next[site] = proposal;
            WeightResult full = engines.full.evaluate(next);
            ASSERT_EQ(local, full) << "step " << i;
            ++checked;
            // Bias toward K-rich states so kernels are nontrivial.
            if (full.compatible && (full.log2_weight >= state.weight.log2_weight - 2 || rng.bernoulli(0.3))) {
                state.codes = next;
                state.weight = full;
            }
        }
        EXPECT_EQ(checked, 20000);
    }
}

}  // namespace aklt
