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

#include "aklt/sampler.h"

#include <cmath>

namespace aklt {

void validate(const ChainParams& p) {
    if (p.width < 1 || p.height < 1) {
        throw ChainParamsError("lattice size must be positive");
    }
    if (p.burn_in_sweeps < 0 || p.sweeps_between_samples < 1 || p.sample_count < 1) {
        throw ChainParamsError("burn-in must be nonnegative, gap and sample count positive");
    }
    try {
        check_deformation(p.deform_a);
    } catch (const DeformationRangeError& e) {
        throw ChainParamsError(e.what());
    }
    if (p.deform_a * p.deform_a >= 3.0 - 1e-12) {
        throw ChainParamsError("sampling needs a < sqrt(3); every F_z outcome has zero weight there");
    }
}

PovmConfig ChainState::config(const Lattice& lattice) const {
    std::vector<PovmOutcome> outcomes;
    outcomes.reserve(codes.size());
    for (uint8_t c : codes) {
        outcomes.push_back(PovmOutcome::from_code(c));
    }
    return PovmConfig(lattice.width(), lattice.height(), std::move(outcomes));
}

double ChainState::k_fraction() const {
    int k = 0;
    for (uint8_t c : codes) {
        k += c >= 3;
    }
    return codes.empty() ? 0.0 : static_cast<double>(k) / static_cast<double>(codes.size());
}

ChainState initialize_chain(const Lattice& lattice, ChainEngines& engines) {
    ChainState s;
    s.codes.resize(lattice.num_sites());
    for (int v = 0; v < lattice.num_sites(); ++v) {
        Axis axis = lattice.sublattice_sign(v) > 0 ? Axis::z : Axis::x;
        s.codes[v] = static_cast<uint8_t>(PovmOutcome{Kind::F, axis}.code());
    }
    s.weight = engines.full.evaluate(s.codes);
    return s;
}

double sampler_deform_log2(double a) { return a == 1.0 ? 0.0 : deformation_log2_factor(a); }

bool metropolis_accept(const WeightResult& from, const WeightResult& to, double deform_log2, Rng& rng) {
    if (!to.compatible) {
        return false;
    }
    double delta = static_cast<double>(to.log2_weight - from.log2_weight);
    if (deform_log2 != 0.0) {
        delta += deform_log2 * (to.num_Fz - from.num_Fz);
    }
    if (delta >= 0.0) {
        return true;
    }
    return rng.uniform() < std::exp2(delta);
}

bool metropolis_step(ChainState& state, ChainEngines& engines, Rng& rng, const ChainParams& params) {
    int n = static_cast<int>(state.codes.size());
    int site = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    uint8_t old = state.codes[site];
    uint8_t proposal;
    if (params.f_only) {
        // Two other F axes.
        proposal = static_cast<uint8_t>((old + 1 + rng.below(2)) % 3);
    } else {
        proposal = static_cast<uint8_t>((old + 1 + rng.below(5)) % 6);
    }
    ++state.steps;
    WeightResult w = engines.local.propose(state.codes, state.weight, site, proposal);
    if (!w.compatible) {
        ++state.rejected_incompatible;
    }
    if (metropolis_accept(state.weight, w, sampler_deform_log2(params.deform_a), rng)) {
        state.codes[site] = proposal;
        state.weight = w;
        ++state.accepted;
        return true;
    }
    return false;
}

bool domain_flip_step(ChainState& state, const Lattice& lattice, ChainEngines& engines, Rng& rng,
                      const ChainParams& params) {
    // The domain partition does not depend on kinds, so it is the same before and after the flip.
    engines.full.evaluate(state.codes);
    std::vector<int> roots = engines.full.domain_roots();
    std::vector<int> domain_roots;
    for (int v = 0; v < lattice.num_sites(); ++v) {
        if (roots[v] == v) {
            domain_roots.push_back(v);
        }
    }
    int chosen = domain_roots[rng.below(domain_roots.size())];
    std::vector<uint8_t> old = state.codes;
    for (int v = 0; v < lattice.num_sites(); ++v) {
        if (roots[v] == chosen) {
            state.codes[v] = static_cast<uint8_t>((state.codes[v] + 3) % 6);
        }
    }
    ++state.flip_proposals;
    WeightResult w = engines.full.evaluate(state.codes);
    if (metropolis_accept(state.weight, w, sampler_deform_log2(params.deform_a), rng)) {
        state.weight = w;
        ++state.flip_accepted;
        return true;
    }
    state.codes = std::move(old);
    return false;
}

void sweep(ChainState& state, const Lattice& lattice, ChainEngines& engines, Rng& rng, const ChainParams& params) {
    for (int i = 0; i < lattice.num_sites(); ++i) {
        metropolis_step(state, engines, rng, params);
    }
    if (params.domain_flip && !params.f_only) {
        domain_flip_step(state, lattice, engines, rng, params);
    }
}

ChainResult run_chain(const ChainParams& params, const SampleVisitor& visit) {
    validate(params);
    Lattice lattice(params.width, params.height, params.mode);
    ChainEngines engines(lattice);
    Rng rng = Rng::stream(params.seed, {0});
    ChainState state = initialize_chain(lattice, engines);
    for (int i = 0; i < params.burn_in_sweeps; ++i) {
        sweep(state, lattice, engines, rng, params);
    }
    ChainResult result;
    double k_sum = 0.0;
    for (int s = 0; s < params.sample_count; ++s) {
        for (int i = 0; i < params.sweeps_between_samples; ++i) {
            sweep(state, lattice, engines, rng, params);
        }
        SampleDiagnostics d{state.steps, state.acceptance_rate(), state.k_fraction()};
        k_sum += d.k_fraction;
        result.diagnostics.push_back(d);
        visit(state.config(lattice), d);
    }
    result.acceptance_rate = state.acceptance_rate();
    result.mean_k_fraction = k_sum / params.sample_count;
    return result;
}

ChainResult run_chain(const ChainParams& params) {
    std::vector<PovmConfig> samples;
    ChainResult r = run_chain(params, [&](const PovmConfig& c, const SampleDiagnostics&) { samples.push_back(c); });
    r.samples = std::move(samples);
    return r;
}

}  // namespace aklt
