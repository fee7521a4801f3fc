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

#include "aklt/oracle_suite.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

#include "aklt/oracle.h"
#include "aklt/rng.h"
#include "aklt/weight.h"

namespace aklt {

namespace {

std::string lattice_name(int w, int h, BoundaryMode mode) {
    std::ostringstream s;
    s << w << "x" << h << " " << to_string(mode);
    return s.str();
}

CheckResult make(std::string name, double deviation, double tolerance, std::string detail = {}) {
    return {std::move(name), deviation, tolerance, deviation <= tolerance, std::move(detail)};
}

}  // namespace

std::vector<CheckResult> site_operator_checks() {
    std::vector<CheckResult> out;
    SiteOperatorTable table = build_site_operators();
    for (const IdentityCheck& c : verify_site_operators(table)) {
        CheckResult r{"site operators: " + c.name, c.deviation, 1e-12, c.pass, {}};
        out.push_back(r);
    }
    return out;
}

CheckResult completeness_check(int w, int h, BoundaryMode mode) {
    Lattice lat(w, h, mode);
    EnumerationResult t = enumerate_all(lat);
    std::ostringstream d;
    d.precision(17);
    d << "sum=" << t.total << " zero_configs=" << t.zero_count;
    return make("completeness " + lattice_name(w, h, mode), std::abs(t.total - 1.0), 1e-9, d.str());
}

CheckResult weight_formula_check(int w, int h, BoundaryMode mode) {
    Lattice lat(w, h, mode);
    EnumerationResult t = enumerate_all(lat);
    std::vector<WeightResult> weights;
    int64_t wmax = INT64_MIN;
    for (size_t i = 0; i < t.probabilities.size(); ++i) {
        weights.push_back(log_weight(lat, t.config(i)));
        if (weights.back().compatible) {
            wmax = std::max(wmax, weights.back().log2_weight);
        }
    }
    double z = 0.0;
    for (const WeightResult& r : weights) {
        if (r.compatible) {
            z += std::ldexp(1.0, static_cast<int>(r.log2_weight - wmax));
        }
    }
    double worst_ratio = 0.0;
    double worst_zero = 0.0;
    int flagged = 0;
    int unflagged_zero = 0;
    for (size_t i = 0; i < weights.size(); ++i) {
        double p = t.probabilities[i];
        if (!weights[i].compatible) {
            ++flagged;
            worst_zero = std::max(worst_zero, p);
            continue;
        }
        double expect = std::ldexp(1.0, static_cast<int>(weights[i].log2_weight - wmax)) / z;
        worst_ratio = std::max(worst_ratio, std::abs(p - expect) / expect);
        unflagged_zero += p < kZeroProbability;
    }
    std::ostringstream d;
    d << "configs=" << weights.size() << " incompatible=" << flagged << " max_incompatible_p=" << worst_zero
      << " zero_but_compatible=" << unflagged_zero;
    CheckResult r = make("weight formula " + lattice_name(w, h, mode), worst_ratio, 1e-9, d.str());
    r.pass = r.pass && worst_zero < kZeroProbability && unflagged_zero == 0;
    return r;
}

CheckResult anchor_check() {
    Lattice lat(2, 1, BoundaryMode::open);
    OracleEvaluator eval(lat);
    PovmConfig fz(lat, {Kind::F, Axis::z});
    PovmConfig kz(lat, {Kind::K, Axis::z});
    double wf = eval.weight(fz);
    double wk = eval.weight(kz);
    double ratio = eval.probability(kz) / eval.probability(fz);
    double formula = std::exp2(static_cast<double>(log_weight(lat, kz).log2_weight - log_weight(lat, fz).log2_weight));
    double dev = std::max({std::abs(wf - 1.0 / 144) * 144, std::abs(wk - 1.0 / 2304) * 2304,
                           std::abs(ratio - 1.0 / 16) * 16, std::abs(formula - 1.0 / 16) * 16});
    std::ostringstream d;
    d.precision(12);
    d << "weight(Fz,Fz)=" << wf << " weight(Kz,Kz)=" << wk << " ratio=" << ratio << " formula_ratio=" << formula
      << " p(Fz,Fz)=" << eval.probability(fz);
    return make("anchor 1x2 open K_z/F_z = 1/16", dev, 1e-9, d.str());
}

CheckResult marginal_check(int w, int h, BoundaryMode mode) {
    Lattice lat(w, h, mode);
    auto marginals = single_site_marginals(lat);
    double dev = 0.0;
    for (const auto& site : marginals) {
        for (int c = 0; c < 6; ++c) {
            double target = c < 3 ? 4.0 / 15 : 1.0 / 15;
            dev = std::max(dev, std::abs(site[c] - target));
        }
    }
    return make("marginals " + lattice_name(w, h, mode), dev, 1e-9);
}

CheckResult dense_agreement_check() {
    Lattice lat(2, 1, BoundaryMode::open);
    OracleEvaluator eval(lat);
    double dev = 0.0;
    for (int i = 0; i < 36; ++i) {
        PovmConfig c(2, 1, {PovmOutcome::from_code(i % 6), PovmOutcome::from_code(i / 6)});
        dev = std::max(dev, std::abs(eval.probability(c) - dense_config_probability(lat, c)));
    }
    return make("bond sum vs state vector 1x2 open", dev, 1e-10);
}

CheckResult reduced_density_check(int w, int h, BoundaryMode mode) {
    Lattice lat(w, h, mode);
    SiteOperatorTable table = build_site_operators();
    SiteMatrix target = table.symmetric_projector / 5.0;
    double dev = 0.0;
    for (int s = 0; s < lat.num_sites(); ++s) {
        dev = std::max(dev, (dense_reduced_site_density(lat, s) - target).cwiseAbs().maxCoeff());
    }
    return make("reduced site density " + lattice_name(w, h, mode), dev, 1e-9);
}

CheckResult deformed_ratio_check(double a) {
    Lattice lat(2, 1, BoundaryMode::open);
    OracleEvaluator deformed(lat, a);
    OracleEvaluator plain(lat);
    PovmConfig ref(lat, {Kind::F, Axis::x});
    double p_ref = deformed.probability(ref);
    double w_ref = deformed_log_weight(lat, ref, a).total_log2();
    double dev = 0.0;
    double identity_dev = 0.0;
    for (int i = 0; i < 36; ++i) {
        PovmConfig c(2, 1, {PovmOutcome::from_code(i % 6), PovmOutcome::from_code(i / 6)});
        WeightResult r = deformed_log_weight(lat, c, a);
        double p = deformed.probability(c);
        if (!r.compatible) {
            dev = std::max(dev, p);
            continue;
        }
        double expect = std::exp2(r.total_log2() - w_ref);
        dev = std::max(dev, std::abs(p / p_ref - expect) / expect);
        if (a == 1.0) {
            identity_dev = std::max(identity_dev, std::abs(p - plain.probability(c)));
        }
    }
    char name[64];
    std::snprintf(name, sizeof(name), "deformed ratios 1x2 open a=%.2f", a);
    CheckResult res = make(name, dev, 1e-9);
    if (a == 1.0) {
        res.detail = "max |deformed - plain| = " + std::to_string(identity_dev);
        res.pass = res.pass && identity_dev == 0.0;
    }
    return res;
}

CheckResult deformed_identity_check() {
    int mismatches = 0;
    int total = 0;
    for (auto [w, h, mode] : {std::tuple{3, 3, BoundaryMode::open}, std::tuple{4, 4, BoundaryMode::torus}}) {
        Lattice lat(w, h, mode);
        Rng rng = Rng::stream(2024, {static_cast<uint64_t>(w)});
        for (int i = 0; i < 300; ++i) {
            PovmConfig c = random_config(lat, rng);
            mismatches += !(deformed_log_weight(lat, c, 1.0) == log_weight(lat, c));
            ++total;
        }
    }
    return make("deformed weight at a=1 equals plain weight", mismatches, 0.0,
                std::to_string(total) + " random configurations");
}

std::vector<CheckResult> run_oracle_suite() {
    std::vector<CheckResult> out = site_operator_checks();
    const std::vector<std::tuple<int, int, BoundaryMode>> lattices = {
        {2, 1, BoundaryMode::open}, {2, 2, BoundaryMode::open}, {2, 2, BoundaryMode::torus}};
    for (auto [w, h, m] : lattices) {
        out.push_back(completeness_check(w, h, m));
    }
    for (auto [w, h, m] : lattices) {
        out.push_back(weight_formula_check(w, h, m));
    }
    out.push_back(anchor_check());
    for (auto [w, h, m] : lattices) {
        out.push_back(marginal_check(w, h, m));
    }
    out.push_back(dense_agreement_check());
    out.push_back(reduced_density_check(2, 1, BoundaryMode::open));
    out.push_back(reduced_density_check(2, 2, BoundaryMode::torus));
    for (double a : {0.8, 1.0, 1.3}) {
        out.push_back(deformed_ratio_check(a));
    }
    out.push_back(deformed_identity_check());
    return out;
}

std::string format_check(const CheckResult& c) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), " deviation=%.3e tolerance=%.1e", c.deviation, c.tolerance);
    std::string s = (c.pass ? "PASS " : "FAIL ") + c.name + buf;
    if (!c.detail.empty()) {
        s += " (" + c.detail + ")";
    }
    return s;
}

}  // namespace aklt
