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

#include "aklt/cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>

#include "aklt/domain_graph.h"
#include "aklt/fast_weight.h"
#include "aklt/graph_rewrite.h"
#include "aklt/oracle.h"
#include "aklt/oracle_suite.h"
#include "aklt/percolation.h"
#include "aklt/pipeline.h"
#include "aklt/sampler.h"
#include "aklt/weight.h"

namespace aklt {

namespace {

class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class RuntimeFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string join(const std::vector<std::string>& cells) {
    std::string s;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ',';
        s += cells[i];
    }
    return s + "\n";
}

std::string stamp(const std::string& command, uint64_t seed) {
    return "# aklt " AKLT_VERSION " seed=" + std::to_string(seed) + " command=" + command + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Common {
    uint64_t seed = 1;
    int threads = 1;
    std::string out = ".";
    std::string config;
};

class Output {
   public:
    Output(const Common& common, std::string command) : common_(common), command_(std::move(command)) {}

    void prepare() const {
        std::error_code ec;
        std::filesystem::create_directories(common_.out, ec);
        if (ec || !std::filesystem::is_directory(common_.out)) {
            throw RuntimeFailure("cannot create output directory " + common_.out);
        }
    }

    std::string path(const std::string& name) const { return (std::filesystem::path(common_.out) / name).string(); }

    /// Writes stamp + body.
    void write(const std::string& name, const std::string& body, bool stamped = true) const {
        std::ofstream f(path(name), std::ios::binary | std::ios::trunc);
        if (f) {
            if (stamped) f << stamp(command_, common_.seed);
            f << body;
        }
        if (!f) {
            throw RuntimeFailure("cannot write " + path(name));
        }
    }

   private:
    const Common& common_;
    std::string command_;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--seed", c.seed, "Master seed")->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out, "Output directory")->capture_default_str();
    sub->add_option("--config", c.config, "key = value file; flags override it");
}

BoundaryMode mode_of(const std::string& s) {
    try {
        return parse_boundary_mode(s);
    } catch (const std::exception&) {
        throw UsageError("mode must be open or torus, got " + s);
    }
}

uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b) {
    Rng r = Rng::stream(seed, {a, b});
    return r();
}

// ---------------------------------------------------------------- percolation

struct PercolateOptions {
    std::string sizes = "40,60,80";
    std::string mode = "open";
    double p_min = 0.08;
    double p_max = 0.20;
    double p_step = 0.01;
    int trials = 400;
    int trials_per_sample = 10;
    int chains = 4;
    int burn_in = 100;
    int gap = 5;
    double a = 1.0;
};

struct SizeResult {
    int L = 0;
    PercCurve curve;
    PercPoint at_zero;
    int samples = 0;
    std::array<double, 4> r{};  // r0 mean, r0 err, r1 mean, r1 err
    double sum_mean = 0.0;
    double sum_err = 0.0;
    double planar_fraction = 0.0;
    double k_fraction = 0.0;
    std::vector<DomainCensus> censuses;
};

struct PercolateRun {
    std::vector<int> sizes;
    std::vector<double> grid;
    std::vector<SizeResult> results;
};

void mean_err(const std::vector<double>& v, double& mean, double& err) {
    double n = static_cast<double>(v.size());
    mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    err = v.size() > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
}

void validate(const PercolateOptions& o, std::vector<int>& sizes, std::vector<double>& grid) {
    try {
        sizes = parse_int_list(o.sizes);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--sizes: ") + e.what());
    }
    if (sizes.empty()) throw UsageError("--sizes is empty");
    for (int L : sizes) {
        if (L < 2) throw UsageError("sizes must be at least 2");
    }
    if (!(o.p_step > 0.0) || !(o.p_min >= 0.0) || !(o.p_max <= 1.0) || o.p_min > o.p_max) {
        throw UsageError("need 0 <= p-min <= p-max <= 1 and p-step > 0");
    }
    if (o.trials < 1 || o.trials_per_sample < 1 || o.chains < 1 || o.burn_in < 0 || o.gap < 1) {
        throw UsageError("trials, trials-per-sample, chains and gap must be positive");
    }
    ChainParams cp;
    cp.deform_a = o.a;
    try {
        aklt::validate(cp);
    } catch (const ChainParamsError& e) {
        throw UsageError(e.what());
    }
    mode_of(o.mode);
    grid = make_grid(o.p_min, o.p_max, o.p_step);
}

PercolateRun run_percolation(const PercolateOptions& o, uint64_t seed, int threads) {
    PercolateRun run;
    validate(o, run.sizes, run.grid);
    int samples = (o.trials + o.trials_per_sample - 1) / o.trials_per_sample;
    for (int L : run.sizes) {
        EnsembleParams ep;
        ep.L = L;
        ep.mode = mode_of(o.mode);
        ep.seed = seed;
        ep.samples = samples;
        ep.chains = o.chains;
        ep.burn_in_sweeps = o.burn_in;
        ep.sweeps_between_samples = o.gap;
        ep.deform_a = o.a;
        ep.threads = threads;
        Ensemble e = sample_ensemble(ep);

        SizeResult res;
        res.L = L;
        res.samples = static_cast<int>(e.samples.size());
        res.k_fraction = e.k_fraction;
        std::vector<SimpleGraph> graphs;
        std::vector<double> r0, r1, sum;
        int planar = 0;
        for (ThinnedSample& s : e.samples) {
            r0.push_back(s.stats.r0);
            r1.push_back(s.stats.r1);
            sum.push_back(s.stats.r0 + s.stats.r1);
            planar += is_planar(s.graph);
            res.censuses.push_back(s.census);
            graphs.push_back(std::move(s.graph));
        }
        mean_err(r0, res.r[0], res.r[1]);
        mean_err(r1, res.r[2], res.r[3]);
        mean_err(sum, res.sum_mean, res.sum_err);
        res.planar_fraction = static_cast<double>(planar) / res.samples;
        uint64_t deletion_seed = derive_seed(seed, static_cast<uint64_t>(L), 0x64656c);
        res.curve = estimate_p_span(graphs, L, run.grid, o.trials_per_sample, deletion_seed, threads);
        res.at_zero = estimate_p_span(graphs, L, {0.0}, 1, deletion_seed, threads).points[0];
        run.results.push_back(std::move(res));
    }
    return run;
}

std::string percolation_csv(const PercolateRun& run) {
    std::string s = "L,p_delete,trials,spans,p_span,stderr\n";
    for (const SizeResult& r : run.results) {
        for (const PercPoint& p : r.curve.points) {
            s += join({std::to_string(r.L), num(p.p_delete), std::to_string(p.trials), std::to_string(p.span_count),
                       num(p.p_span), num(p.std_error)});
        }
    }
    return s;
}

std::string gnuplot_script(const PercolateRun& run, double p_star, double nu, const std::string& stamp_line) {
    std::string sizes;
    for (int L : run.sizes) {
        if (!sizes.empty()) sizes += ' ';
        sizes += std::to_string(L);
    }
    std::ostringstream g;
    g << stamp_line;
    g << "# gnuplot script; reads only the CSV files written next to it.\n";
    g << "set datafile separator ','\n";
    g << "set datafile commentschars '#'\n";
    g << "set terminal pngcairo size 800,600\n";
    g << "sizes = '" << sizes << "'\n";
    g << "pstar = " << num(p_star) << "\n";
    g << "nu = " << num(nu) << "\n";
    g << "\nset output 'span_vs_L.png'\n";
    g << "set xlabel 'L'\nset ylabel 'p_span (p_delete = 0)'\n";
    g << "plot 'span_vs_L.csv' every ::1 using 1:5:6 with yerrorlines title 'p_span'\n";
    g << "\nset output 'percolation.png'\n";
    g << "set xlabel 'p_delete'\nset ylabel 'p_span'\n";
    g << "plot for [L in sizes] 'percolation.csv' every ::1 using 2:(column(1) == L + 0 ? column(5) : 1/0):6 "
         "with yerrorlines title 'L = '.L\n";
    g << "\nset output 'collapse.png'\n";
    g << "set xlabel '(p_delete - p*) L^{1/nu}'\nset ylabel 'p_span'\n";
    g << "plot for [L in sizes] 'percolation.csv' every ::1 using ((column(2) - pstar) * (L + 0) ** (1 / nu)):"
         "(column(1) == L + 0 ? column(5) : 1/0) with linespoints title 'L = '.L\n";
    g << "\nset output 'thinning.png'\n";
    g << "set xlabel 'L'\nset ylabel 'fraction of domains'\n";
    g << "plot 'thinning.csv' every ::1 using 1:3:4 with yerrorlines title 'r0', \\\n"
         "     '' every ::1 using 1:5:6 with yerrorlines title 'r1', \\\n"
         "     '' every ::1 using 1:7:8 with yerrorlines title 'r0 + r1'\n";
    return g.str();
}

struct CrossingOutcome {
    bool found = false;
    CrossingEstimate estimate;
    std::string error;
};

CrossingOutcome try_crossing(const PercolateRun& run) {
    CrossingOutcome c;
    std::vector<PercCurve> curves;
    for (const SizeResult& r : run.results) curves.push_back(r.curve);
    try {
        c.estimate = find_crossing(curves);
        c.found = true;
    } catch (const PercolationError& e) {
        c.error = e.what();
    }
    return c;
}

bool domain_fit(const PercolateRun& run, DomainSizeStats& st) {
    std::vector<std::vector<DomainCensus>> by_L;
    for (const SizeResult& r : run.results) by_L.push_back(r.censuses);
    try {
        st = largest_domain_stats(run.sizes, by_L);
        return true;
    } catch (const PercolationError&) {
        return false;
    }
}

void write_percolation(const Output& out, const PercolateRun& run, const CrossingOutcome& cross,
                       const std::string& stamp_line) {
    out.write("percolation.csv", percolation_csv(run));

    std::string zero = "L,samples,trials,spans,p_span,stderr\n";
    std::string thin = "L,samples,r0,r0_err,r1,r1_err,r0_plus_r1,r0_plus_r1_err,planar_fraction,k_fraction\n";
    std::string domains = "L,N,samples,mean_largest,stderr,max_largest,in_fit\n";
    for (const SizeResult& r : run.results) {
        zero += join({std::to_string(r.L), std::to_string(r.samples), std::to_string(r.at_zero.trials),
                      std::to_string(r.at_zero.span_count), num(r.at_zero.p_span), num(r.at_zero.std_error)});
        thin += join({std::to_string(r.L), std::to_string(r.samples), num(r.r[0]), num(r.r[1]), num(r.r[2]),
                      num(r.r[3]), num(r.sum_mean), num(r.sum_err), num(r.planar_fraction), num(r.k_fraction)});
    }
    out.write("span_vs_L.csv", zero);
    out.write("thinning.csv", thin);

    DomainSizeStats st;
    if (domain_fit(run, st)) {
        for (const DomainSizeRow& row : st.rows) {
            domains += join({std::to_string(row.L), std::to_string(row.N), std::to_string(row.samples),
                             num(row.mean_largest), num(row.std_error), std::to_string(row.max_largest),
                             row.in_fit ? "1" : "0"});
        }
        out.write("domains.csv", domains);
        out.write("domain_fit.csv",
                  "slope_vs_lnN,intercept,r2,power,axis_x,axis_x_err,axis_y,axis_y_err,axis_z,axis_z_err\n" +
                      join({num(st.slope), num(st.intercept), num(st.r2), num(st.power), num(st.axis_fraction[0]),
                            num(st.axis_stderr[0]), num(st.axis_fraction[1]), num(st.axis_stderr[1]),
                            num(st.axis_fraction[2]), num(st.axis_stderr[2])}));
    }

    std::string crossing = "p_star,spread,intersections\n";
    std::string pairs = "L_a,L_b,p_cross\n";
    if (cross.found) {
        crossing += join({num(cross.estimate.p_star), num(cross.estimate.spread),
                          std::to_string(cross.estimate.intersections.size())});
        for (const Intersection& x : cross.estimate.intersections) {
            pairs += join({std::to_string(x.L_a), std::to_string(x.L_b), num(x.p)});
        }
    } else {
        crossing += "nan,nan,0\n";
    }
    out.write("crossing.csv", crossing);
    out.write("intersections.csv", pairs);
    out.write("plot.gp", gnuplot_script(run, cross.found ? cross.estimate.p_star : 0.0, 4.0 / 3.0, stamp_line),
              false);
}

void add_percolate_options(CLI::App* sub, PercolateOptions& o) {
    sub->add_option("--sizes", o.sizes, "Comma-separated linear sizes")->capture_default_str();
    sub->add_option("--mode", o.mode, "open or torus")->capture_default_str();
    sub->add_option("--p-min", o.p_min)->capture_default_str();
    sub->add_option("--p-max", o.p_max)->capture_default_str();
    sub->add_option("--p-step", o.p_step)->capture_default_str();
    sub->add_option("--trials", o.trials, "Deletion trials per point")->capture_default_str();
    sub->add_option("--trials-per-sample", o.trials_per_sample, "Deletion trials on each sampled graph")
        ->capture_default_str();
    sub->add_option("--chains", o.chains, "Independent Markov chains per size")->capture_default_str();
    sub->add_option("--burn-in", o.burn_in, "Burn-in sweeps per chain")->capture_default_str();
    sub->add_option("--gap", o.gap, "Sweeps between samples")->capture_default_str();
}

// ------------------------------------------------------------------- commands

int cmd_percolate(const Common& c, const PercolateOptions& o, std::ostream& out) {
    Output files(c, "percolate");
    PercolateRun probe;
    validate(o, probe.sizes, probe.grid);
    files.prepare();
    PercolateRun run = run_percolation(o, c.seed, c.threads);
    CrossingOutcome cross = try_crossing(run);
    write_percolation(files, run, cross, stamp("percolate", c.seed));
    for (const SizeResult& r : run.results) {
        out << "L=" << r.L << " samples=" << r.samples << " p_span(0)=" << num(r.at_zero.p_span)
            << " r0=" << num(r.r[0]) << " r1=" << num(r.r[2]) << "\n";
    }
    if (cross.found) {
        out << "p_star=" << num(cross.estimate.p_star) << " spread=" << num(cross.estimate.spread) << "\n";
    } else {
        out << "no crossing: " << cross.error << "\n";
    }
    return kExitOk;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path) {
    std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    CsvTable t;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(trim(cell));
        if (t.header.empty()) {
            t.header = cells;
        } else {
            t.rows.push_back(cells);
        }
    }
    return t;
}

int column(const CsvTable& t, const std::string& name, const std::string& path) {
    auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end()) throw UsageError(path + " has no column " + name);
    return static_cast<int>(it - t.header.begin());
}

int cmd_collapse(const Common& c, std::string input, std::string crossing, double p_star, double nu,
                 std::ostream& out) {
    if (!(nu > 0.0)) throw UsageError("--nu must be positive");
    Output files(c, "collapse");
    if (input.empty()) input = files.path("percolation.csv");
    CsvTable t = read_csv(input);
    int cl = column(t, "L", input), cp = column(t, "p_delete", input), cs = column(t, "p_span", input);
    std::vector<PercCurve> curves;
    for (const auto& row : t.rows) {
        int L = std::stoi(row.at(cl));
        auto it = std::find_if(curves.begin(), curves.end(), [L](const PercCurve& k) { return k.L == L; });
        if (it == curves.end()) {
            curves.push_back({L, {}});
            it = curves.end() - 1;
        }
        PercPoint p;
        p.p_delete = std::stod(row.at(cp));
        p.p_span = std::stod(row.at(cs));
        it->points.push_back(p);
    }
    if (curves.size() < 2) throw UsageError("collapse needs curves for two or more sizes");
    if (std::isnan(p_star)) {
        if (crossing.empty()) crossing = files.path("crossing.csv");
        CsvTable ct = read_csv(crossing);
        if (ct.rows.empty()) throw UsageError(crossing + " has no rows");
        p_star = std::stod(ct.rows[0].at(column(ct, "p_star", crossing)));
        if (std::isnan(p_star)) throw RuntimeFailure("no crossing estimate in " + crossing);
    }
    files.prepare();
    CollapseResult r = collapse(curves, p_star, nu);
    std::string s = "L,p_delete,x,p_span\n";
    for (size_t i = 0; i < curves.size(); ++i) {
        std::vector<PercPoint> pts = curves[i].points;
        std::sort(pts.begin(), pts.end(), [](const PercPoint& a, const PercPoint& b) { return a.p_delete < b.p_delete; });
        for (size_t k = 0; k < pts.size(); ++k) {
            s += join({std::to_string(curves[i].L), num(pts[k].p_delete), num(r.curves[i].x[k]), num(pts[k].p_span)});
        }
    }
    files.write("collapse.csv", s);
    double ratio = r.unscaled_residual / r.residual;
    files.write("collapse_summary.csv", "p_star,nu,residual,unscaled_residual,ratio\n" +
                                            join({num(p_star), num(nu), num(r.residual), num(r.unscaled_residual),
                                                  num(ratio)}));
    out << "residual=" << num(r.residual) << " unscaled=" << num(r.unscaled_residual) << " ratio=" << num(ratio)
        << "\n";
    return kExitOk;
}

std::string trend_of(const std::vector<double>& xs, const std::vector<double>& ys, double& tau) {
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (!std::isnan(ys[i])) pts.emplace_back(xs[i], ys[i]);
    }
    std::sort(pts.begin(), pts.end());
    tau = std::nan("");
    if (pts.size() < 2) return "undetermined";
    int concordant = 0, discordant = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            double d = (pts[j].first - pts[i].first) * (pts[j].second - pts[i].second);
            concordant += d > 0;
            discordant += d < 0;
        }
    }
    double pairs = static_cast<double>(pts.size() * (pts.size() - 1) / 2);
    tau = (concordant - discordant) / pairs;
    bool up = true, down = true;
    for (size_t i = 1; i < pts.size(); ++i) {
        up = up && pts[i].second > pts[i - 1].second;
        down = down && pts[i].second < pts[i - 1].second;
    }
    return up ? "increasing" : down ? "decreasing" : "non-monotone";
}

int cmd_deform_sweep(const Common& c, PercolateOptions o, const std::string& a_list, std::ostream& out) {
    std::vector<double> as;
    try {
        as = parse_double_list(a_list);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--a: ") + e.what());
    }
    if (as.empty()) throw UsageError("--a is empty");
    for (double a : as) {
        PercolateOptions check = o;
        check.a = a;
        PercolateRun probe;
        validate(check, probe.sizes, probe.grid);
    }
    Output files(c, "deform-sweep");
    files.prepare();
    std::string s = "a,p_star,spread,intersections,domain_slope,domain_r2,mean_largest_max_L,k_fraction\n";
    std::vector<double> p_stars, slopes;
    for (size_t i = 0; i < as.size(); ++i) {
        o.a = as[i];
        PercolateRun run = run_percolation(o, derive_seed(c.seed, 0x6465, i), c.threads);
        CrossingOutcome cross = try_crossing(run);
        DomainSizeStats st;
        bool fit = domain_fit(run, st);
        double ps = cross.found ? cross.estimate.p_star : std::nan("");
        double k = 0.0;
        for (const SizeResult& r : run.results) k += r.k_fraction / run.results.size();
        p_stars.push_back(ps);
        slopes.push_back(fit ? st.slope : std::nan(""));
        s += join({num(as[i]), num(ps), cross.found ? num(cross.estimate.spread) : "nan",
                   std::to_string(cross.found ? cross.estimate.intersections.size() : 0),
                   fit ? num(st.slope) : "nan", fit ? num(st.r2) : "nan",
                   num(run.results.back().censuses.empty() ? 0.0 : [&] {
                       double m = 0.0;
                       for (const DomainCensus& d : run.results.back().censuses) m += d.largest;
                       return m / run.results.back().censuses.size();
                   }()),
                   num(k)});
        out << "a=" << num(as[i]) << " p_star=" << num(ps) << "\n";
    }
    files.write("deform_sweep.csv", s);
    double tau_p = 0.0, tau_s = 0.0;
    std::string tp = trend_of(as, p_stars, tau_p);
    std::string ts = trend_of(as, slopes, tau_s);
    files.write("deform_trend.csv",
                "quantity,trend,kendall_tau\n" + join({"p_star", tp, num(tau_p)}) + join({"domain_slope", ts, num(tau_s)}));
    out << "p_star trend: " << tp << " (kendall tau " << num(tau_p) << ")\n";
    return kExitOk;
}

struct SampleOptions {
    int size = 16;
    std::string mode = "open";
    int samples = 10;
    int burn_in = 100;
    int gap = 5;
    int chains = 1;
    double a = 1.0;
    bool f_only = false;
};

int cmd_sample(const Common& c, const SampleOptions& o, std::ostream& out) {
    if (o.size < 1 || o.samples < 1 || o.chains < 1 || o.gap < 1 || o.burn_in < 0) {
        throw UsageError("size, samples, chains and gap must be positive");
    }
    EnsembleParams ep;
    ep.L = o.size;
    ep.mode = mode_of(o.mode);
    ep.seed = c.seed;
    ep.samples = o.samples;
    ep.chains = o.chains;
    ep.burn_in_sweeps = o.burn_in;
    ep.sweeps_between_samples = o.gap;
    ep.deform_a = o.a;
    ep.f_only = o.f_only;
    ep.threads = c.threads;
    ep.keep_configs = true;
    ChainParams cp;
    cp.deform_a = o.a;
    try {
        aklt::validate(cp);
    } catch (const ChainParamsError& e) {
        throw UsageError(e.what());
    }
    Output files(c, "sample");
    files.prepare();
    Ensemble e = sample_ensemble(ep);
    Lattice lat(o.size, o.size, ep.mode);
    FastWeightEngine engine(lat);
    std::string grids;
    std::string csv = "sample,log2_weight,total_log2,num_K,domains,largest_domain,r0,r1\n";
    for (size_t i = 0; i < e.configs.size(); ++i) {
        grids += (i ? "\n" : "") + serialize_config(e.configs[i]) + "\n";
        WeightResult w = engine.evaluate(e.configs[i]);
        double total = static_cast<double>(w.log2_weight);
        if (o.a != 1.0 && w.num_Fz > 0) total += deformation_log2_factor(o.a) * w.num_Fz;
        const ThinnedSample& s = e.samples[i];
        csv += join({std::to_string(i), std::to_string(w.log2_weight), num(total), std::to_string(w.num_K),
                     std::to_string(s.stats.real_domains), std::to_string(s.census.largest), num(s.stats.r0),
                     num(s.stats.r1)});
    }
    files.write("samples.txt", grids);
    files.write("samples.csv", csv);
    out << e.configs.size() << " samples, acceptance " << num(e.acceptance_rate) << ", K fraction "
        << num(e.k_fraction) << "\n";
    return kExitOk;
}

std::vector<PovmConfig> read_configs(const std::string& input, BoundaryMode mode, std::vector<Lattice>& lattices) {
    std::vector<PovmConfig> configs;
    try {
        configs = parse_config_stream(read_file(input));
    } catch (const ConfigParseError& e) {
        throw UsageError(input + ":" + std::to_string(e.row()) + ":" + std::to_string(e.column()) + ": " + e.what());
    }
    if (configs.empty()) throw UsageError(input + " holds no configuration");
    for (const PovmConfig& cfg : configs) lattices.emplace_back(cfg.width(), cfg.height(), mode);
    return configs;
}

int cmd_weight(const Common& c, const std::string& input, const std::string& mode, double a,
               const std::string& edges, std::ostream& out) {
    try {
        check_deformation(a);
    } catch (const DeformationRangeError& e) {
        throw UsageError(e.what());
    }
    std::vector<Lattice> lats;
    std::vector<PovmConfig> configs = read_configs(input, mode_of(mode), lats);
    Output files(c, "weight");
    files.prepare();
    std::string csv =
        "config,compatible,log2_weight,deformation_log2,total_log2,raw_edges,vertices,num_K,kernel_dim,num_Fz\n";
    std::string edge_text;
    for (size_t i = 0; i < configs.size(); ++i) {
        WeightResult w = deformed_log_weight(lats[i], configs[i], a);
        csv += join({std::to_string(i), w.compatible ? "1" : "0", std::to_string(w.log2_weight),
                     num(w.deformation_log2_extra), num(w.total_log2()), std::to_string(w.raw_edges),
                     std::to_string(w.num_vertices), std::to_string(w.num_K), std::to_string(w.kernel_dim),
                     std::to_string(w.num_Fz)});
        if (!edges.empty()) {
            edge_text += "# config " + std::to_string(i) + "\n" +
                         export_edge_list(build_domain_graph(lats[i], configs[i]));
        }
    }
    files.write("weight.csv", csv);
    if (!edges.empty()) files.write(edges, edge_text);
    out << csv;
    return kExitOk;
}

int cmd_thin(const Common& c, const std::string& input, const std::string& mode, std::ostream& out) {
    std::vector<Lattice> lats;
    std::vector<PovmConfig> configs = read_configs(input, mode_of(mode), lats);
    Output files(c, "thin");
    files.prepare();
    std::string verts = "config,vertex,x,y,sites,touches_left,touches_right\n";
    std::string edges = "config,u,v\n";
    std::string stats =
        "config,r0,r1,vertices_before,vertices_after,real_domains,partners,measured,z_measured,planar,spans\n";
    for (size_t i = 0; i < configs.size(); ++i) {
        ThinnedSample s = process_config(lats[i], configs[i]);
        const SimpleGraph& g = s.graph;
        for (int v = 0; v < g.num_vertices(); ++v) {
            if (!g.alive(v)) continue;
            const GraphVertex& gv = g.vertex(v);
            verts += join({std::to_string(i), std::to_string(v), num(gv.x), num(gv.y), std::to_string(gv.sites),
                           gv.touches_left ? "1" : "0", gv.touches_right ? "1" : "0"});
        }
        for (auto [u, v] : g.edges()) {
            edges += join({std::to_string(i), std::to_string(u), std::to_string(v)});
        }
        const ThinningStats& st = s.stats;
        stats += join({std::to_string(i), num(st.r0), num(st.r1), std::to_string(st.vertices_before),
                       std::to_string(st.vertices_after), std::to_string(st.real_domains),
                       std::to_string(st.partners), std::to_string(st.measured), std::to_string(st.z_measured),
                       is_planar(g) ? "1" : "0", spans(g) ? "1" : "0"});
    }
    files.write("thin_vertices.csv", verts);
    files.write("thin_edges.csv", edges);
    files.write("thin_stats.csv", stats);
    out << stats;
    return kExitOk;
}

int cmd_oracle_check(const std::string& extra, std::ostream& out) {
    std::vector<CheckResult> checks = run_oracle_suite();
    if (!extra.empty()) {
        int w = 0, h = 0;
        char sep = 0;
        std::istringstream in(extra);
        if (!(in >> w >> sep >> h) || sep != 'x' || w < 1 || h < 1) {
            throw UsageError("--lattice expects WxH");
        }
        if (w * h > 4) {
            throw UsageError("exhaustive enumeration is limited to 4 sites, got " + extra);
        }
        for (BoundaryMode m : {BoundaryMode::open, BoundaryMode::torus}) {
            checks.push_back(completeness_check(w, h, m));
            checks.push_back(weight_formula_check(w, h, m));
            checks.push_back(marginal_check(w, h, m));
        }
    }
    int failed = 0;
    for (const CheckResult& ch : checks) {
        out << format_check(ch) << "\n";
        failed += !ch.pass;
    }
    out << (checks.size() - failed) << "/" << checks.size() << " checks passed\n";
    return failed ? kExitSuiteFailed : kExitOk;
}

}  // namespace

std::map<std::string, std::string> parse_key_value_file(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("line " + std::to_string(number) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("line " + std::to_string(number) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_double_list(text)) {
        if (v != std::floor(v)) throw std::invalid_argument("not an integer: " + num(v));
        out.push_back(static_cast<int>(v));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream s(text);
    std::string cell;
    while (std::getline(s, cell, ',')) {
        cell = trim(cell);
        if (cell.empty()) continue;
        size_t used = 0;
        double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument("bad number: " + cell);
        out.push_back(v);
    }
    return out;
}

std::vector<double> make_grid(double lo, double hi, double step) {
    std::vector<double> g;
    int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
    for (int i = 0; i <= n; ++i) {
        g.push_back(std::round((lo + i * step) * 1e9) / 1e9);
    }
    return g;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args = raw_args;
    // Config file values go right after the subcommand so later flags win.
    for (size_t i = 0; i < raw_args.size(); ++i) {
        std::string path;
        if (raw_args[i] == "--config" && i + 1 < raw_args.size()) {
            path = raw_args[i + 1];
        } else if (raw_args[i].rfind("--config=", 0) == 0) {
            path = raw_args[i].substr(9);
        } else {
            continue;
        }
        std::map<std::string, std::string> kv;
        try {
            kv = parse_key_value_file(read_file(path));
        } catch (const std::exception& e) {
            err << "error: " << path << ": " << e.what() << "\n";
            return kExitUsage;
        }
        std::vector<std::string> injected;
        for (const auto& [k, v] : kv) {
            if (k != "config") injected.push_back("--" + k + "=" + v);
        }
        args.insert(args.begin() + 1, injected.begin(), injected.end());
        break;
    }

    CLI::App app{"Spin-2 AKLT measurement, thinning and percolation toolkit", "aklt"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_version_flag("--version", AKLT_VERSION);
    app.require_subcommand(1);

    Common c;
    std::function<int()> action;

    SampleOptions so;
    auto* sample = app.add_subcommand("sample", "Sample POVM configurations by Metropolis");
    add_common(sample, c);
    sample->add_option("--size", so.size, "Linear size L")->capture_default_str();
    sample->add_option("--mode", so.mode, "open or torus")->capture_default_str();
    sample->add_option("--samples", so.samples)->capture_default_str();
    sample->add_option("--burn-in", so.burn_in)->capture_default_str();
    sample->add_option("--gap", so.gap, "Sweeps between samples")->capture_default_str();
    sample->add_option("--chains", so.chains)->capture_default_str();
    sample->add_option("--a", so.a, "Deformation parameter")->capture_default_str();
    sample->add_flag("--f-only", so.f_only, "Propose F outcomes only");
    sample->callback([&] { action = [&] { return cmd_sample(c, so, out); }; });

    std::string input, mode = "open", edges;
    double a = 1.0;
    auto* weight = app.add_subcommand("weight", "Exact log2 weight of configurations");
    add_common(weight, c);
    weight->add_option("--input", input, "Configuration grid file")->required();
    weight->add_option("--mode", mode)->capture_default_str();
    weight->add_option("--a", a)->capture_default_str();
    weight->add_option("--edges", edges, "Also write the domain-graph edge list to this file in --out");
    weight->callback([&] { action = [&] { return cmd_weight(c, input, mode, a, edges, out); }; });

    auto* thin = app.add_subcommand("thin", "Thin configurations into planar graphs");
    add_common(thin, c);
    thin->add_option("--input", input, "Configuration grid file")->required();
    thin->add_option("--mode", mode)->capture_default_str();
    thin->callback([&] { action = [&] { return cmd_thin(c, input, mode, out); }; });

    PercolateOptions po;
    auto* percolate = app.add_subcommand("percolate", "Spanning probability versus deletion probability");
    add_common(percolate, c);
    add_percolate_options(percolate, po);
    percolate->add_option("--a", po.a, "Deformation parameter")->capture_default_str();
    percolate->callback([&] { action = [&] { return cmd_percolate(c, po, out); }; });

    std::string crossing;
    double p_star = std::nan("");
    double nu = 4.0 / 3.0;
    auto* coll = app.add_subcommand("collapse", "Finite-size scaling collapse of percolation curves");
    add_common(coll, c);
    coll->add_option("--input", input, "percolation.csv (default: in --out)");
    coll->add_option("--crossing", crossing, "crossing.csv (default: in --out)");
    coll->add_option("--p-star", p_star, "Override the crossing estimate");
    coll->add_option("--nu", nu)->capture_default_str();
    coll->callback([&] { action = [&] { return cmd_collapse(c, input, crossing, p_star, nu, out); }; });

    PercolateOptions dso;
    dso.sizes = "16,24,32";
    dso.p_min = 0.0;
    dso.p_max = 0.4;
    dso.p_step = 0.02;
    dso.trials = 200;
    std::string a_list = "0.7,0.85,1.0,1.15,1.3";
    auto* deform = app.add_subcommand("deform-sweep", "Percolation pipeline over a grid of deformations");
    add_common(deform, c);
    add_percolate_options(deform, dso);
    deform->add_option("--a", a_list, "Comma-separated deformation parameters")->capture_default_str();
    deform->callback([&] { action = [&] { return cmd_deform_sweep(c, dso, a_list, out); }; });

    std::string extra;
    auto* oracle = app.add_subcommand("oracle-check", "Exhaustive oracle checks on tiny lattices");
    add_common(oracle, c);
    oracle->add_option("--lattice", extra, "Extra WxH lattice (at most 4 sites)");
    oracle->callback([&] { action = [&] { return cmd_oracle_check(extra, out); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        return action();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace aklt
