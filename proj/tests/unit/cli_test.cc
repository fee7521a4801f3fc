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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace aklt {

namespace {

namespace fs = std::filesystem;

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("aklt_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

void expect_same_tree(const fs::path& a, const fs::path& b) {
    int files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        fs::path other = b / entry.path().filename();
        ASSERT_TRUE(fs::exists(other)) << other;
        EXPECT_EQ(slurp(entry.path()), slurp(other)) << entry.path().filename();
        ++files;
    }
    EXPECT_GT(files, 0);
}

const std::vector<std::string> kSmallPercolate = {"percolate", "--sizes", "6,8,10", "--trials", "30",
                                                  "--trials-per-sample", "10", "--p-min", "0", "--p-max", "0.4",
                                                  "--p-step", "0.1", "--burn-in", "5", "--chains", "2"};

}  // namespace

TEST(CliParsing, Lists) {
    EXPECT_EQ(parse_int_list("40, 60,80"), (std::vector<int>{40, 60, 80}));
    EXPECT_THROW(parse_int_list("4.5"), std::invalid_argument);
    EXPECT_THROW(parse_double_list("1,x"), std::invalid_argument);
    std::vector<double> g = make_grid(0.08, 0.20, 0.01);
    ASSERT_EQ(g.size(), 13u);
    EXPECT_EQ(g.front(), 0.08);
    EXPECT_EQ(g.back(), 0.2);
    auto kv = parse_key_value_file("# comment\nsizes = 4,6\n\n seed=3 # trailing\n");
    EXPECT_EQ(kv.at("sizes"), "4,6");
    EXPECT_EQ(kv.at("seed"), "3");
    EXPECT_THROW(parse_key_value_file("novalue\n"), std::invalid_argument);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"--version"}).code, kExitOk);
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run({"sample", "--no-such-flag"}).code, kExitUsage);
    EXPECT_EQ(run({"sample", "--a", "3", "--out", scratch("a").string()}).code, kExitUsage);
    EXPECT_EQ(run({"percolate", "--sizes", "", "--out", scratch("b").string()}).code, kExitUsage);
    EXPECT_EQ(run({"percolate", "--p-step", "0", "--out", scratch("b").string()}).code, kExitUsage);
    EXPECT_EQ(run({"weight", "--input", "/nonexistent/file"}).code, kExitUsage);
    EXPECT_EQ(run({"oracle-check", "--lattice", "3x3"}).code, kExitUsage);
    EXPECT_EQ(run({"sample", "--config", "/nonexistent/cfg"}).code, kExitUsage);
    EXPECT_EQ(run({"sample", "--size", "4", "--samples", "1", "--out", "/proc/aklt_cannot_write"}).code,
              kExitRuntime);
}

TEST(Cli, OracleCheck) {
    CliRun r = run({"oracle-check"});
    EXPECT_EQ(r.code, kExitOk) << r.out;
    EXPECT_NE(r.out.find("PASS completeness 2x2 torus"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, SampleWeightThin) {
    fs::path d = scratch("swt");
    CliRun s = run({"sample", "--size", "6", "--samples", "3", "--burn-in", "5", "--seed", "4", "--out", d.string()});
    ASSERT_EQ(s.code, kExitOk) << s.err;
    std::string csv = slurp(d / "samples.csv");
    EXPECT_EQ(csv.rfind("# aklt ", 0), 0u);
    EXPECT_NE(csv.find("seed=4 command=sample\nsample,log2_weight,"), std::string::npos);

    CliRun w = run({"weight", "--input", (d / "samples.txt").string(), "--out", d.string(), "--edges", "edges.txt"});
    ASSERT_EQ(w.code, kExitOk) << w.err;
    std::string weights = slurp(d / "weight.csv");
    EXPECT_NE(weights.find("config,compatible,log2_weight,deformation_log2,total_log2"), std::string::npos);
    EXPECT_NE(weights.find("\n2,1,"), std::string::npos);
    EXPECT_NE(slurp(d / "edges.txt").find("# vertices"), std::string::npos);

    CliRun t = run({"thin", "--input", (d / "samples.txt").string(), "--out", d.string()});
    ASSERT_EQ(t.code, kExitOk) << t.err;
    EXPECT_NE(slurp(d / "thin_stats.csv").find(",planar,spans\n"), std::string::npos);
    EXPECT_TRUE(fs::exists(d / "thin_edges.csv"));
    EXPECT_TRUE(fs::exists(d / "thin_vertices.csv"));
}

TEST(Cli, WeightOfKnownConfig) {
    fs::path d = scratch("known");
    fs::create_directories(d);
    std::ofstream(d / "pair.txt") << "Fz Fz\n\nKz Kz\n";
    CliRun w = run({"weight", "--input", (d / "pair.txt").string(), "--out", d.string()});
    ASSERT_EQ(w.code, kExitOk) << w.err;
    std::string csv = slurp(d / "weight.csv");
    EXPECT_NE(csv.find("\n0,1,1,0,1,6,7,0,0,2\n"), std::string::npos) << csv;
    EXPECT_NE(csv.find("\n1,1,-3,0,-3,6,7,2,0,0\n"), std::string::npos) << csv;
}

TEST(Cli, PercolateIsReproducible) {
    fs::path a = scratch("perc_a"), b = scratch("perc_b"), c = scratch("perc_c");
    auto args = kSmallPercolate;
    args.insert(args.end(), {"--seed", "7", "--out", a.string()});
    ASSERT_EQ(run(args).code, kExitOk);
    args.back() = b.string();
    ASSERT_EQ(run(args).code, kExitOk);
    expect_same_tree(a, b);
    // The thread count caps parallelism only.
    args.back() = c.string();
    args.insert(args.end(), {"--threads", "3"});
    ASSERT_EQ(run(args).code, kExitOk);
    expect_same_tree(a, c);
    for (const char* f : {"percolation.csv", "span_vs_L.csv", "thinning.csv", "crossing.csv", "intersections.csv",
                          "domains.csv", "domain_fit.csv", "plot.gp"}) {
        EXPECT_TRUE(fs::exists(a / f)) << f;
    }
    EXPECT_NE(slurp(a / "percolation.csv").find("L,p_delete,trials,spans,p_span,stderr\n6,0,30,"),
              std::string::npos);
    EXPECT_NE(slurp(a / "plot.gp").find("set datafile separator ','"), std::string::npos);
}

TEST(Cli, ConfigFileAndOverride) {
    fs::path d = scratch("cfg");
    fs::create_directories(d);
    std::ofstream(d / "run.cfg") << "# small run\nsizes = 6,8\ntrials = 20\ntrials-per-sample = 10\n"
                                    "p-min = 0\np-max = 0.2\np-step = 0.1\nburn-in = 5\nseed = 3\n";
    CliRun r = run({"percolate", "--config", (d / "run.cfg").string(), "--trials", "40", "--out", (d / "o").string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::string csv = slurp(d / "o" / "percolation.csv");
    EXPECT_NE(csv.find("seed=3 command=percolate"), std::string::npos);
    // Command line trials = 40 wins over the file.
    EXPECT_NE(csv.find("\n6,0,40,"), std::string::npos) << csv;
    EXPECT_EQ(csv.find("\n10,"), std::string::npos);
}

TEST(Cli, CollapseFromPercolateOutput) {
    fs::path d = scratch("coll");
    fs::create_directories(d);
    std::ofstream(d / "percolation.csv") << "# synthetic\nL,p_delete,trials,spans,p_span,stderr\n"
                                            "10,0.1,1,0,0.8,0\n10,0.2,1,0,0.5,0\n10,0.3,1,0,0.2,0\n"
                                            "20,0.1,1,0,0.9,0\n20,0.2,1,0,0.5,0\n20,0.3,1,0,0.1,0\n";
    CliRun r = run({"collapse", "--out", d.string(), "--p-star", "0.2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::string summary = slurp(d / "collapse_summary.csv");
    EXPECT_NE(summary.find("p_star,nu,residual,unscaled_residual,ratio\n0.2,"), std::string::npos) << summary;
    // Without a crossing file or --p-star there is nothing to collapse around.
    EXPECT_EQ(run({"collapse", "--out", d.string()}).code, kExitUsage);
}

TEST(Cli, DeformSweep) {
    fs::path d = scratch("deform");
    CliRun r = run({"deform-sweep", "--a", "0.9,1.0,1.1", "--sizes", "6,8", "--trials", "20", "--p-step", "0.1",
                 "--burn-in", "5", "--out", d.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::string sweep = slurp(d / "deform_sweep.csv");
    EXPECT_NE(sweep.find("\n0.9,"), std::string::npos);
    EXPECT_NE(sweep.find("\n1.1,"), std::string::npos);
    EXPECT_NE(slurp(d / "deform_trend.csv").find("quantity,trend,kendall_tau\np_star,"), std::string::npos);
    EXPECT_EQ(run({"deform-sweep", "--a", "0.9,2.5", "--out", d.string()}).code, kExitUsage);
}

}  // namespace aklt
