// Copyright 2026 The entcap Authors
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

#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "entcap/cli_io/commands.hpp"
#include "entcap/cli_io/csv.hpp"
#include "entcap/cli_io/descriptors.hpp"
#include "entcap/cli_io/matrix_file.hpp"
#include "entcap/cli_io/run_config.hpp"
#include "entcap/errors.hpp"

using namespace entcap;
using namespace entcap::cli;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    CliRun r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

// Scratch directory removed at scope exit.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("entcap-" + tag + "-" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    const fs::path& path() const { return path_; }
    std::string write(const std::string& name, const std::string& text) const {
        const fs::path p = path_ / name;
        std::ofstream(p, std::ios::binary) << text;
        return p.string();
    }

  private:
    fs::path path_;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        out.push_back(line);
    }
    return out;
}

std::string field(const std::string& csv_line, std::size_t column) {
    std::size_t start = 0;
    for (std::size_t c = 0; c < column; ++c) {
        start = csv_line.find(',', start) + 1;
    }
    return csv_line.substr(start, csv_line.find(',', start) - start);
}

SweepRow sample_row(const std::string& id, int k) {
    SweepRow row;
    row.experiment_id = id;
    row.criterion = "fisher;pairs=10;schedule=per_state";
    row.dim_a = 2;
    row.dim_b = 3;
    row.k = k;
    row.n_samples = 100000;
    row.master_seed = 18446744073709551615ull;
    CapabilityEstimate est;
    est.n_samples = row.n_samples;
    est.n_detected = 31;
    est.p_hat = 0.00031;
    est.ci_low = 0.1 + 0.2;
    est.ci_high = 4.9406564584124654e-324;
    est.seed = row.master_seed;
    est.bound_value = 2.0;
    est.wall_time_s = 1.0 / 3.0;
    row.estimate = est;
    return row;
}

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

const char* const kOnePointConfig = R"(# one point
[single]
criterion = ppt
d_a = 2
d_b = 2
k = 1
n_samples = 1000
master_seed = 7
output = one.csv
)";

}  // namespace

TEST_CASE("csv header") {
    std::string expected;
    for (std::string_view c : kCsvColumns) {
        expected += expected.empty() ? "" : ",";
        expected += c;
    }
    CHECK(csv_header() == expected + "\n");
    CHECK(expected ==
          "experiment_id,criterion,d_a,d_b,k,n_samples,n_detected,p_hat,ci_low,ci_high,master_seed,"
          "bound_value,wall_time_s,error");
}

TEST_CASE("csv quoting") {
    CHECK(quote_field("plain") == "plain");
    CHECK(quote_field("a,b") == "\"a,b\"");
    CHECK(quote_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(quote_field("two\nlines") == "\"two\nlines\"");
    CHECK(quote_field("") == "");
}

TEST_CASE("doubles survive formatting bit for bit") {
    std::mt19937_64 gen(99);
    int tested = 0;
    while (tested < 10000) {
        const double v = std::bit_cast<double>(gen());
        if (!std::isfinite(v)) {
            continue;
        }
        ++tested;
        CHECK(same_bits(std::strtod(format_double(v).c_str(), nullptr), v));
    }
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("csv round trip is byte-identical") {
    std::vector<SweepRow> rows = {sample_row("plain", 1), sample_row("needs,quoting", 2), sample_row("q\"uote", 3)};
    rows[1].estimate->bound_value.reset();
    SweepRow failed = sample_row("failed", 4);
    failed.estimate.reset();
    failed.error = "estimate: criterion bipartition does not match d_a x d_b, see \"docs\"\nsecond line";
    rows.push_back(failed);

    const std::string text = format_csv(rows);
    const std::vector<SweepRow> parsed = parse_csv(text);
    REQUIRE(parsed.size() == rows.size());
    CHECK(format_csv(parsed) == text);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(parsed[i].experiment_id == rows[i].experiment_id);
        CHECK(parsed[i].criterion == rows[i].criterion);
        CHECK(parsed[i].master_seed == rows[i].master_seed);
        CHECK(parsed[i].error == rows[i].error);
        CHECK(parsed[i].ok() == rows[i].ok());
        if (rows[i].ok()) {
            CHECK(parsed[i].estimate->n_detected == rows[i].estimate->n_detected);
            CHECK(same_bits(parsed[i].estimate->p_hat, rows[i].estimate->p_hat));
            CHECK(same_bits(parsed[i].estimate->ci_low, rows[i].estimate->ci_low));
            CHECK(same_bits(parsed[i].estimate->ci_high, rows[i].estimate->ci_high));
            CHECK(same_bits(parsed[i].estimate->wall_time_s, rows[i].estimate->wall_time_s));
            CHECK(parsed[i].estimate->bound_value.has_value() == rows[i].estimate->bound_value.has_value());
        }
    }
    CHECK(field(lines_of(format_csv_row(rows[0]))[0], 11) == "2");
    SweepRow unbounded = rows[0];
    unbounded.estimate->bound_value.reset();
    CHECK(field(lines_of(format_csv_row(unbounded))[0], 11) == "");
    // Empty numeric fields for a failed point.
    CHECK(format_csv_row(failed).rfind(
              "failed,fisher;pairs=10;schedule=per_state,2,3,4,100000,,,,,18446744073709551615,,,\"", 0) == 0);
}

TEST_CASE("csv parse errors") {
    CHECK_THROWS_AS(parse_csv("experiment_id,criterion\n"), InvalidInput);
    CHECK_THROWS_AS(parse_csv(""), InvalidInput);
    const std::string good = format_csv(std::vector<SweepRow>{sample_row("x", 1)});
    std::string short_row = csv_header() + "x,ppt,2,2\n";
    CHECK_THROWS_AS(parse_csv(short_row), InvalidInput);
    std::string bad_number = good;
    bad_number.replace(bad_number.find(",100000,"), 8, ",1e5x,");
    CHECK_THROWS_AS(parse_csv(bad_number), InvalidInput);
    CHECK_THROWS_AS(parse_csv(csv_header() + "\"unterminated,ppt\n"), InvalidInput);
}

TEST_CASE("matrix file format") {
    const ComplexMatrix m = parse_matrix("# a comment\n1+0i 0-2.5i\n\n0+2.5i -1\n");
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 2);
    CHECK(m(0, 1) == Complex(0.0, -2.5));
    CHECK(m(1, 0) == Complex(0.0, 2.5));
    CHECK(m(1, 1) == Complex(-1.0, 0.0));
    CHECK(parse_complex_entry("1e-3+2E2i") == Complex(1e-3, 200.0));
    CHECK(parse_complex_entry("-0.5-0.25i") == Complex(-0.5, -0.25));
    CHECK_THROWS_AS(parse_complex_entry("1+2j"), InvalidInput);
    CHECK_THROWS_AS(parse_complex_entry("i"), InvalidInput);
    CHECK_THROWS_AS(parse_complex_entry("1+2i3"), InvalidInput);
    CHECK_THROWS_AS(parse_matrix("1 2\n3\n"), InvalidInput);
    CHECK_THROWS_AS(parse_matrix("# nothing\n\n"), InvalidInput);
    try {
        parse_matrix("1 2\n3 x\n");
        FAIL("expected a parse error");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    GaussianSource src(SeedSpec{5, 5});
    const ComplexMatrix g = ginibre(3, 4, src);
    const ComplexMatrix back = parse_matrix(format_matrix(g));
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        CHECK(same_bits(back.data()[i].real(), g.data()[i].real()));
        CHECK(same_bits(back.data()[i].imag(), g.data()[i].imag()));
    }
    CHECK_THROWS_AS(read_matrix_file("/nonexistent/matrix.txt"), InvalidInput);
}

TEST_CASE("k lists") {
    CHECK(parse_k_list("1:5") == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(parse_k_list(" 3 : 3 ") == std::vector<int>{3});
    CHECK(parse_k_list("1, 3,9") == std::vector<int>{1, 3, 9});
    CHECK(parse_k_list("6") == std::vector<int>{6});
    for (const char* bad : {"", "3,2", "2,2", "0:4", "5:3", "a", "1,,2", "-1", "1:"}) {
        INFO("k list: ", bad);
        CHECK_THROWS_AS(parse_k_list(bad), InvalidInput);
    }
}

TEST_CASE("criterion descriptors") {
    const Bipartition k22{2, 2};
    for (const char* d : {"ppt", "purity", "d3opt", "ew_ppt", "ew_faithful", "ew_fixed;witness=bell",
                          "ew_fixed;witness=identity", "fisher;pairs=3;schedule=per_experiment",
                          "fisher;pairs=10;schedule=per_state", "m4;moments=raw", "m4;moments=centered"}) {
        INFO("descriptor: ", d);
        CHECK(describe(parse_criterion(d, k22)) == d);
    }
    CHECK(describe(parse_criterion("fisher", k22)) == "fisher;pairs=10;schedule=per_state");
    CHECK(describe(parse_criterion("ew_fixed", k22)) == "ew_fixed;witness=bell");
    CHECK(parse_criterion("ew_fixed;witness=bell", k22).witness->alpha() == doctest::Approx(1.0));
    CHECK(parse_criterion("ew_fixed;witness=identity", k22).witness->alpha() == doctest::Approx(2.0));
    CHECK_THROWS_AS(parse_criterion("realign", k22), InvalidInput);
    CHECK_THROWS_AS(parse_criterion("ppt;pairs=3", k22), InvalidInput);
    CHECK_THROWS_AS(parse_criterion("fisher;pairs=0", k22), InvalidInput);
    CHECK_THROWS_AS(parse_criterion("fisher;schedule=sometimes", k22), InvalidInput);
    CHECK_THROWS_AS(parse_criterion("ew_faithful", Bipartition{2, 3}), InvalidInput);
    CHECK_THROWS_AS(parse_criterion("ew_fixed;witness=file:/nonexistent", k22), InvalidInput);

    TempDir dir("witness");
    dir.write("w.txt", "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 -1\n");
    const CriterionSpec spec = parse_criterion("ew_fixed;witness=file:w.txt", k22, dir.path().string());
    CHECK(spec.witness->alpha() == doctest::Approx(1.0));
    CHECK(describe(spec) == "ew_fixed;witness=file:w.txt");
    dir.write("small.txt", "1 0\n0 1\n");
    CHECK_THROWS_AS(parse_criterion("ew_fixed;witness=file:small.txt", k22, dir.path().string()), InvalidInput);
}

TEST_CASE("bound selectors") {
    CHECK(parse_bound_selector("none").type == BoundSelector::Type::none);
    CHECK(parse_bound_selector("auto").type == BoundSelector::Type::automatic);
    const BoundSelector ew = parse_bound_selector("ew:1.5");
    CHECK(ew.type == BoundSelector::Type::ew);
    CHECK(ew.alpha == 1.5);
    const BoundSelector param = parse_bound_selector("param:4:1.5:1.2:0.3");
    CHECK(param.count == 4);
    CHECK(param.lipschitz == 1.5);
    CHECK(param.alpha == 1.2);
    CHECK(param.eps == 0.3);
    CHECK(parse_bound_selector("singlecopy:2").eps == kDefaultEps);
    CHECK(parse_bound_selector("adaptive:10").count == 10);
    for (const char* bad : {"", "ew", "ew:0.5", "ewset:0:1", "param:2:1", "singlecopy:2:1.5", "posmap:1",
                            "spectrum:3", "magic"}) {
        INFO("selector: ", bad);
        CHECK_THROWS_AS(parse_bound_selector(bad), InvalidInput);
    }
    CHECK(parse_ci_method("wilson") == CiMethod::wilson);
    CHECK(parse_ci_method("exact_small") == CiMethod::exact_small);
    CHECK_THROWS_AS(parse_ci_method("wald"), InvalidInput);
}

TEST_CASE("config grammar") {
    const RunConfig cfg = parse_run_config(R"(
# two sections
[a]
criterion = fisher   # trailing comment
fisher_pairs = 4
fisher_schedule = per_experiment
d_a = 2
d_b = 2
k = 1:3
output = a.csv

[b]
criterion = m4
m4_moments_on = raw
d_a = 3
d_b = 2
k = 2, 5
n_samples = 500
master_seed = 12
ci_level = 0.99
ci_method = exact_small
bound = ew:1
output = b.csv
)",
                                           "mem");
    REQUIRE(cfg.sections.size() == 2);
    const SweepSection& a = cfg.sections[0];
    CHECK(a.name == "a");
    CHECK(a.line == 3);
    CHECK(a.criterion.fisher_pairs == 4);
    CHECK(a.criterion.fisher_schedule == FisherSchedule::per_experiment);
    CHECK(a.ks == std::vector<int>{1, 2, 3});
    CHECK(a.n_samples == 100000);
    const SweepSection& b = cfg.sections[1];
    CHECK(b.criterion.m4_moments == MomentOperand::raw);
    CHECK(b.dim_a == 3);
    CHECK(b.master_seed == 12);
    CHECK(b.ci_level == 0.99);
    CHECK(b.ci_method == CiMethod::exact_small);
    CHECK(b.bound.type == BoundSelector::Type::ew);
    const std::vector<EstimateConfig> grid = b.grid();
    REQUIRE(grid.size() == 2);
    CHECK(grid[1].k == 5);
    CHECK(grid[1].n_samples == 500);
    CHECK_NOTHROW(grid[1].validate());
}

TEST_CASE("bundled configs parse") {
    const std::filesystem::path dir = ENTCAP_CONFIG_DIR;
    for (const char* name : {"fig2a.cfg", "fig2b.cfg", "fig3.cfg", "thresholds.cfg"}) {
        INFO(name);
        RunConfig cfg;
        REQUIRE_NOTHROW(cfg = load_run_config((dir / name).string()));
        REQUIRE_FALSE(cfg.sections.empty());
        for (const SweepSection& s : cfg.sections) {
            CHECK(s.n_samples == 100000);
            for (const EstimateConfig& e : s.grid()) {
                CHECK_NOTHROW(e.validate());
            }
        }
    }
}

TEST_CASE("config diagnostics name the line and section") {
    const auto diagnostic = [](const std::string& text) {
        try {
            parse_run_config(text, "cfg");
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    const std::string base = "[s]\ncriterion = ppt\nd_a = 2\nd_b = 2\nk = 1\noutput = o.csv\n";
    CHECK(diagnostic(base + "colour = red\n").rfind("cfg:7: [s] unknown key 'colour'", 0) == 0);
    CHECK(diagnostic("[s]\ncriterion = realign\nd_a = 2\nd_b = 2\nk = 1\noutput = o.csv\n").rfind("cfg:2: [s]", 0) == 0);
    CHECK(diagnostic(base + "k = 2\n").find("cfg:7: [s] duplicate key 'k'") == 0);
    CHECK(diagnostic(base + base).find("cfg:7: [s] duplicate section") == 0);
    CHECK(diagnostic("criterion = ppt\n").find("cfg:1: key outside of any section") == 0);
    CHECK(diagnostic("[s]\ncriterion = ppt\nd_a = 2\nk = 1\noutput = o\n").find("cfg:1: [s] missing required key 'd_b'") == 0);
    CHECK(diagnostic("[s]\ncriterion = ppt\nd_a = 65\nd_b = 2\nk = 1\noutput = o\n").find("cfg:3: [s]") == 0);
    CHECK(diagnostic("[s]\ncriterion = ppt\nd_a = 2\nd_b = 2\nk = 3,1\noutput = o\n").find("cfg:5: [s]") == 0);
    CHECK(diagnostic("[s]\ncriterion = ppt\nd_a = 2\nd_b = 2\nk = 1\nn_samples = 10\noutput = o\n").find("cfg:6: [s]") == 0);
    CHECK(diagnostic(base + "fisher_pairs = 3\n").find("cfg:7: [s]") == 0);
    CHECK(diagnostic("[s\n").find("cfg:1: malformed section header") == 0);
    CHECK(diagnostic("just text\n").find("cfg:1:") == 0);
    CHECK(diagnostic("# empty\n").find("no sections") != std::string::npos);
    CHECK_THROWS_AS(load_run_config("/nonexistent/x.cfg"), ConfigError);
}

TEST_CASE("estimate command") {
    const CliRun ok = run({"estimate", "--criterion", "ppt", "--da", "2", "--db", "2", "--k", "1", "--samples",
                           "1000", "--seed", "7"});
    CHECK(ok.code == kExitOk);
    const std::vector<std::string> ls = lines_of(ok.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] + "\n" == csv_header());
    const std::vector<SweepRow> rows = parse_csv(ok.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].estimate->p_hat >= 0.99);
    CHECK(rows[0].master_seed == 7);

    const CliRun missing = run({"estimate", "--da", "2", "--db", "2", "--k", "1", "--samples", "1000", "--seed", "7"});
    CHECK(missing.code == kExitUsage);
    CHECK((missing.out + missing.err).find("Usage") != std::string::npos);
    CHECK(missing.err.find("--criterion") != std::string::npos);

    CHECK(run({"estimate", "--criterion", "nope", "--da", "2", "--db", "2", "--k", "1", "--samples", "1000", "--seed",
               "7"})
              .code == kExitUsage);
    CHECK(run({"estimate", "--criterion", "ew_faithful", "--da", "2", "--db", "3", "--k", "1", "--samples", "1000",
               "--seed", "7"})
              .code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("purity example through the command line") {
    const CliRun r = run({"estimate", "--criterion", "purity", "--da", "2", "--db", "2", "--k", "2", "--samples",
                          "100000", "--seed", "1"});
    REQUIRE(r.code == kExitOk);
    CHECK(std::abs(parse_csv(r.out)[0].estimate->p_hat - 0.5) <= 0.0047);
}

TEST_CASE("sweep command") {
    TempDir dir("sweep");
    const std::string cfg = dir.write("one.cfg", kOnePointConfig);
    const CliRun r = run({"sweep", cfg, "--out-dir", dir.path().string()});
    CHECK(r.code == kExitOk);
    const std::string csv = slurp(dir.path() / "one.csv");
    const std::vector<std::string> ls = lines_of(csv);
    REQUIRE(ls.size() == 2);
    CHECK(field(ls[1], 0) == "single");
    CHECK(r.out.find("single: 1/1 points") != std::string::npos);

    // Every row reproduces through the estimate command from its own fields.
    const SweepRow row = parse_csv(csv)[0];
    const CliRun again = run({"estimate", "--criterion", row.criterion, "--da", std::to_string(row.dim_a), "--db",
                              std::to_string(row.dim_b), "--k", std::to_string(row.k), "--samples",
                              std::to_string(row.n_samples), "--seed", std::to_string(row.master_seed)});
    REQUIRE(again.code == kExitOk);
    CHECK(parse_csv(again.out)[0].estimate->n_detected == row.estimate->n_detected);

    const std::string bad = dir.write("bad.cfg", "[oops]\ncriterion = realign\nd_a = 2\nd_b = 2\nk = 1\noutput = x.csv\n");
    const CliRun e = run({"sweep", bad});
    CHECK(e.code == kExitUsage);
    CHECK(e.err.find("bad.cfg:2: [oops]") != std::string::npos);
    CHECK(run({"sweep", (dir.path() / "missing.cfg").string()}).code == kExitUsage);

    // Sections sharing an output file land in one CSV in order; failing
    // points fill the error column.
    const std::string shared = dir.write("shared.cfg", R"(
[first]
criterion = ppt
d_a = 2
d_b = 2
k = 1,2
n_samples = 200
output = shared.csv
[second]
criterion = ew_fixed
witness = file:w.txt
d_a = 2
d_b = 2
k = 3
n_samples = 200
output = shared.csv
)");
    dir.write("w.txt", "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 -1\n");
    const CliRun s = run({"sweep", shared, "--out-dir", dir.path().string()});
    CHECK(s.code == kExitOk);
    const std::vector<SweepRow> rows = parse_csv(slurp(dir.path() / "shared.csv"));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].experiment_id == "first");
    CHECK(rows[2].experiment_id == "second");
    CHECK(rows[2].criterion == "ew_fixed;witness=file:w.txt");
}

TEST_CASE("bound command") {
    const CliRun ew = run({"bound", "--type", "ew", "--alpha", "1", "--k-range", "10:10"});
    REQUIRE(ew.code == kExitOk);
    const std::vector<std::string> ls = lines_of(ew.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "k,bound_value");
    CHECK(std::stod(field(ls[1], 1)) == doctest::Approx(0.35965).epsilon(1e-4));

    const CliRun ad = run({"bound", "--type", "adaptive", "--m", "0", "--k-range", "0:0"});
    CHECK(ad.code == kExitOk);
    CHECK(lines_of(ad.out).at(1) == "0,2");

    CHECK(run({"bound", "--type", "ew", "--alpha", "0.5", "--k-range", "1:3"}).code == kExitUsage);
    CHECK(run({"bound", "--type", "spectrum", "--k-range", "1:3"}).code == kExitUsage);
    CHECK(run({"bound", "--type", "ew", "--alpha", "1", "--k-range", "3"}).code == kExitUsage);
    CHECK(run({"bound", "--type", "faithful", "--d", "8", "--k-range", "1:2"}).code == kExitUsage);
    CHECK(lines_of(run({"bound", "--type", "spectrum", "--spectrum", "0.5,0.5,0.5,-0.5", "--k-range", "1:5"}).out)
              .size() == 6);
}

TEST_CASE("check-witness command") {
    const CliRun ppt = run({"check-witness", "--kind", "ppt", "--da", "2", "--db", "2", "--seed", "3"});
    CHECK(ppt.code == kExitOk);
    CHECK(ppt.out.rfind("alpha = 1", 0) == 0);
    CHECK(ppt.out.find("inner_ball = pass") != std::string::npos);

    const CliRun faithful = run({"check-witness", "--kind", "faithful", "--da", "3", "--db", "3", "--seed", "1"});
    CHECK(faithful.code == kExitOk);
    CHECK(std::stod(lines_of(faithful.out).at(0).substr(8)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

    TempDir dir("check");
    const std::string neg = dir.write("neg.txt", "-1 0\n0 -1\n");
    const CliRun bad = run({"check-witness", "--file", neg});
    CHECK(bad.code == kExitRuntime);
    CHECK(bad.out.find("inner_ball = fail") != std::string::npos);
    CHECK(run({"check-witness", "--file", dir.write("nh.txt", "0 1\n0 0\n")}).code == kExitUsage);
    CHECK(run({"check-witness", "--kind", "ppt"}).code == kExitUsage);
}

TEST_CASE("selftest command") {
    const CliRun ok = run({"selftest"});
    CHECK(ok.code == kExitOk);
    for (const char* name : {"multicopy_m4_vs_realignment", "index_oracles", "qfi_vs_double_loop",
                             "e4_below_trace_norm", "witness_validity", "bound_arithmetic", "worker_determinism"}) {
        CHECK(ok.out.find(std::string("PASS ") + name) != std::string::npos);
    }
    const CliRun corrupt = run({"selftest", "--corrupt-tolerance", "qfi_oracle"});
    CHECK(corrupt.code != kExitOk);
    CHECK(corrupt.out.find("FAIL qfi_vs_double_loop") != std::string::npos);
    CHECK(run({"selftest", "--corrupt-tolerance", "nonsense"}).code == kExitUsage);
}
