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

#include "entcap/cli_io/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>

#include <CLI11.hpp>

#include "entcap/capability.hpp"
#include "entcap/cli_io/csv.hpp"
#include "entcap/cli_io/descriptors.hpp"
#include "entcap/cli_io/matrix_file.hpp"
#include "entcap/cli_io/run_config.hpp"
#include "entcap/errors.hpp"
#include "entcap/verify/checks.hpp"

namespace entcap::cli {

namespace {

struct EstimateArgs {
    std::string criterion;
    int da = 0;
    int db = 0;
    int k = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double ci = 0.95;
    std::string bound = "none";
    std::string ci_method = "wilson";
};

struct SweepArgs {
    std::string config;
    std::string out_dir;
};

struct BoundArgs {
    std::string type;
    double alpha = 1.0;
    double n = 1.0;
    int m = 0;
    double l = 1.0;
    int d = 0;
    double eps = kDefaultEps;
    std::string spectrum;
    std::string file;
    std::string k_range;
};

struct WitnessArgs {
    std::string kind;
    int da = 0;
    int db = 0;
    std::uint64_t seed = 0;
    std::string file;
};

struct SelftestArgs {
    std::string corrupt;
};

int cmd_estimate(const EstimateArgs& a, std::ostream& out) {
    EstimateConfig cfg;
    cfg.dim_a = a.da;
    cfg.dim_b = a.db;
    cfg.criterion = parse_criterion(a.criterion, Bipartition{a.da, a.db});
    cfg.k = a.k;
    cfg.n_samples = a.samples;
    cfg.master_seed = a.seed;
    cfg.ci_level = a.ci;
    cfg.ci_method = parse_ci_method(a.ci_method);
    const BoundSelector bound = parse_bound_selector(a.bound);
    cfg.validate();
    // Evaluate the bound first so a bad selector fails before the Monte Carlo run.
    const std::optional<BoundResult> b = bound.evaluate(cfg);

    SweepRow row;
    row.experiment_id = "estimate";
    row.criterion = describe(cfg.criterion);
    row.dim_a = cfg.dim_a;
    row.dim_b = cfg.dim_b;
    row.k = cfg.k;
    row.n_samples = cfg.n_samples;
    row.master_seed = cfg.master_seed;
    CapabilityEstimate est = estimate(cfg);
    if (b) {
        est.bound_value = b->value;
    }
    row.estimate = est;
    out << csv_header() << format_csv_row(row);
    return kExitOk;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
    const RunConfig config = load_run_config(a.config);
    const unsigned workers = default_worker_count();
    std::map<std::string, std::unique_ptr<std::ofstream>> files;
    std::size_t ok_points = 0;
    for (const SweepSection& section : config.sections) {
        std::filesystem::path path(section.output);
        if (path.is_relative() && !a.out_dir.empty()) {
            path = std::filesystem::path(a.out_dir) / path;
        }
        const std::string key = path.lexically_normal().string();
        auto it = files.find(key);
        if (it == files.end()) {
            if (path.has_parent_path()) {
                std::filesystem::create_directories(path.parent_path());
            }
            auto f = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
            if (!*f) {
                throw std::runtime_error("cannot write " + key);
            }
            *f << csv_header();
            it = files.emplace(key, std::move(f)).first;
        }
        const std::vector<EstimateConfig> grid = section.grid();
        const std::vector<SweepRow> rows = sweep(grid, section.name, section.bound, workers);
        std::size_t ok = 0;
        for (const SweepRow& r : rows) {
            *it->second << format_csv_row(r);
            if (r.ok()) {
                ++ok;
            } else {
                err << section.name << " k=" << r.k << ": " << r.error << '\n';
            }
        }
        it->second->flush();
        ok_points += ok;
        out << section.name << ": " << ok << "/" << rows.size() << " points -> " << key << '\n';
    }
    if (ok_points == 0) {
        err << "sweep: no point succeeded\n";
        return kExitRuntime;
    }
    return kExitOk;
}

std::pair<int, int> parse_k_range(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) {
        throw InvalidInput("--k-range must be a:b");
    }
    std::size_t used = 0;
    const int a = std::stoi(text.substr(0, colon), &used);
    if (used != colon) {
        throw InvalidInput("--k-range must be a:b");
    }
    const std::string rest = text.substr(colon + 1);
    const int b = std::stoi(rest, &used);
    if (used != rest.size() || a < 0 || b < a) {
        throw InvalidInput("--k-range must satisfy 0 <= a <= b");
    }
    return {a, b};
}

Spectrum spectrum_from(const BoundArgs& a) {
    Spectrum s;
    if (!a.file.empty()) {
        return hermitian_eigs(HermitianObservable(read_matrix_file(a.file)));
    }
    std::size_t start = 0;
    while (start <= a.spectrum.size()) {
        const std::size_t comma = a.spectrum.find(',', start);
        const std::string item = a.spectrum.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::size_t used = 0;
        s.eigenvalues.push_back(std::stod(item, &used));
        if (used != item.size()) {
            throw InvalidInput("--spectrum: bad value '" + item + "'");
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());
    return s;
}

int cmd_bound(const BoundArgs& a, const CLI::App& sub, std::ostream& out) {
    const auto need = [&](const char* flag) {
        if (sub.count(flag) == 0) {
            throw InvalidInput("bound --type " + a.type + " requires " + flag);
        }
    };
    const auto [k0, k1] = parse_k_range(a.k_range);
    std::function<BoundResult(double)> eval;
    if (a.type == "ew") {
        eval = [&](double k) { return ew_bound(a.alpha, k); };
    } else if (a.type == "ewset") {
        need("--n");
        eval = [&](double k) { return ew_set_bound(a.n, a.alpha, k); };
    } else if (a.type == "spectrum") {
        if (a.spectrum.empty() == a.file.empty()) {
            throw InvalidInput("bound --type spectrum requires exactly one of --spectrum, --file");
        }
        const Spectrum s = spectrum_from(a);
        eval = [s](double k) { return spectrum_bound(s, k); };
    } else if (a.type == "param") {
        need("--m");
        need("--d");
        eval = [&](double k) { return param_ew_bound(a.m, a.l, a.d, a.alpha, k, a.eps); };
    } else if (a.type == "posmap") {
        need("--d");
        eval = [&](double k) { return positive_map_bound(a.d, a.l, a.alpha, k); };
    } else if (a.type == "faithful") {
        need("--d");
        eval = [&](double k) { return faithful_ratio_bound(a.d, k); };
    } else if (a.type == "singlecopy") {
        need("--m");
        need("--d");
        eval = [&](double k) { return single_copy_bound(a.m, a.d, k, a.eps); };
    } else if (a.type == "adaptive") {
        need("--m");
        eval = [&](double k) { return adaptive_bound(a.m, k); };
    } else {
        throw InvalidInput("unknown bound type '" + a.type + "'");
    }
    // Evaluate everything before printing so a failure leaves no partial table.
    std::string table = "k,bound_value\n";
    for (int k = k0; k <= k1; ++k) {
        table += std::to_string(k) + "," + format_double(eval(k).value) + "\n";
    }
    out << table;
    return kExitOk;
}

int cmd_check_witness(const WitnessArgs& a, std::ostream& out) {
    WitnessValidity v;
    ComplexMatrix w;
    if (!a.file.empty()) {
        if (!a.kind.empty()) {
            throw InvalidInput("check-witness: give either --kind or --file");
        }
        const HermitianObservable obs(read_matrix_file(a.file));
        v = validate_witness_alpha(obs);
        w = obs.matrix();
    } else {
        if (a.da < 1 || a.db < 1) {
            throw InvalidInput("check-witness: --da and --db must be >= 1");
        }
        const Bipartition split{a.da, a.db};
        const SeedSpec seed{a.seed, 0};
        if (a.kind == "ppt") {
            const Witness wit = ppt_witness(random_pure_state(split.dim(), seed), split);
            v = validate_witness_alpha(wit);
            w = wit.observable().matrix();
        } else if (a.kind == "faithful") {
            const Witness wit = faithful_witness(random_max_entangled(a.da, a.db, seed), split);
            v = validate_witness_alpha(wit);
            w = wit.observable().matrix();
        } else {
            throw InvalidInput("check-witness: --kind must be ppt or faithful (or use --file)");
        }
    }
    out << "alpha = " << format_double(v.alpha) << '\n';
    out << "inner_ball_value = " << format_double(v.inner_ball_value) << '\n';
    out << "inner_ball = " << (v.passes_inner_ball ? "pass" : "fail") << '\n';
    out << "spectrum =";
    for (double l : hermitian_eigs(HermitianObservable::trusted(w)).eigenvalues) {
        out << ' ' << format_double(l);
    }
    out << '\n';
    return v.passes_inner_ball ? kExitOk : kExitRuntime;
}

double Tolerances::*tolerance_member(const std::string& name) {
    static const std::map<std::string, double Tolerances::*> members = {
        {"alpha", &Tolerances::alpha},
        {"inner_ball", &Tolerances::inner_ball},
        {"index_oracle", &Tolerances::index_oracle},
        {"multicopy_oracle", &Tolerances::multicopy_oracle},
        {"qfi_oracle", &Tolerances::qfi_oracle},
        {"trace_norm_oracle", &Tolerances::trace_norm_oracle},
        {"bound_relative", &Tolerances::bound_relative},
    };
    const auto it = members.find(name);
    if (it == members.end()) {
        throw InvalidInput("selftest: no tolerance named '" + name + "'");
    }
    return it->second;
}

int cmd_selftest(const SelftestArgs& a, std::ostream& out, std::ostream& err) {
    Tolerances tol = kTolerances;
    if (!a.corrupt.empty()) {
        // A negative tolerance makes every comparison against it fail.
        tol.*tolerance_member(a.corrupt) = -1.0;
    }
    const std::vector<verify::CheckResult> results = verify::run_fast_checks(tol);
    std::size_t passed = 0;
    for (const verify::CheckResult& r : results) {
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
        out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << secs << " s): " << r.detail << '\n';
        if (r.passed) {
            ++passed;
        } else {
            err << "failed: " << r.name << '\n';
        }
    }
    out << "selftest: " << passed << "/" << results.size() << " passed\n";
    return passed == results.size() ? kExitOk : kExitRuntime;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Detection-capability engine for entanglement criteria", "entcap"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    EstimateArgs est;
    CLI::App* s_est = app.add_subcommand("estimate", "Monte Carlo capability of one criterion at one k");
    s_est->add_option("--criterion", est.criterion, "Criterion descriptor, e.g. ppt or fisher;pairs=10")->required();
    s_est->add_option("--da", est.da, "Dimension of A")->required();
    s_est->add_option("--db", est.db, "Dimension of B")->required();
    s_est->add_option("--k", est.k, "Environment dimension")->required();
    s_est->add_option("--samples", est.samples, "Number of sampled states")->required();
    s_est->add_option("--seed", est.seed, "Master seed")->required();
    s_est->add_option("--ci", est.ci, "Confidence level")->capture_default_str();
    s_est->add_option("--bound", est.bound, "Bound selector")->capture_default_str();
    s_est->add_option("--ci-method", est.ci_method, "wilson or exact_small")->capture_default_str();

    SweepArgs sw;
    CLI::App* s_sweep = app.add_subcommand("sweep", "Run every section of a config file");
    s_sweep->add_option("config", sw.config, "Config file")->required();
    s_sweep->add_option("--out-dir", sw.out_dir, "Directory for relative output paths");

    BoundArgs bd;
    CLI::App* s_bound = app.add_subcommand("bound", "Evaluate a capability bound over a k range");
    s_bound->add_option("--type", bd.type, "ew, ewset, spectrum, param, posmap, faithful, singlecopy, adaptive")
        ->required();
    s_bound->add_option("--alpha", bd.alpha, "alpha (minimum over the family)")->capture_default_str();
    s_bound->add_option("--n", bd.n, "Number of witnesses (ewset)");
    s_bound->add_option("--m", bd.m, "Parameter / observable / query count");
    s_bound->add_option("--l", bd.l, "Lipschitz constant")->capture_default_str();
    s_bound->add_option("--d", bd.d, "Total dimension");
    s_bound->add_option("--eps", bd.eps, "Net resolution")->capture_default_str();
    s_bound->add_option("--spectrum", bd.spectrum, "Comma-separated witness eigenvalues");
    s_bound->add_option("--file", bd.file, "Witness matrix file");
    s_bound->add_option("--k-range", bd.k_range, "a:b")->required();

    WitnessArgs wt;
    CLI::App* s_wit = app.add_subcommand("check-witness", "Report alpha and the inner-ball condition");
    s_wit->add_option("--kind", wt.kind, "ppt or faithful");
    s_wit->add_option("--da", wt.da, "Dimension of A");
    s_wit->add_option("--db", wt.db, "Dimension of B");
    s_wit->add_option("--seed", wt.seed, "Seed for the random state")->capture_default_str();
    s_wit->add_option("--file", wt.file, "Matrix file");

    SelftestArgs st;
    CLI::App* s_self = app.add_subcommand("selftest", "Run the fast invariant checks");
    s_self->add_option("--corrupt-tolerance", st.corrupt, "Test hook: make the named tolerance negative")
        ->group("");

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("entcap");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& s : argv_store) {
        argv.push_back(s.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*s_est) {
            return cmd_estimate(est, out);
        }
        if (*s_sweep) {
            return cmd_sweep(sw, out, err);
        }
        if (*s_bound) {
            return cmd_bound(bd, *s_bound, out);
        }
        if (*s_wit) {
            return cmd_check_witness(wt, out);
        }
        if (*s_self) {
            return cmd_selftest(st, out, err);
        }
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace entcap::cli
