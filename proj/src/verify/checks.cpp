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

#include "entcap/verify/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <sstream>

#include "entcap/bounds.hpp"
#include "entcap/capability.hpp"
#include "entcap/criteria.hpp"
#include "entcap/sampler.hpp"
#include "entcap/verify/oracles.hpp"

namespace entcap::verify {

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

CheckResult timed(const std::string& name, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    r.name = name;
    try {
        Outcome o = body();
        r.passed = o.passed;
        r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string worst(const char* label, double value, double limit) {
    std::ostringstream os;
    os.precision(3);
    os << label << " max deviation " << std::scientific << value << " (limit " << limit << ")";
    return os.str();
}

double max_abs(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return INFINITY;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// Seeds for the check inputs live in their own domain so they never alias a
// user run.
constexpr std::uint64_t kCheckMaster = 0x636865636b730000ull;

SeedSpec check_seed(std::uint64_t check, std::uint64_t index) {
    return SeedSpec{derive_master(kCheckMaster, check), index};
}

}  // namespace

CheckResult check_multicopy_m4(const Tolerances& tol) {
    return timed("multicopy_m4_vs_realignment", [&] {
        const Bipartition split{2, 2};
        double dev = 0.0;
        for (std::uint64_t i = 0; i < 100; ++i) {
            GaussianSource src(check_seed(1, i));
            const int k = 1 + static_cast<int>(i % 6);
            const DensityMatrix rho = induced_state(2, 2, k, src);
            const double dense = dense_permutation_expectation(rho.matrix(), split, 4, m4_swaps());
            const double moment = realignment_moments(rho.matrix(), split).m4;
            const double contracted =
                multicopy_swap_expectation(rho, CopyPermutation::m4_pairing());
            dev = std::max({dev, std::abs(dense - moment), std::abs(dense - contracted)});

            const double swap_dense = dense_permutation_expectation(
                rho.matrix(), split, 2, {{Subsystem::A, 0, 1}, {Subsystem::B, 0, 1}});
            dev = std::max({dev, std::abs(swap_dense - purity(rho.matrix())),
                            std::abs(swap_dense -
                                     multicopy_swap_expectation(rho, CopyPermutation::swap_ab()))});
        }
        return Outcome{dev <= tol.multicopy_oracle, worst("m4", dev, tol.multicopy_oracle)};
    });
}

CheckResult check_index_oracles(const Tolerances& tol) {
    return timed("index_oracles", [&] {
        const Bipartition splits[] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 4}, {4, 3}};
        double dev = 0.0;
        std::uint64_t idx = 0;
        for (const Bipartition& split : splits) {
            for (int rep = 0; rep < 20; ++rep) {
                GaussianSource src(check_seed(2, idx++));
                const int d = split.dim();
                // Alternate density matrices and unstructured square matrices.
                const ComplexMatrix m = rep % 2 == 0
                                            ? induced_state(split.dim_a, split.dim_b, 1 + rep, src).matrix()
                                            : ginibre(d, d, src);
                for (Subsystem s : {Subsystem::A, Subsystem::B}) {
                    dev = std::max(dev, max_abs(partial_trace(m, s, split), brute_partial_trace(m, s, split)));
                    dev = std::max(dev, max_abs(partial_transpose(m, s, split),
                                                brute_partial_transpose(m, s, split)));
                }
                dev = std::max(dev, max_abs(realign(m, split), brute_realign(m, split)));
            }
        }
        return Outcome{dev <= tol.index_oracle, worst("index", dev, tol.index_oracle)};
    });
}

CheckResult check_qfi_oracle(const Tolerances& tol) {
    return timed("qfi_vs_double_loop", [&] {
        const Bipartition splits[] = {{2, 2}, {2, 3}, {3, 3}};
        double dev = 0.0;
        std::uint64_t idx = 0;
        for (const Bipartition& split : splits) {
            const int d = split.dim();
            for (int k : {1, 2, d - 1, d, 2 * d}) {
                for (int rep = 0; rep < 10; ++rep) {
                    GaussianSource src(check_seed(3, idx++));
                    const DensityMatrix rho = induced_state(split.dim_a, split.dim_b, k, src);
                    const ComplexMatrix a = random_hermitian(d, src);
                    const double fast = qfi(rho, HermitianObservable(a));
                    const double slow = qfi_double_loop(rho.matrix(), a, tol.qfi_degenerate);
                    dev = std::max(dev, std::abs(fast - slow) / std::max(1.0, std::abs(slow)));
                }
            }
        }
        return Outcome{dev <= tol.qfi_oracle, worst("qfi", dev, tol.qfi_oracle)};
    });
}

CheckResult check_e4_trace_norm(const Tolerances& tol) {
    return timed("e4_below_trace_norm", [&] {
        double excess = -INFINITY;
        int violations = 0;
        const Bipartition splits[] = {{2, 2}, {2, 3}, {3, 3}, {3, 4}};
        for (std::uint64_t i = 0; i < 1000; ++i) {
            GaussianSource src(check_seed(4, i));
            ComplexMatrix r;
            double m2 = 0.0;
            double m4 = 0.0;
            if (i % 2 == 0) {
                // Realigned states, raw and centered.
                const Bipartition split = splits[(i / 2) % 4];
                const int k = 1 + static_cast<int>((i / 8) % 12);
                const DensityMatrix rho = induced_state(split.dim_a, split.dim_b, k, src);
                ComplexMatrix x = rho.matrix();
                if (i % 4 == 0) {
                    x -= kron(partial_trace(x, Subsystem::A, split), partial_trace(x, Subsystem::B, split));
                }
                const RealignmentMoments mom = realignment_moments(x, split);
                m2 = mom.m2;
                m4 = mom.m4;
                r = brute_realign(x, split);
            } else {
                // Rectangular Gaussian matrices; moments straight from G G^dagger.
                const int rows = 2 + static_cast<int>(i % 5);
                const int cols = 2 + static_cast<int>((i / 5) % 7);
                r = ginibre(rows, cols, src);
                const ComplexMatrix g = r * r.adjoint();
                m2 = g.trace().real();
                m4 = (g * g).trace().real();
            }
            const double tn = trace_norm(r);
            const double gap = (e4(m2, m4) - tn) / std::max(1.0, tn);
            excess = std::max(excess, gap);
            if (gap > tol.trace_norm_oracle) {
                ++violations;
            }
        }

        // Flat singular spectra (q equal values c) make the estimate exact. E4 is
        // not Lipschitz in m4 there, so the moments are supplied exactly
        // (c a power of two) and only the trace norm comes from the oracle.
        double flat_dev = 0.0;
        for (int n = 1; n <= 6; ++n) {
            for (int rank = 1; rank <= n; ++rank) {
                GaussianSource src(check_seed(40, static_cast<std::uint64_t>(n * 10 + rank)));
                const ComplexMatrix u = haar_unitary(n, src);
                const double c = std::ldexp(1.0, rank - 3);
                const ComplexMatrix m = c * u.leftCols(rank) * u.leftCols(rank).adjoint();
                const double tn = trace_norm(m);
                const double est = e4(rank * c * c, rank * c * c * c * c);
                flat_dev = std::max(flat_dev, std::abs(est - tn) / std::max(1.0, tn));
            }
        }

        Outcome o;
        o.passed = violations == 0 && flat_dev <= tol.trace_norm_oracle;
        std::ostringstream os;
        os.precision(3);
        os << std::scientific << violations << " violations in 1000, max relative (E4 - trace norm) " << excess
           << ", flat-spectrum deviation " << flat_dev;
        o.detail = os.str();
        return o;
    });
}

CheckResult check_witness_validity(const Tolerances& tol) {
    return timed("witness_validity", [&] {
        double alpha_dev = 0.0;
        double worst_ball = INFINITY;
        std::uint64_t idx = 0;
        for (int n : {2, 3, 4}) {
            const Bipartition split{n, n};
            const int d = split.dim();
            const double faithful_expected = std::sqrt((d - std::sqrt(static_cast<double>(d))) / 2.0);
            for (int rep = 0; rep < 1000; ++rep) {
                GaussianSource src(check_seed(5, idx++));
                const Witness ppt = ppt_witness(random_pure_state(d, src), split);
                const WitnessValidity vp = validate_witness_alpha(ppt);
                alpha_dev = std::max(alpha_dev, std::abs(vp.alpha - 1.0));
                worst_ball = std::min(worst_ball, vp.inner_ball_value);

                const Witness faithful = faithful_witness(random_max_entangled(n, n, src), split);
                const WitnessValidity vf = validate_witness_alpha(faithful);
                alpha_dev = std::max(alpha_dev, std::abs(vf.alpha - faithful_expected));
                worst_ball = std::min(worst_ball, vf.inner_ball_value);
            }
        }
        Outcome o;
        o.passed = alpha_dev <= tol.alpha && worst_ball >= -tol.inner_ball;
        std::ostringstream os;
        os.precision(3);
        os << std::scientific << "alpha max deviation " << alpha_dev << " (limit " << tol.alpha
           << "), min inner-ball value " << worst_ball;
        o.detail = os.str();
        return o;
    });
}

CheckResult check_bound_arithmetic(const Tolerances& tol) {
    return timed("bound_arithmetic", [&] {
        struct Frozen {
            const char* label;
            double got;
            double want;
        };
        const double r2 = std::sqrt(2.0);
        const Spectrum bell{{0.5, 0.5, 0.5, -0.5}};
        const BoundResult posmap = positive_map_bound(4, r2, 1.0, 1000.0);
        const BoundResult faithful4 = faithful_ratio_bound(4, 0.0);
        const BoundResult faithful9 = faithful_ratio_bound(9, 0.0);
        const BoundResult param = param_ew_bound(2, 1.0, 4, 1.0, 1000.0, 0.5);
        // Reference values evaluated in 30-digit arithmetic.
        const Frozen table[] = {
            {"ew(1,10)", ew_bound(1.0, 10.0).value, 0.359665238941720767},
            {"ew(sqrt3,10)", ew_bound(std::sqrt(3.0), 10.0).value, 0.0281691494925488903},
            {"ew(sqrt3) rate", ew_bound(std::sqrt(3.0), 0.0).exponent_rate, 0.426267507006738333},
            {"ewset(10,1,50)", ew_set_bound(10.0, 1.0, 50.0).value, 0.00376159770934415268},
            {"spectrum(bell,10)", spectrum_bound(bell, 10.0).value, 0.235926032679469952},
            {"spectrum(bell) rate", spectrum_bound(bell, 0.0).exponent_rate, 0.213738412449275553},
            {"param C1", param.prefactor_log - std::log(2.0), 6.23832462503950778},
            {"param(2,1,4,1,1000)", param.value, 1.18569767387530931e-19},
            {"posmap C1", posmap.prefactor_log - std::log(2.0), 33.2710646668773749},
            {"posmap C1/C2", (posmap.prefactor_log - std::log(2.0)) / posmap.exponent_rate,
             658.699173200741533},
            {"posmap(4,sqrt2,1,1000)", posmap.value, 6.51844189726429065e-8},
            {"faithful(4) C1", faithful4.prefactor_log - std::log(2.0), 33.2710646668773749},
            {"faithful(4) C2", faithful4.exponent_rate, 0.0505102572168219018},
            {"faithful(9) C1", faithful9.prefactor_log - std::log(2.0), 96.7550113383149700},
            {"faithful(9) C2", faithful9.exponent_rate, 0.244040896227298565},
            {"faithful_alpha(9)", faithful_alpha(9), 1.73205080756887729},
            {"singlecopy(1,4,500)", single_copy_bound(1, 4, 500.0).value, 1.10188675373121567e-8},
            {"singlecopy k*", single_copy_threshold_k(1, 4), 137.228994416821153},
            {"adaptive(10,100)", adaptive_bound(10, 100.0).value, 7.24460407139490637e-5},
            {"adaptive rate", adaptive_bound(0, 0.0).exponent_rate, 0.171572875253809902},
        };
        Outcome o;
        double rel = 0.0;
        for (const Frozen& f : table) {
            const double e = std::abs(f.got - f.want) / std::abs(f.want);
            rel = std::max(rel, e);
            if (!(e <= tol.bound_relative) && o.passed) {
                o.passed = false;
                o.detail = std::string("frozen value mismatch: ") + f.label + "; ";
            }
        }

        const double identity = std::abs((3.0 - 2.0 * r2) - (r2 - 1.0) * (r2 - 1.0));
        if (identity > 4.0 * 2.220446049250313e-16) {
            o.passed = false;
        }

        // spectrum_bound <= ew_bound(alpha) for random spectra with alpha >= 1.
        int accepted = 0;
        int dominance_failures = 0;
        std::uint64_t draw = 0;
        while (accepted < 1000) {
            GaussianSource src(check_seed(6, draw++));
            const int d = 4 + static_cast<int>(draw % 13);
            const int negatives = 1 + static_cast<int>((draw / 13) % (d / 2));
            Spectrum spec;
            for (int i = 0; i < d; ++i) {
                const double mag = std::abs(src.normal());
                spec.eigenvalues.push_back(i < negatives ? -0.5 * mag : mag);
            }
            const double a = spectrum_alpha(spec);
            if (!(a >= 1.0)) {
                continue;
            }
            ++accepted;
            const double k = 1.0 + static_cast<double>(draw % 50);
            const BoundResult sb = spectrum_bound(spec, k);
            const BoundResult eb = ew_bound(a, k);
            if (sb.exponent_rate < eb.exponent_rate * (1.0 - 1e-12) || sb.value > eb.value * (1.0 + 1e-12)) {
                ++dominance_failures;
            }
        }
        if (dominance_failures > 0) {
            o.passed = false;
        }
        std::ostringstream os;
        os.precision(3);
        os << std::scientific << "frozen max relative error " << rel << " (limit " << tol.bound_relative
           << "), identity residual " << identity << ", dominance failures " << dominance_failures
           << "/1000";
        o.detail += os.str();
        return o;
    });
}

CheckResult check_determinism(const Tolerances&) {
    return timed("worker_determinism", [&] {
        struct Case {
            CriterionKind kind;
            int da, db, k;
        };
        const Case cases[] = {
            {CriterionKind::ppt, 2, 2, 4},
            {CriterionKind::ew_ppt, 3, 3, 6},
            {CriterionKind::fisher, 2, 2, 2},
        };
        Outcome o;
        std::ostringstream os;
        const char* sep = "";
        for (const Case& c : cases) {
            EstimateConfig cfg;
            cfg.criterion.kind = c.kind;
            cfg.criterion.split = {c.da, c.db};
            cfg.dim_a = c.da;
            cfg.dim_b = c.db;
            cfg.k = c.k;
            cfg.n_samples = 10000;
            cfg.master_seed = 20260101;
            const CapabilityEstimate one = estimate(cfg, 1);
            const CapabilityEstimate eight = estimate(cfg, 8);
            if (one.n_detected != eight.n_detected) {
                o.passed = false;
            }
            os << sep << to_string(c.kind) << " " << one.n_detected << "/" << eight.n_detected;
            sep = "; ";
        }
        o.detail = os.str();
        return o;
    });
}

std::vector<CheckResult> run_fast_checks(const Tolerances& tol) {
    return {
        check_multicopy_m4(tol),    check_index_oracles(tol),     check_qfi_oracle(tol),
        check_e4_trace_norm(tol),   check_witness_validity(tol),  check_bound_arithmetic(tol),
        check_determinism(tol),
    };
}

}  // namespace entcap::verify
