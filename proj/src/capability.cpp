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

#include "entcap/capability.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "entcap/errors.hpp"

namespace entcap {

namespace {

constexpr std::uint64_t kCriterionDomain = 1;

void require_level(double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw InvalidInput("confidence level must lie in (0, 1)");
    }
}

std::uint64_t count_range(const EstimateConfig& cfg, std::uint64_t begin, std::uint64_t end) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
        GaussianSource src(state_seed(cfg.master_seed, i));
        const DensityMatrix rho = induced_state(cfg.dim_a, cfg.dim_b, cfg.k, src);
        if (detect(cfg.criterion, rho, criterion_seed(cfg.master_seed, i)).detected) {
            ++hits;
        }
    }
    return hits;
}

}  // namespace

void EstimateConfig::validate() const {
    if (dim_a < 1 || dim_b < 1) {
        throw InvalidInput("estimate: dimensions must be >= 1");
    }
    if (k < 1) {
        throw InvalidInput("estimate: k must be >= 1");
    }
    if (n_samples < 100) {
        throw InvalidInput("estimate: n_samples must be >= 100");
    }
    require_level(ci_level);
    if (!(criterion.split == Bipartition{dim_a, dim_b})) {
        throw InvalidInput("estimate: criterion bipartition does not match d_a x d_b");
    }
    criterion.validate();
}

ConfidenceInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double level) {
    require_level(level);
    if (trials == 0 || successes > trials) {
        throw InvalidInput("wilson_interval: need 0 <= successes <= trials, trials > 0");
    }
    const double n = static_cast<double>(trials);
    const double p = successes / n;
    const double z = boost::math::quantile(boost::math::normal(), 1.0 - (1.0 - level) / 2.0);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    ConfidenceInterval ci;
    ci.low = std::clamp(center - half, 0.0, p);
    ci.high = std::clamp(center + half, p, 1.0);
    return ci;
}

ConfidenceInterval clopper_pearson_interval(std::uint64_t successes, std::uint64_t trials,
                                            double level) {
    require_level(level);
    if (trials == 0 || successes > trials) {
        throw InvalidInput("clopper_pearson_interval: need 0 <= successes <= trials, trials > 0");
    }
    const double x = static_cast<double>(successes);
    const double n = static_cast<double>(trials);
    const double tail = (1.0 - level) / 2.0;
    ConfidenceInterval ci;
    ci.low = successes == 0 ? 0.0 : boost::math::ibeta_inv(x, n - x + 1.0, tail);
    ci.high = successes == trials ? 1.0 : boost::math::ibeta_inv(x + 1.0, n - x, 1.0 - tail);
    return ci;
}

unsigned default_worker_count() {
    if (const char* env = std::getenv("ENTCAP_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SeedSpec state_seed(std::uint64_t master_seed, std::uint64_t sample) {
    return SeedSpec{master_seed, sample};
}

SeedSpec criterion_seed(std::uint64_t master_seed, std::uint64_t sample) {
    return SeedSpec{derive_master(master_seed, kCriterionDomain), sample};
}

CapabilityEstimate estimate(const EstimateConfig& cfg, unsigned workers) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t n = cfg.n_samples;
    workers = std::max(1u, workers);
    if (workers > n) {
        workers = static_cast<unsigned>(n);
    }

    std::uint64_t hits = 0;
    if (workers == 1) {
        hits = count_range(cfg, 0, n);
    } else {
        std::vector<std::uint64_t> partial(workers, 0);
        std::vector<std::exception_ptr> failures(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = n * w / workers;
            const std::uint64_t end = n * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] {
                try {
                    partial[w] = count_range(cfg, begin, end);
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
        for (const auto& f : failures) {
            if (f) {
                std::rethrow_exception(f);
            }
        }
        for (std::uint64_t h : partial) {
            hits += h;
        }
    }

    CapabilityEstimate est;
    est.n_samples = n;
    est.n_detected = hits;
    est.p_hat = static_cast<double>(hits) / static_cast<double>(n);
    const bool exact = cfg.ci_method == CiMethod::exact_small && hits <= 5;
    const ConfidenceInterval ci = exact ? clopper_pearson_interval(hits, n, cfg.ci_level)
                                        : wilson_interval(hits, n, cfg.ci_level);
    est.ci_low = std::min(ci.low, est.p_hat);
    est.ci_high = std::max(ci.high, est.p_hat);
    est.seed = cfg.master_seed;
    est.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return est;
}

CapabilityEstimate estimate(const EstimateConfig& cfg) {
    return estimate(cfg, default_worker_count());
}

std::optional<BoundResult> BoundSelector::evaluate(const EstimateConfig& cfg) const {
    const int d = cfg.dim_a * cfg.dim_b;
    const double k = cfg.k;
    switch (type) {
    case Type::none:
        return std::nullopt;
    case Type::automatic:
        switch (cfg.criterion.kind) {
        case CriterionKind::ew_fixed: {
            const double a = cfg.criterion.witness ? cfg.criterion.witness->alpha() : 0.0;
            if (!(a >= 1.0)) {
                return std::nullopt;
            }
            return ew_bound(a, k);
        }
        case CriterionKind::ew_ppt:
            return ew_bound(1.0, k);
        case CriterionKind::ew_faithful:
            return ew_bound(std::max(1.0, faithful_alpha(d)), k);
        case CriterionKind::ppt:
            return positive_map_bound(d, std::sqrt(2.0), 1.0, k);
        default:
            return std::nullopt;
        }
    case Type::ew:
        return ew_bound(alpha, k);
    case Type::ewset:
        return ew_set_bound(count, alpha, k);
    case Type::spectrum:
        if (cfg.criterion.kind != CriterionKind::ew_fixed || !cfg.criterion.witness) {
            throw InvalidInput("bound spectrum: needs an ew_fixed criterion");
        }
        return spectrum_bound(hermitian_eigs(cfg.criterion.witness->observable()), k);
    case Type::param:
        return param_ew_bound(static_cast<int>(count), lipschitz, d, alpha, k, eps);
    case Type::posmap:
        return positive_map_bound(d, lipschitz, alpha, k);
    case Type::faithful:
        return faithful_ratio_bound(d, k);
    case Type::singlecopy:
        return single_copy_bound(static_cast<int>(count), d, k, eps);
    case Type::adaptive:
        return adaptive_bound(static_cast<int>(count), k);
    }
    return std::nullopt;
}

std::vector<SweepRow> sweep(std::span<const EstimateConfig> grid, const std::string& experiment_id,
                            const BoundSelector& bound, unsigned workers) {
    if (grid.empty()) {
        throw InvalidInput("sweep: empty grid");
    }
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (const EstimateConfig& cfg : grid) {
        SweepRow row;
        row.experiment_id = experiment_id;
        row.criterion = describe(cfg.criterion);
        row.dim_a = cfg.dim_a;
        row.dim_b = cfg.dim_b;
        row.k = cfg.k;
        row.n_samples = cfg.n_samples;
        row.master_seed = cfg.master_seed;
        try {
            CapabilityEstimate est = estimate(cfg, workers);
            if (auto b = bound.evaluate(cfg)) {
                est.bound_value = b->value;
            }
            row.estimate = est;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

DecayFit fit_decay_slope(std::span<const SweepRow> rows, int k_min) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (const SweepRow& r : rows) {
        if (r.ok() && r.k >= k_min && r.estimate->n_detected >= kMinDetectionsForFit) {
            xs.push_back(r.k);
            ys.push_back(std::log(r.estimate->p_hat));
        }
    }
    if (xs.size() < 3) {
        throw InsufficientData("fit_decay_slope: fewer than 3 rows with enough detections");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) {
        throw InsufficientData("fit_decay_slope: all qualifying rows share one k");
    }
    DecayFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += e * e;
    }
    fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.n_points = static_cast<int>(xs.size());
    return fit;
}

double threshold_kth(std::span<const SweepRow> rows) {
    std::vector<std::pair<int, double>> pts;
    for (const SweepRow& r : rows) {
        if (r.ok()) {
            pts.emplace_back(r.k, r.estimate->p_hat);
        }
    }
    std::sort(pts.begin(), pts.end());
    if (pts.size() < 4) {
        throw InsufficientData("threshold_kth: need at least four successful rows");
    }
    const double plateau = (pts[0].second + pts[1].second + pts[2].second) / 3.0;
    const double half = plateau / 2.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].second < half) {
            if (i == 0) {
                return pts[0].first;
            }
            const auto [k0, p0] = pts[i - 1];
            const auto [k1, p1] = pts[i];
            return k0 + (p0 - half) / (p0 - p1) * (k1 - k0);
        }
    }
    throw NoThreshold("threshold_kth: capability never drops below half the plateau");
}

}  // namespace entcap
