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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entcap/bounds.hpp"
#include "entcap/criteria.hpp"

namespace entcap {

enum class CiMethod {
    wilson,       // Wilson score interval
    exact_small,  // Clopper-Pearson when n_detected <= 5, Wilson otherwise
};

struct EstimateConfig {
    CriterionSpec criterion;
    int dim_a = 2;
    int dim_b = 2;
    int k = 1;
    std::uint64_t n_samples = 100000;
    std::uint64_t master_seed = 0;
    double ci_level = 0.95;
    CiMethod ci_method = CiMethod::wilson;

    /// Throws InvalidInput on a bad config or a criterion/bipartition mismatch.
    void validate() const;
};

struct CapabilityEstimate {
    std::uint64_t n_samples = 0;
    std::uint64_t n_detected = 0;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;
    std::optional<double> bound_value;
    double wall_time_s = 0.0;
};

struct ConfidenceInterval {
    double low = 0.0;
    double high = 0.0;
};

ConfidenceInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double level);
ConfidenceInterval clopper_pearson_interval(std::uint64_t successes, std::uint64_t trials,
                                            double level);

/// ENTCAP_WORKERS if set to a positive integer, else hardware concurrency.
unsigned default_worker_count();

/// Per-sample seed streams: the state for sample i comes from
/// {master, i}; the criterion's own randomness from {derive_master(master, 1), i}.
SeedSpec state_seed(std::uint64_t master_seed, std::uint64_t sample);
SeedSpec criterion_seed(std::uint64_t master_seed, std::uint64_t sample);

/// Draws n_samples states from the induced measure and counts strict
/// detections. The count is independent of the worker count.
CapabilityEstimate estimate(const EstimateConfig& cfg, unsigned workers);
CapabilityEstimate estimate(const EstimateConfig& cfg);

/// Which theoretical bound to attach to a sweep row.
struct BoundSelector {
    enum class Type { none, automatic, ew, ewset, spectrum, param, posmap, faithful, singlecopy, adaptive };
    Type type = Type::none;
    double alpha = 1.0;      // ew, ewset, param, posmap (alpha_min)
    double count = 1.0;      // ewset: N; param: M; singlecopy / adaptive: m
    double lipschitz = 1.0;  // param, posmap
    double eps = kDefaultEps;

    /// The bound for a config, or nullopt when the selector (or, for
    /// `automatic`, the criterion) has no bound.
    std::optional<BoundResult> evaluate(const EstimateConfig& cfg) const;
};

struct SweepRow {
    std::string experiment_id;
    std::string criterion;  // describe(spec)
    int dim_a = 0;
    int dim_b = 0;
    int k = 0;
    std::uint64_t n_samples = 0;
    std::uint64_t master_seed = 0;
    std::optional<CapabilityEstimate> estimate;  // empty when the point failed
    std::string error;

    bool ok() const { return estimate.has_value(); }
};

/// One row per grid point, in grid order. A failing point yields a row with
/// the error message instead of aborting the sweep.
std::vector<SweepRow> sweep(std::span<const EstimateConfig> grid, const std::string& experiment_id,
                            const BoundSelector& bound, unsigned workers);

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int n_points = 0;
};

inline constexpr std::uint64_t kMinDetectionsForFit = 10;

/// Least squares of ln p_hat against k over rows with k >= k_min and at least
/// kMinDetectionsForFit detections.
DecayFit fit_decay_slope(std::span<const SweepRow> rows, int k_min);

/// Smallest k where p_hat first drops below half the plateau (mean p_hat of
/// the first three k values), linearly interpolated between the bracketing
/// points.
double threshold_kth(std::span<const SweepRow> rows);

}  // namespace entcap
