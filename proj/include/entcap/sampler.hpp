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
#include <limits>
#include <random>

#include "entcap/quantum_core.hpp"

namespace entcap {

/// Identifies one random stream: the run's master seed plus a per-sample
/// counter. Equal specs give bit-identical draws.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;

    friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Master seed for an independent family of streams (e.g. the criterion's
/// own randomness next to the state sampler's).
constexpr std::uint64_t derive_master(std::uint64_t master_seed, std::uint64_t domain) {
    return mix64(master_seed ^ mix64(domain));
}

/// xoshiro256** generator whose state is a fixed function of a SeedSpec:
///   x = mix64(mix64(master_seed) ^ stream_index)
///   s[j] = mix64(x + j * 0x9E3779B97F4A7C15), j = 0..3
/// Satisfies UniformRandomBitGenerator, so std distributions apply.
class StreamEngine {
  public:
    using result_type = std::uint64_t;

    explicit StreamEngine(SeedSpec seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

  private:
    std::uint64_t s_[4];
};

/// Draws N(0,1) variates from a StreamEngine. The transform is libstdc++'s
/// std::normal_distribution (Marsaglia polar); outputs are bit-reproducible
/// within one standard library build.
class GaussianSource {
  public:
    explicit GaussianSource(SeedSpec seed) : engine_(seed) {}

    double normal() { return dist_(engine_); }
    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }
    StreamEngine& engine() { return engine_; }

  private:
    StreamEngine engine_;
    std::normal_distribution<double> dist_{0.0, 1.0};
};

// Each operation comes in two forms: one that owns a fresh stream for a
// SeedSpec, and one that continues an existing source (used when a single
// sample needs several random objects).

/// d x k matrix of i.i.d. standard complex Gaussians (Re, Im ~ N(0,1)).
ComplexMatrix ginibre(int d, int k, SeedSpec seed);
ComplexMatrix ginibre(int d, int k, GaussianSource& src);

/// rho = Z Z^dagger / tr(Z Z^dagger) with Z a (d_a d_b) x k Ginibre matrix.
DensityMatrix induced_state(int dim_a, int dim_b, int k, SeedSpec seed);
DensityMatrix induced_state(int dim_a, int dim_b, int k, GaussianSource& src);

/// Haar unitary from the QR decomposition of a Ginibre matrix, with each
/// column multiplied by the phase of the matching diagonal entry of R.
ComplexMatrix haar_unitary(int d, SeedSpec seed);
ComplexMatrix haar_unitary(int d, GaussianSource& src);

/// Normalized complex Gaussian vector.
PureStateVector random_pure_state(int d, SeedSpec seed);
PureStateVector random_pure_state(int d, GaussianSource& src);

/// (U_A (x) U_B) sum_i |ii> / sqrt(d_a) with independent Haar U_A, U_B.
PureStateVector random_max_entangled(int dim_a, int dim_b, SeedSpec seed);
PureStateVector random_max_entangled(int dim_a, int dim_b, GaussianSource& src);

/// Deterministic hook: the maximally entangled state for given unitaries.
PureStateVector max_entangled_from_unitaries(const ComplexMatrix& u_a, const ComplexMatrix& u_b);

/// (G + G^dagger) / 2 with G a d x d Ginibre matrix (unnormalized GUE).
HermitianObservable gue_observable(int d, SeedSpec seed);
HermitianObservable gue_observable(int d, GaussianSource& src);

}  // namespace entcap
