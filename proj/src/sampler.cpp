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

#include "entcap/sampler.hpp"

#include <cmath>
#include <string>

#include "entcap/errors.hpp"

namespace entcap {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

void require_positive(int v, const char* what) {
    if (v < 1) {
        throw InvalidInput(std::string(what) + ": dimensions must be >= 1");
    }
}

}  // namespace

StreamEngine::StreamEngine(SeedSpec seed) {
    const std::uint64_t x = mix64(mix64(seed.master_seed) ^ seed.stream_index);
    for (std::uint64_t j = 0; j < 4; ++j) {
        s_[j] = mix64(x + j * 0x9E3779B97F4A7C15ull);
    }
}

StreamEngine::result_type StreamEngine::operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

ComplexMatrix ginibre(int d, int k, GaussianSource& src) {
    require_positive(d, "ginibre");
    require_positive(k, "ginibre");
    ComplexMatrix z(d, k);
    // Fill row-major so a row prefix does not depend on k.
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < k; ++c) {
            z(r, c) = src.complex_normal();
        }
    }
    return z;
}

ComplexMatrix ginibre(int d, int k, SeedSpec seed) {
    GaussianSource src(seed);
    return ginibre(d, k, src);
}

DensityMatrix induced_state(int dim_a, int dim_b, int k, GaussianSource& src) {
    require_positive(dim_a, "induced_state");
    require_positive(dim_b, "induced_state");
    require_positive(k, "induced_state");
    const ComplexMatrix z = ginibre(dim_a * dim_b, k, src);
    ComplexMatrix rho = z * z.adjoint();
    rho = (0.5 * (rho + rho.adjoint())).eval();
    rho /= rho.trace().real();
    return DensityMatrix::trusted(std::move(rho), Bipartition{dim_a, dim_b});
}

DensityMatrix induced_state(int dim_a, int dim_b, int k, SeedSpec seed) {
    GaussianSource src(seed);
    return induced_state(dim_a, dim_b, k, src);
}

ComplexMatrix haar_unitary(int d, GaussianSource& src) {
    require_positive(d, "haar_unitary");
    const ComplexMatrix z = ginibre(d, d, src);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    const ComplexMatrix& r = qr.matrixQR();
    for (int j = 0; j < d; ++j) {
        const Complex diag = r(j, j);
        const double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(j) *= diag / mag;
        }
    }
    return q;
}

ComplexMatrix haar_unitary(int d, SeedSpec seed) {
    GaussianSource src(seed);
    return haar_unitary(d, src);
}

PureStateVector random_pure_state(int d, GaussianSource& src) {
    require_positive(d, "random_pure_state");
    ComplexVector v(d);
    for (int i = 0; i < d; ++i) {
        v(i) = src.complex_normal();
    }
    v /= v.norm();
    return PureStateVector::trusted(std::move(v));
}

PureStateVector random_pure_state(int d, SeedSpec seed) {
    GaussianSource src(seed);
    return random_pure_state(d, src);
}

PureStateVector max_entangled_from_unitaries(const ComplexMatrix& u_a, const ComplexMatrix& u_b) {
    const int d = static_cast<int>(u_a.rows());
    if (u_b.rows() != d || u_a.cols() != d || u_b.cols() != d) {
        throw InvalidInput("max_entangled_from_unitaries: unitaries must be square and equal size");
    }
    // Amplitude matrix psi[i][j] = (U_A U_B^T)_{ij} / sqrt(d).
    const ComplexMatrix amp = u_a * u_b.transpose() / std::sqrt(static_cast<double>(d));
    ComplexVector v(d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            v(i * d + j) = amp(i, j);
        }
    }
    return PureStateVector::trusted(std::move(v));
}

PureStateVector random_max_entangled(int dim_a, int dim_b, GaussianSource& src) {
    require_positive(dim_a, "random_max_entangled");
    if (dim_b != dim_a) {
        throw InvalidInput("random_max_entangled: requires d_a == d_b");
    }
    const ComplexMatrix u_a = haar_unitary(dim_a, src);
    const ComplexMatrix u_b = haar_unitary(dim_b, src);
    return max_entangled_from_unitaries(u_a, u_b);
}

PureStateVector random_max_entangled(int dim_a, int dim_b, SeedSpec seed) {
    GaussianSource src(seed);
    return random_max_entangled(dim_a, dim_b, src);
}

HermitianObservable gue_observable(int d, GaussianSource& src) {
    const ComplexMatrix g = ginibre(d, d, src);
    return HermitianObservable::trusted(0.5 * (g + g.adjoint()));
}

HermitianObservable gue_observable(int d, SeedSpec seed) {
    GaussianSource src(seed);
    return gue_observable(d, src);
}

}  // namespace entcap
