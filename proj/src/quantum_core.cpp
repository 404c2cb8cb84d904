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

#include "entcap/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entcap/errors.hpp"

namespace entcap {

namespace {

double hermiticity_defect(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InvalidInput(std::string(what) + ": matrix must be square and non-empty");
    }
}

void require_split(Eigen::Index dim, Bipartition split, const char* what) {
    if (split.dim_a < 1 || split.dim_b < 1 || split.dim() != dim) {
        throw InvalidInput(std::string(what) + ": bipartition " + std::to_string(split.dim_a) +
                           "x" + std::to_string(split.dim_b) + " does not match dimension " +
                           std::to_string(dim));
    }
}

}  // namespace

HermitianObservable::HermitianObservable(ComplexMatrix m) : m_(std::move(m)) {
    require_square(m_, "HermitianObservable");
    if (hermiticity_defect(m_) > kTolerances.hermitian) {
        throw InvalidInput("HermitianObservable: matrix is not Hermitian");
    }
}

HermitianObservable HermitianObservable::trusted(ComplexMatrix m) {
    return HermitianObservable(std::move(m), TrustedTag{});
}

DensityMatrix::DensityMatrix(ComplexMatrix m, Bipartition split)
    : split_(split), m_(std::move(m)) {
    validate();
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m, Bipartition split) {
    return DensityMatrix(std::move(m), split, TrustedTag{});
}

void DensityMatrix::validate(const Tolerances& tol) const {
    require_square(m_, "DensityMatrix");
    require_split(m_.rows(), split_, "DensityMatrix");
    if (hermiticity_defect(m_) > tol.hermitian) {
        throw InvalidInput("DensityMatrix: not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1.0)) > tol.trace) {
        throw InvalidInput("DensityMatrix: trace is not one");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol.psd) {
        throw InvalidInput("DensityMatrix: not positive semidefinite");
    }
}

PureStateVector::PureStateVector(ComplexVector amplitudes) : v_(std::move(amplitudes)) {
    if (v_.size() == 0) {
        throw InvalidInput("PureStateVector: empty");
    }
    if (std::abs(v_.norm() - 1.0) > kTolerances.unit_norm) {
        throw InvalidInput("PureStateVector: not unit norm");
    }
}

PureStateVector PureStateVector::trusted(ComplexVector amplitudes) {
    return PureStateVector(std::move(amplitudes), TrustedTag{});
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
    require_square(m, "hermitian_eigs");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
    if (es.info() != Eigen::Success) {
        throw InvalidInput("hermitian_eigs: eigensolver did not converge");
    }
    // Eigen returns ascending order.
    EigenSystem out;
    out.values = es.eigenvalues().reverse();
    out.vectors = es.eigenvectors().rowwise().reverse();
    return out;
}

Spectrum hermitian_eigs(const HermitianObservable& m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.matrix(), Eigen::EigenvaluesOnly);
    const RealVector& v = es.eigenvalues();
    Spectrum s;
    s.eigenvalues.assign(v.data(), v.data() + v.size());
    std::reverse(s.eigenvalues.begin(), s.eigenvalues.end());
    return s;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem keep, Bipartition split) {
    require_square(m, "partial_trace");
    require_split(m.rows(), split, "partial_trace");
    const int da = split.dim_a;
    const int db = split.dim_b;
    if (keep == Subsystem::A) {
        // (rho_A)_{ij} = sum_k rho_{(i k),(j k)}
        ComplexMatrix out = ComplexMatrix::Zero(da, da);
        for (int i = 0; i < da; ++i) {
            for (int j = 0; j < da; ++j) {
                out(i, j) = m.block(i * db, j * db, db, db).trace();
            }
        }
        return out;
    }
    // (rho_B)_{kl} = sum_i rho_{(i k),(i l)}
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (int i = 0; i < da; ++i) {
        out += m.block(i * db, i * db, db, db);
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
    ComplexMatrix r = partial_trace(rho.matrix(), keep, rho.split());
    const int d = static_cast<int>(r.rows());
    return DensityMatrix::trusted(std::move(r), Bipartition{d, 1});
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Subsystem sub, Bipartition split) {
    require_square(m, "partial_transpose");
    require_split(m.rows(), split, "partial_transpose");
    const int da = split.dim_a;
    const int db = split.dim_b;
    ComplexMatrix out(m.rows(), m.cols());
    if (sub == Subsystem::B) {
        // out_{(i k),(j l)} = m_{(i l),(j k)}: transpose every d_b x d_b block.
        for (int i = 0; i < da; ++i) {
            for (int j = 0; j < da; ++j) {
                out.block(i * db, j * db, db, db) = m.block(i * db, j * db, db, db).transpose();
            }
        }
    } else {
        // out_{(i k),(j l)} = m_{(j k),(i l)}: swap blocks (i,j) and (j,i).
        for (int i = 0; i < da; ++i) {
            for (int j = 0; j < da; ++j) {
                out.block(i * db, j * db, db, db) = m.block(j * db, i * db, db, db);
            }
        }
    }
    return out;
}

HermitianObservable partial_transpose(const HermitianObservable& m, Subsystem sub,
                                      Bipartition split) {
    return HermitianObservable::trusted(partial_transpose(m.matrix(), sub, split));
}

ComplexMatrix realign(const ComplexMatrix& m, Bipartition split) {
    require_square(m, "realign");
    require_split(m.rows(), split, "realign");
    const int da = split.dim_a;
    const int db = split.dim_b;
    // Row (i,j) of R is the block m[(i,.),(j,.)] flattened row-major.
    ComplexMatrix r(da * da, db * db);
    for (int i = 0; i < da; ++i) {
        for (int j = 0; j < da; ++j) {
            const auto blk = m.block(i * db, j * db, db, db);
            for (int k = 0; k < db; ++k) {
                for (int l = 0; l < db; ++l) {
                    r(i * da + j, k * db + l) = blk(k, l);
                }
            }
        }
    }
    return r;
}

double expectation(const HermitianObservable& o, const DensityMatrix& rho) {
    if (o.dim() != rho.dim()) {
        throw InvalidInput("expectation: dimension mismatch");
    }
    const Complex v = o.matrix().cwiseProduct(rho.matrix().transpose()).sum();
    if (std::abs(v.imag()) > kTolerances.imag_expectation) {
        throw InvalidInput("expectation: tr(O rho) has a non-negligible imaginary part");
    }
    return v.real();
}

double purity(const ComplexMatrix& rho) {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return rho.squaredNorm();
}

CopyPermutation CopyPermutation::swap_ab() { return {{1, 0}, {1, 0}}; }
CopyPermutation CopyPermutation::swap_a() { return {{1, 0}, {0, 1}}; }
CopyPermutation CopyPermutation::swap_b() { return {{0, 1}, {1, 0}}; }
CopyPermutation CopyPermutation::m4_pairing() {
    // A: (1 2)(3 4); B: (2 3)(4 1), zero-based.
    return {{1, 0, 3, 2}, {3, 2, 1, 0}};
}

namespace {

bool is_permutation(const std::vector<int>& p) {
    std::vector<bool> seen(p.size(), false);
    for (int x : p) {
        if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) {
            return false;
        }
        seen[x] = true;
    }
    return true;
}

std::vector<std::vector<int>> cycles_of(const std::vector<int>& p) {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(p.size(), false);
    for (int s = 0; s < static_cast<int>(p.size()); ++s) {
        if (seen[s]) {
            continue;
        }
        std::vector<int> c;
        for (int i = s; !seen[i]; i = p[i]) {
            seen[i] = true;
            c.push_back(i);
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

// tr(P rho^{(x)n}) = sum over (a_1..a_n, b_1..b_n) of
//   prod_i rho[(a_i, b_i), (a_{sa(i)}, b_{sb(i)})].
// For a fixed assignment of the A indices, factor i is the d_b x d_b block
// M_i = rho[(a_i, .), (a_{sa(i)}, .)], and the B sum collapses to a product of
// traces of M along each cycle of sb.
double multicopy_swap_expectation(const DensityMatrix& rho, const CopyPermutation& pairing) {
    const int n = pairing.copies();
    if (n < 1 || n > 4 || static_cast<int>(pairing.on_b.size()) != n ||
        !is_permutation(pairing.on_a) || !is_permutation(pairing.on_b)) {
        throw InvalidInput("multicopy_swap_expectation: malformed permutation");
    }
    const ComplexMatrix& m = rho.matrix();

    if (pairing.on_a == pairing.on_b) {
        // Same permutation on both factors: product of tr(rho^len) over cycles.
        double value = 1.0;
        for (const auto& c : cycles_of(pairing.on_a)) {
            ComplexMatrix p = m;
            for (std::size_t i = 1; i < c.size(); ++i) {
                p = p * m;
            }
            value *= p.trace().real();
        }
        return value;
    }

    const int da = rho.split().dim_a;
    const int db = rho.split().dim_b;
    const auto b_cycles = cycles_of(pairing.on_b);

    std::vector<int> a(n, 0);
    Complex total = 0.0;
    ComplexMatrix prod(db, db);
    for (;;) {
        Complex term = 1.0;
        for (const auto& c : b_cycles) {
            prod = m.block(a[c[0]] * db, a[pairing.on_a[c[0]]] * db, db, db);
            for (std::size_t t = 1; t < c.size(); ++t) {
                const int i = c[t];
                prod = prod * m.block(a[i] * db, a[pairing.on_a[i]] * db, db, db);
            }
            term *= prod.trace();
            if (term == Complex(0.0)) {
                break;
            }
        }
        total += term;

        int pos = 0;
        while (pos < n && ++a[pos] == da) {
            a[pos++] = 0;
        }
        if (pos == n) {
            break;
        }
    }
    return total.real();
}

}  // namespace entcap
