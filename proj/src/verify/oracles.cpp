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

#include "entcap/verify/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace entcap::verify {

ComplexMatrix brute_partial_trace(const ComplexMatrix& m, Subsystem keep, Bipartition split) {
    const int da = split.dim_a;
    const int db = split.dim_b;
    if (keep == Subsystem::B) {
        ComplexMatrix out = ComplexMatrix::Zero(db, db);
        for (int i = 0; i < da; ++i) {
            // (<i| (x) I) m (|i> (x) I) through explicit embeddings.
            ComplexMatrix e = ComplexMatrix::Zero(da * db, db);
            for (int k = 0; k < db; ++k) {
                e(i * db + k, k) = 1.0;
            }
            out += e.adjoint() * m * e;
        }
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (int k = 0; k < db; ++k) {
        ComplexMatrix e = ComplexMatrix::Zero(da * db, da);
        for (int i = 0; i < da; ++i) {
            e(i * db + k, i) = 1.0;
        }
        out += e.adjoint() * m * e;
    }
    return out;
}

ComplexMatrix brute_partial_transpose(const ComplexMatrix& m, Subsystem sub, Bipartition split) {
    const int da = split.dim_a;
    const int db = split.dim_b;
    ComplexMatrix out(m.rows(), m.cols());
    for (int i = 0; i < da; ++i) {
        for (int k = 0; k < db; ++k) {
            for (int j = 0; j < da; ++j) {
                for (int l = 0; l < db; ++l) {
                    if (sub == Subsystem::B) {
                        out(i * db + k, j * db + l) = m(i * db + l, j * db + k);
                    } else {
                        out(i * db + k, j * db + l) = m(j * db + k, i * db + l);
                    }
                }
            }
        }
    }
    return out;
}

ComplexMatrix brute_realign(const ComplexMatrix& m, Bipartition split) {
    const int da = split.dim_a;
    const int db = split.dim_b;
    ComplexMatrix r(da * da, db * db);
    for (int i = 0; i < da; ++i) {
        for (int j = 0; j < da; ++j) {
            for (int k = 0; k < db; ++k) {
                for (int l = 0; l < db; ++l) {
                    r(i * da + j, k * db + l) = m(i * db + k, j * db + l);
                }
            }
        }
    }
    return r;
}

Complex dense_expectation(const ComplexMatrix& o, const ComplexMatrix& rho) {
    return (o * rho).trace();
}

namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// Digits of a basis index of (A (x) B)^{(x)n}: copy c occupies the c-th
// most significant (a, b) pair.
struct Digits {
    std::vector<int> a;
    std::vector<int> b;
};

Digits decode(long index, int copies, Bipartition split) {
    Digits dg{std::vector<int>(copies), std::vector<int>(copies)};
    for (int c = copies - 1; c >= 0; --c) {
        dg.b[c] = static_cast<int>(index % split.dim_b);
        index /= split.dim_b;
        dg.a[c] = static_cast<int>(index % split.dim_a);
        index /= split.dim_a;
    }
    return dg;
}

long encode(const Digits& dg, Bipartition split) {
    long index = 0;
    for (std::size_t c = 0; c < dg.a.size(); ++c) {
        index = (index * split.dim_a + dg.a[c]) * split.dim_b + dg.b[c];
    }
    return index;
}

}  // namespace

double dense_permutation_expectation(const ComplexMatrix& rho, Bipartition split, int copies,
                                     const std::vector<CopySwap>& swaps) {
    const int d = split.dim();
    long total = 1;
    for (int c = 0; c < copies; ++c) {
        total *= d;
    }
    // P = sum_x |pi(x)><x|, with pi applying the swaps to the digits of x in order.
    std::vector<long> pi(total);
    for (long x = 0; x < total; ++x) {
        Digits dg = decode(x, copies, split);
        for (const CopySwap& s : swaps) {
            auto& digits = s.factor == Subsystem::A ? dg.a : dg.b;
            std::swap(digits[s.first], digits[s.second]);
        }
        pi[x] = encode(dg, split);
    }
    ComplexMatrix tensor = rho;
    for (int c = 1; c < copies; ++c) {
        tensor = kron(tensor, rho);
    }
    // tr(P T) = sum_x <x| T |pi(x)>
    Complex acc = 0.0;
    for (long x = 0; x < total; ++x) {
        acc += tensor(x, pi[x]);
    }
    return acc.real();
}

std::vector<CopySwap> m4_swaps() {
    return {{Subsystem::A, 0, 1}, {Subsystem::A, 2, 3}, {Subsystem::B, 1, 2}, {Subsystem::B, 3, 0}};
}

double qfi_double_loop(const ComplexMatrix& rho, const ComplexMatrix& a, double cutoff) {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(rho);
    const Eigen::Index d = rho.rows();
    std::vector<double> lambda(d);
    std::vector<ComplexVector> vec(d);
    std::vector<Eigen::Index> order(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        order[k] = k;
    }
    std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return es.eigenvalues()(x).real() < es.eigenvalues()(y).real();
    });
    // The general solver does not orthogonalize within (near-)degenerate
    // eigenspaces; Gram-Schmidt in eigenvalue order leaves the rest untouched.
    for (Eigen::Index k = 0; k < d; ++k) {
        lambda[k] = es.eigenvalues()(order[k]).real();
        ComplexVector v = es.eigenvectors().col(order[k]);
        for (Eigen::Index j = 0; j < k; ++j) {
            v -= vec[j].dot(v) * vec[j];
        }
        vec[k] = v.normalized();
    }
    double f = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
            const double s = lambda[k] + lambda[l];
            if (s < cutoff) {
                continue;
            }
            const Complex elem = vec[k].dot(a * vec[l]);  // <k|A|l>
            const double diff = lambda[k] - lambda[l];
            f += diff * diff / (2.0 * s) * std::norm(elem);
        }
    }
    return f;
}

double trace_norm(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues().sum();
}

std::pair<double, double> singular_power_sums(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    double s2 = 0.0;
    double s4 = 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        const double s = svd.singularValues()(i);
        s2 += s * s;
        s4 += s * s * s * s;
    }
    return {s2, s4};
}

ComplexMatrix random_hermitian(int d, GaussianSource& src) {
    ComplexMatrix g(d, d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            g(r, c) = src.complex_normal();
        }
    }
    return 0.5 * (g + g.adjoint());
}

}  // namespace entcap::verify
