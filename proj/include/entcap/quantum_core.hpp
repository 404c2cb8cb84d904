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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "entcap/tolerances.hpp"

namespace entcap {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Basis convention: composite index of |i_A> (x) |j_B> is i * dim_b + j, so A
// is the slow index. Every index permutation below is written against it.

enum class Subsystem { A, B };

struct Bipartition {
    int dim_a = 1;
    int dim_b = 1;

    int dim() const { return dim_a * dim_b; }
    bool square() const { return dim_a == dim_b; }
    friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

/// Dense Hermitian matrix. Construction checks Hermiticity.
class HermitianObservable {
  public:
    explicit HermitianObservable(ComplexMatrix m);

    /// Skips the Hermiticity check; for matrices Hermitian by construction.
    static HermitianObservable trusted(ComplexMatrix m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const ComplexMatrix& matrix() const { return m_; }

  private:
    struct TrustedTag {};
    HermitianObservable(ComplexMatrix m, TrustedTag) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

/// Unit-trace positive semidefinite matrix on a bipartite space.
class DensityMatrix {
  public:
    /// Validates all three invariants (Hermitian, unit trace, PSD).
    DensityMatrix(ComplexMatrix m, Bipartition split);

    /// Skips validation; used by samplers whose output is valid by
    /// construction. `validate()` can be called afterwards.
    static DensityMatrix trusted(ComplexMatrix m, Bipartition split);

    /// Throws InvalidInput naming the first violated invariant.
    void validate(const Tolerances& tol = kTolerances) const;

    int dim() const { return static_cast<int>(m_.rows()); }
    const Bipartition& split() const { return split_; }
    const ComplexMatrix& matrix() const { return m_; }
    HermitianObservable as_observable() const { return HermitianObservable::trusted(m_); }

  private:
    struct TrustedTag {};
    DensityMatrix(ComplexMatrix m, Bipartition split, TrustedTag)
        : split_(split), m_(std::move(m)) {}
    Bipartition split_;
    ComplexMatrix m_;
};

/// Unit-norm state vector.
class PureStateVector {
  public:
    explicit PureStateVector(ComplexVector amplitudes);
    static PureStateVector trusted(ComplexVector amplitudes);

    int dim() const { return static_cast<int>(v_.size()); }
    const ComplexVector& amplitudes() const { return v_; }
    ComplexMatrix projector() const { return v_ * v_.adjoint(); }

  private:
    struct TrustedTag {};
    PureStateVector(ComplexVector v, TrustedTag) : v_(std::move(v)) {}
    ComplexVector v_;
};

/// Real eigenvalues sorted descending.
struct Spectrum {
    std::vector<double> eigenvalues;

    std::size_t size() const { return eigenvalues.size(); }
    double max() const { return eigenvalues.front(); }
    double min() const { return eigenvalues.back(); }
};

struct EigenSystem {
    RealVector values;     // descending
    ComplexMatrix vectors; // column j belongs to values[j]
};

Spectrum hermitian_eigs(const HermitianObservable& m);
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem keep, Bipartition split);
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

ComplexMatrix partial_transpose(const ComplexMatrix& m, Subsystem sub, Bipartition split);
HermitianObservable partial_transpose(const HermitianObservable& m, Subsystem sub,
                                      Bipartition split);

/// R[(i,j),(k,l)] = m[(i,k),(j,l)], shape (dim_a^2, dim_b^2).
ComplexMatrix realign(const ComplexMatrix& m, Bipartition split);

/// Re tr(O rho); throws if the imaginary part exceeds the tolerance.
double expectation(const HermitianObservable& o, const DensityMatrix& rho);

/// tr(rho^2)
double purity(const ComplexMatrix& rho);

/// Permutation of n <= 4 copies, given separately for the A and B factors:
/// on_a[i] is the copy whose A index the i-th copy is paired with.
struct CopyPermutation {
    std::vector<int> on_a;
    std::vector<int> on_b;

    int copies() const { return static_cast<int>(on_a.size()); }

    static CopyPermutation swap_ab();  // S_AB on two copies
    static CopyPermutation swap_a();   // S_A on two copies
    static CopyPermutation swap_b();   // S_B on two copies
    /// S_A^(1,2) S_A^(3,4) S_B^(2,3) S_B^(4,1) on four copies.
    static CopyPermutation m4_pairing();
};

/// tr(P rho^{(x)n}) for the permutation operator P, contracted block-wise;
/// memory stays O(d^2) for any copy count.
double multicopy_swap_expectation(const DensityMatrix& rho, const CopyPermutation& pairing);

}  // namespace entcap
