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

// Straightforward reference implementations. They share no code path with the
// library routines they check: every one works element by element or through
// an explicitly materialized operator.

#include <utility>
#include <vector>

#include "entcap/quantum_core.hpp"
#include "entcap/sampler.hpp"

namespace entcap::verify {

/// sum_i (<i| (x) I) m (|i> (x) I) and the A-side analogue, by explicit index sums.
ComplexMatrix brute_partial_trace(const ComplexMatrix& m, Subsystem keep, Bipartition split);

/// Element-wise index permutation m_{(i k),(j l)} -> m_{(i l),(j k)} (B) or
/// m_{(j k),(i l)} (A).
ComplexMatrix brute_partial_transpose(const ComplexMatrix& m, Subsystem sub, Bipartition split);

/// Element-wise R[(i,j),(k,l)] = m[(i,k),(j,l)].
ComplexMatrix brute_realign(const ComplexMatrix& m, Bipartition split);

/// tr(O rho) through a full matrix product.
Complex dense_expectation(const ComplexMatrix& o, const ComplexMatrix& rho);

/// A transposition of copies `first` and `second` acting on one factor.
struct CopySwap {
    Subsystem factor;
    int first;
    int second;
};

/// tr(P rho^{(x)n}) with P the product of the given swaps, against an
/// explicitly formed rho^{(x)n}. Only for small d^n.
double dense_permutation_expectation(const ComplexMatrix& rho, Bipartition split, int copies,
                                     const std::vector<CopySwap>& swaps);

/// The four swaps S_A^(1,2) S_A^(3,4) S_B^(2,3) S_B^(4,1) (zero-based copies).
std::vector<CopySwap> m4_swaps();

/// QFI by a double loop over eigenpairs from a general (non-Hermitian)
/// eigensolver, with the same 1/2 normalization and degeneracy cutoff.
double qfi_double_loop(const ComplexMatrix& rho, const ComplexMatrix& a, double cutoff);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// (sum s^2, sum s^4) over singular values.
std::pair<double, double> singular_power_sums(const ComplexMatrix& m);

/// Random Hermitian matrix with i.i.d. Gaussian entries (not normalized).
ComplexMatrix random_hermitian(int d, GaussianSource& src);

}  // namespace entcap::verify
