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

namespace entcap {

/// Numerical tolerances shared by every module. Library code reads
/// `kTolerances`; the self-test takes a record by value so a corrupted copy
/// can be injected.
struct Tolerances {
    double hermitian = 1e-12;        // max |m(r,c) - conj(m(c,r))|
    double trace = 1e-12;            // |tr rho - 1|
    double psd = 1e-10;              // minimum eigenvalue >= -psd
    double unit_norm = 1e-12;        // | ||psi|| - 1 |
    double reconstruction = 1e-10;   // Frobenius error of U diag(l) U^dagger
    double imag_expectation = 1e-10; // |Im tr(O rho)|
    double alpha = 1e-9;             // witness alpha checks
    double max_entangled = 1e-8;     // marginal of a maximally entangled state vs I/d
    double qfi_degenerate = 1e-12;   // skip eigenpairs with l_k + l_l below this
    double inner_ball = 1e-10;       // tr(W rho0) >= -inner_ball
    double moments = 1e-12;          // m4 <= m2^2 + moments
    double index_oracle = 1e-12;     // index-permutation oracles
    double multicopy_oracle = 1e-9;  // permutation-operator vs realignment moment
    double qfi_oracle = 1e-10;       // QFI vs double-loop oracle
    double trace_norm_oracle = 1e-9; // E4 vs trace norm
    double bound_relative = 1e-6;    // bound arithmetic vs frozen high-precision values
};

inline constexpr Tolerances kTolerances{};

}  // namespace entcap
