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

#include "entcap/quantum_core.hpp"

namespace entcap {

/// An upper bound of the form exp(prefactor_log - exponent_rate * k).
/// Values >= 1 are kept (not clamped) and flagged vacuous.
struct BoundResult {
    double value = 0.0;
    double exponent_rate = 0.0;
    double prefactor_log = 0.0;
    bool vacuous = false;
};

BoundResult make_bound(double prefactor_log, double exponent_rate, double k);

/// 2 exp(-(sqrt(1 + alpha) - 1)^2 k), alpha >= 1.
BoundResult ew_bound(double alpha, double k);

/// Union bound over n witnesses: n * ew_bound(alpha_min, k).
BoundResult ew_set_bound(double n_witnesses, double alpha_min, double k);

/// Laurent-Massart tail bound at the balanced point t1 = t2 = t, with the
/// spectrum split into positive part a and absolute negative part b:
///   sqrt(t / 2k) = (-(|a|_2 + |b|_2) + sqrt((|a|_2 + |b|_2)^2 + 2 |b|_inf tr O)) / (2 |b|_inf)
/// and value 2 exp(-t). Zero when nothing is negative.
BoundResult spectrum_bound(const Spectrum& spec, double k);

/// Unbalanced form e^{-t1} + e^{-t2} for the same spectrum: picks t1 freely,
/// solves the threshold c it implies, and returns the t2 that meets c.
/// Exposed for tests of the balanced optimum.
double spectrum_tail_pair(const Spectrum& spec, double k, double t1);

/// tr(O) / sqrt(tr(O^2)) from eigenvalues.
double spectrum_alpha(const Spectrum& spec);

inline constexpr double kDefaultEps = 0.5;

/// Parameterized witness family: 2 exp(C1 - C2 k) with
/// C1 = M ln(2 sqrt(M) l d / eps), C2 = (sqrt(1 + alpha_min - eps) - 1)^2.
BoundResult param_ew_bound(int m_params, double lipschitz, int d, double alpha_min, double k,
                           double eps = kDefaultEps);

/// Positive-map family (M = 2d, eps = 1/2): C1 = 2d ln(2^2.5 d^1.5 l).
BoundResult positive_map_bound(int d, double lipschitz, double alpha_min, double k);

/// Faithful-witness family on a square d: C1 = 3d ln 4d,
/// C2 = (sqrt(1/2 + sqrt((d - sqrt d) / 2)) - 1)^2.
BoundResult faithful_ratio_bound(int d, double k);

/// Single-copy criteria with m observables (identity appended, M = m + 1):
/// C1 = M ln(2 sqrt(M) d / eps), C2 = (sqrt(2 - eps) - 1)^2.
BoundResult single_copy_bound(int m_observables, int d, double k, double eps = kDefaultEps);

/// k at which single_copy_bound reaches 1: (C1 + ln 2) / C2.
double single_copy_threshold_k(int m_observables, int d, double eps = kDefaultEps);

/// Adaptive sign-oracle protocols with m queries: 2^(m+1) exp(-(3 - 2 sqrt 2) k).
BoundResult adaptive_bound(int m_queries, double k);

}  // namespace entcap
