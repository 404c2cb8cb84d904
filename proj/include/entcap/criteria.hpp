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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entcap/quantum_core.hpp"
#include "entcap/sampler.hpp"

namespace entcap {

enum class WitnessKind { ppt_type, faithful, custom };

/// Hermitian observable used as an entanglement witness, with its cached
/// alpha = tr(W) / sqrt(tr(W^2)).
class Witness {
  public:
    /// For ppt_type and faithful kinds, throws if alpha < 1 - tol.alpha.
    Witness(HermitianObservable observable, WitnessKind kind);

    const HermitianObservable& observable() const { return observable_; }
    WitnessKind kind() const { return kind_; }
    double alpha() const { return alpha_; }

  private:
    HermitianObservable observable_;
    WitnessKind kind_;
    double alpha_;
};

/// tr(W) / ||W||_F; +infinity for the zero matrix.
double witness_alpha(const ComplexMatrix& w);

/// W = (|phi><phi|)^{T_A}.
Witness ppt_witness(const PureStateVector& phi, Bipartition split);

/// W = I / sqrt(d) - |Phi><Phi| for maximally entangled Phi on a square split.
Witness faithful_witness(const PureStateVector& phi, Bipartition split);

/// alpha of the faithful witness in total dimension d: sqrt((d - sqrt d) / 2).
double faithful_alpha(int d);

struct WitnessValidity {
    double alpha = 0.0;
    double inner_ball_value = 0.0;  // tr(W rho0) / ||W||_F
    bool passes_inner_ball = false;
};

/// Necessary condition for W to be a witness: W must be non-negative on
/// rho0 = I/d - sigma / (sqrt(d-1) d), where sigma is the traceless part of W
/// scaled to tr(sigma^2) = d. rho0 has purity 1/(d-1) and is therefore
/// separable. A failure proves W is not a witness; a pass proves nothing.
WitnessValidity validate_witness_alpha(const Witness& w);
WitnessValidity validate_witness_alpha(const HermitianObservable& w);

enum class CriterionKind { ew_fixed, ew_ppt, ew_faithful, ppt, purity, fisher, m4, d3opt };
enum class FisherSchedule { per_state, per_experiment };
enum class MomentOperand { centered, raw };

std::string_view to_string(CriterionKind kind);
std::optional<CriterionKind> criterion_kind_from_name(std::string_view name);

struct CriterionSpec {
    CriterionKind kind = CriterionKind::ppt;
    Bipartition split;
    std::optional<Witness> witness;  // ew_fixed
    std::string witness_source;      // how the fixed witness was built, e.g. "bell"
    int fisher_pairs = 10;
    FisherSchedule fisher_schedule = FisherSchedule::per_state;
    MomentOperand m4_moments = MomentOperand::centered;

    /// Throws InvalidInput if the payload does not fit the kind.
    void validate() const;
};

/// Canonical text form: the kind name, followed by `;key=value` for every
/// parameter the kind takes. Parsed back by the CLI layer.
std::string describe(const CriterionSpec& spec);

struct DetectionOutcome {
    bool detected = false;
    double statistic = 0.0;  // signed margin; detected <=> statistic > 0
    double threshold = 0.0;  // the separable-side bound the state is compared with
};

/// Runs one criterion on one state. `seed` drives per-sample re-randomization
/// (ew_ppt, ew_faithful, fisher) and is ignored by the other kinds.
DetectionOutcome detect(const CriterionSpec& spec, const DensityMatrix& rho, SeedSpec seed);

// Kind-specific rules, exposed for direct use and testing.
DetectionOutcome detect_witness(const Witness& w, const DensityMatrix& rho);
DetectionOutcome detect_ppt(const DensityMatrix& rho);
DetectionOutcome detect_purity(const DensityMatrix& rho);
DetectionOutcome detect_fisher(const DensityMatrix& rho,
                               std::span<const std::pair<HermitianObservable, HermitianObservable>> pairs);
DetectionOutcome detect_m4(const DensityMatrix& rho, MomentOperand operand = MomentOperand::centered);
DetectionOutcome detect_d3opt(const DensityMatrix& rho);

/// Quantum Fisher information with the 1/2 normalization:
/// F = sum_{k,l} (l_k - l_l)^2 / (2 (l_k + l_l)) |<k|A|l>|^2.
double qfi(const DensityMatrix& rho, const HermitianObservable& a);
double qfi(const EigenSystem& rho_eigs, const ComplexMatrix& a);

/// Variance <A^2> - <A>^2.
double variance(const ComplexMatrix& rho, const ComplexMatrix& a);

/// The observable pairs (A_i on A, B_i on B) used by the Fisher criterion.
std::vector<std::pair<HermitianObservable, HermitianObservable>> fisher_observable_pairs(
    Bipartition split, int n_pairs, GaussianSource& src);

struct RealignmentMoments {
    double m2 = 0.0;  // tr(R R^dagger)
    double m4 = 0.0;  // tr((R R^dagger)^2)
};

RealignmentMoments realignment_moments(const ComplexMatrix& x, Bipartition split);

/// Trace-norm lower estimate from the second and fourth singular-value
/// moments: q = floor(m2^2/m4), U = sqrt(q(q+1) m4 - q m2^2),
/// E4 = sqrt(q (q m2 + U) / (q+1)) + sqrt((m2 - U) / (q+1)).
double e4(double m2, double m4);

/// tr((rho^{T_B})^3)
double pt_moment3(const DensityMatrix& rho);

struct D3OptTerms {
    int beta = 0;
    double x = 0.0;
    double lhs = 0.0;       // beta x^3 + (1 - beta x)^3
    double radicand = 0.0;  // beta ((beta + 1) tr rho^2 - 1)
};

/// Separable-side quantities of the D3,opt criterion for a given purity.
D3OptTerms d3opt_terms(double purity);

}  // namespace entcap
