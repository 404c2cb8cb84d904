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

#include "entcap/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entcap/errors.hpp"

namespace entcap {

namespace {

constexpr std::uint64_t kFixedFisherDomain = 0x6669736865720001ull;

void require_split_matches(const CriterionSpec& spec, const DensityMatrix& rho) {
    if (!(spec.split == rho.split())) {
        throw InvalidInput("detect: criterion bipartition " + std::to_string(spec.split.dim_a) +
                           "x" + std::to_string(spec.split.dim_b) +
                           " does not match the state's " + std::to_string(rho.split().dim_a) +
                           "x" + std::to_string(rho.split().dim_b));
    }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double trace_of_cube(const ComplexMatrix& m) {
    const ComplexMatrix sq = m * m;
    return sq.cwiseProduct(m.transpose()).sum().real();
}

}  // namespace

double witness_alpha(const ComplexMatrix& w) {
    const double fro = w.norm();
    if (fro == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return w.trace().real() / fro;
}

Witness::Witness(HermitianObservable observable, WitnessKind kind)
    : observable_(std::move(observable)), kind_(kind), alpha_(witness_alpha(observable_.matrix())) {
    if (kind_ != WitnessKind::custom && !(alpha_ >= 1.0 - kTolerances.alpha)) {
        throw InvalidInput("Witness: alpha = " + std::to_string(alpha_) +
                           " < 1 violates the witness necessary condition");
    }
}

Witness ppt_witness(const PureStateVector& phi, Bipartition split) {
    if (phi.dim() != split.dim()) {
        throw InvalidInput("ppt_witness: state dimension does not match the bipartition");
    }
    if (std::abs(phi.amplitudes().norm() - 1.0) > kTolerances.unit_norm) {
        throw InvalidInput("ppt_witness: state is not unit norm");
    }
    return Witness(HermitianObservable::trusted(partial_transpose(phi.projector(), Subsystem::A, split)),
                   WitnessKind::ppt_type);
}

double faithful_alpha(int d) {
    const double dd = d;
    return std::sqrt((dd - std::sqrt(dd)) / 2.0);
}

Witness faithful_witness(const PureStateVector& phi, Bipartition split) {
    if (!split.square() || phi.dim() != split.dim()) {
        throw InvalidInput("faithful_witness: requires a square bipartition matching the state");
    }
    const ComplexMatrix proj = phi.projector();
    const ComplexMatrix marginal = partial_trace(proj, Subsystem::A, split);
    const ComplexMatrix target =
        ComplexMatrix::Identity(split.dim_a, split.dim_a) / static_cast<double>(split.dim_a);
    if ((marginal - target).cwiseAbs().maxCoeff() > kTolerances.max_entangled) {
        throw InvalidInput("faithful_witness: state is not maximally entangled");
    }
    const int d = split.dim();
    ComplexMatrix w = ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)) - proj;
    return Witness(HermitianObservable::trusted(std::move(w)), WitnessKind::faithful);
}

WitnessValidity validate_witness_alpha(const HermitianObservable& w) {
    const ComplexMatrix& m = w.matrix();
    const int d = w.dim();
    WitnessValidity out;
    const double fro = m.norm();
    if (fro == 0.0) {
        out.alpha = std::numeric_limits<double>::infinity();
        out.inner_ball_value = 0.0;
        out.passes_inner_ball = true;
        return out;
    }
    const double tr = m.trace().real();
    out.alpha = tr / fro;

    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    const ComplexMatrix traceless = m - (tr / d) * id;
    const double traceless_norm = traceless.norm();
    ComplexMatrix rho0 = id / static_cast<double>(d);
    if (d > 1 && traceless_norm > 1e-14 * fro) {
        const ComplexMatrix sigma = traceless * (std::sqrt(static_cast<double>(d)) / traceless_norm);
        rho0 -= sigma / (std::sqrt(static_cast<double>(d - 1)) * d);
    }
    // Scale-free: evaluate the witness normalized to unit Frobenius norm.
    out.inner_ball_value = m.cwiseProduct(rho0.transpose()).sum().real() / fro;
    out.passes_inner_ball = out.inner_ball_value >= -kTolerances.inner_ball;
    return out;
}

WitnessValidity validate_witness_alpha(const Witness& w) {
    return validate_witness_alpha(w.observable());
}

std::string_view to_string(CriterionKind kind) {
    switch (kind) {
    case CriterionKind::ew_fixed: return "ew_fixed";
    case CriterionKind::ew_ppt: return "ew_ppt";
    case CriterionKind::ew_faithful: return "ew_faithful";
    case CriterionKind::ppt: return "ppt";
    case CriterionKind::purity: return "purity";
    case CriterionKind::fisher: return "fisher";
    case CriterionKind::m4: return "m4";
    case CriterionKind::d3opt: return "d3opt";
    }
    return "unknown";
}

std::optional<CriterionKind> criterion_kind_from_name(std::string_view name) {
    for (auto k : {CriterionKind::ew_fixed, CriterionKind::ew_ppt, CriterionKind::ew_faithful,
                   CriterionKind::ppt, CriterionKind::purity, CriterionKind::fisher,
                   CriterionKind::m4, CriterionKind::d3opt}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

void CriterionSpec::validate() const {
    if (split.dim_a < 1 || split.dim_b < 1) {
        throw InvalidInput("criterion: dimensions must be >= 1");
    }
    switch (kind) {
    case CriterionKind::ew_fixed:
        if (!witness) {
            throw InvalidInput("ew_fixed: no witness given");
        }
        if (witness->observable().dim() != split.dim()) {
            throw InvalidInput("ew_fixed: witness dimension does not match the bipartition");
        }
        break;
    case CriterionKind::ew_faithful:
        if (!split.square() || split.dim_a < 2) {
            throw InvalidInput("ew_faithful: requires d_a == d_b >= 2");
        }
        break;
    case CriterionKind::fisher:
        if (fisher_pairs < 1) {
            throw InvalidInput("fisher: pair count must be >= 1");
        }
        break;
    default:
        break;
    }
}

std::string describe(const CriterionSpec& spec) {
    std::string out(to_string(spec.kind));
    switch (spec.kind) {
    case CriterionKind::ew_fixed:
        out += ";witness=" + spec.witness_source;
        break;
    case CriterionKind::fisher:
        out += ";pairs=" + std::to_string(spec.fisher_pairs);
        out += spec.fisher_schedule == FisherSchedule::per_state ? ";schedule=per_state"
                                                                 : ";schedule=per_experiment";
        break;
    case CriterionKind::m4:
        out += spec.m4_moments == MomentOperand::centered ? ";moments=centered" : ";moments=raw";
        break;
    default:
        break;
    }
    return out;
}

DetectionOutcome detect_witness(const Witness& w, const DensityMatrix& rho) {
    const double value = expectation(w.observable(), rho);
    DetectionOutcome out;
    out.statistic = -value;
    out.threshold = 0.0;
    out.detected = out.statistic > 0.0;
    return out;
}

DetectionOutcome detect_ppt(const DensityMatrix& rho) {
    const ComplexMatrix pt = partial_transpose(rho.matrix(), Subsystem::B, rho.split());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pt, Eigen::EigenvaluesOnly);
    DetectionOutcome out;
    out.statistic = -es.eigenvalues().minCoeff();
    out.threshold = 0.0;
    out.detected = out.statistic > 0.0;
    return out;
}

DetectionOutcome detect_purity(const DensityMatrix& rho) {
    const double global = purity(rho.matrix());
    const double local = purity(partial_trace(rho.matrix(), Subsystem::A, rho.split()));
    DetectionOutcome out;
    out.statistic = global - local;
    out.threshold = local;
    out.detected = out.statistic > 0.0;
    return out;
}

double variance(const ComplexMatrix& rho, const ComplexMatrix& a) {
    const ComplexMatrix ra = rho * a;
    const double mean = ra.trace().real();
    const double second = ra.cwiseProduct(a.transpose()).sum().real();
    return second - mean * mean;
}

double qfi(const EigenSystem& eig, const ComplexMatrix& a) {
    const ComplexMatrix rotated = eig.vectors.adjoint() * a * eig.vectors;
    const Eigen::Index d = eig.values.size();
    double f = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
            const double s = eig.values(k) + eig.values(l);
            if (s < kTolerances.qfi_degenerate) {
                continue;
            }
            const double diff = eig.values(k) - eig.values(l);
            f += diff * diff / (2.0 * s) * std::norm(rotated(k, l));
        }
    }
    return f;
}

double qfi(const DensityMatrix& rho, const HermitianObservable& a) {
    if (a.dim() != rho.dim()) {
        throw InvalidInput("qfi: dimension mismatch");
    }
    return qfi(hermitian_eigensystem(rho.matrix()), a.matrix());
}

std::vector<std::pair<HermitianObservable, HermitianObservable>> fisher_observable_pairs(
    Bipartition split, int n_pairs, GaussianSource& src) {
    std::vector<std::pair<HermitianObservable, HermitianObservable>> pairs;
    pairs.reserve(n_pairs);
    for (int i = 0; i < n_pairs; ++i) {
        HermitianObservable a = gue_observable(split.dim_a, src);
        HermitianObservable b = gue_observable(split.dim_b, src);
        pairs.emplace_back(std::move(a), std::move(b));
    }
    return pairs;
}

DetectionOutcome detect_fisher(
    const DensityMatrix& rho,
    std::span<const std::pair<HermitianObservable, HermitianObservable>> pairs) {
    if (pairs.empty()) {
        throw InvalidInput("fisher: no observable pairs");
    }
    const Bipartition split = rho.split();
    const EigenSystem eig = hermitian_eigensystem(rho.matrix());
    const ComplexMatrix id_a = ComplexMatrix::Identity(split.dim_a, split.dim_a);
    const ComplexMatrix id_b = ComplexMatrix::Identity(split.dim_b, split.dim_b);

    DetectionOutcome out;
    out.statistic = -std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : pairs) {
        if (a.dim() != split.dim_a || b.dim() != split.dim_b) {
            throw InvalidInput("fisher: observable dimensions do not match the bipartition");
        }
        const ComplexMatrix a_part = kron(a.matrix(), id_b);
        const ComplexMatrix b_part = kron(id_a, b.matrix());
        const double f = qfi(eig, a_part + b_part);
        const double var = variance(rho.matrix(), a_part - b_part);
        if (f - var > out.statistic) {
            out.statistic = f - var;
            out.threshold = var;
        }
    }
    out.detected = out.statistic > 0.0;
    return out;
}

RealignmentMoments realignment_moments(const ComplexMatrix& x, Bipartition split) {
    const ComplexMatrix r = realign(x, split);
    // Work with the smaller Gram matrix; both have the same nonzero spectrum.
    const ComplexMatrix gram = r.rows() <= r.cols() ? ComplexMatrix(r * r.adjoint())
                                                    : ComplexMatrix(r.adjoint() * r);
    RealignmentMoments out;
    out.m2 = gram.trace().real();
    out.m4 = gram.squaredNorm();
    return out;
}

double e4(double m2, double m4) {
    if (m2 < 0.0 || m4 < 0.0) {
        throw InvalidMoments("e4: moments must be non-negative");
    }
    if (m2 == 0.0) {
        return 0.0;
    }
    if (m4 == 0.0) {
        throw InvalidMoments("e4: m4 = 0 with m2 > 0 is not realizable");
    }
    const double m2sq = m2 * m2;
    if (m4 > m2sq + kTolerances.moments * std::max(1.0, m2sq)) {
        throw InvalidMoments("e4: m4 exceeds m2^2");
    }
    m4 = std::min(m4, m2sq);
    const double q = std::floor(m2sq / m4);
    const double u = std::sqrt(std::max(0.0, q * (q + 1.0) * m4 - q * m2sq));
    return std::sqrt(q * (q * m2 + u) / (q + 1.0)) + std::sqrt(std::max(0.0, m2 - u) / (q + 1.0));
}

DetectionOutcome detect_m4(const DensityMatrix& rho, MomentOperand operand) {
    const Bipartition split = rho.split();
    const ComplexMatrix rho_a = partial_trace(rho.matrix(), Subsystem::A, split);
    const ComplexMatrix rho_b = partial_trace(rho.matrix(), Subsystem::B, split);
    const ComplexMatrix x =
        operand == MomentOperand::centered ? ComplexMatrix(rho.matrix() - kron(rho_a, rho_b)) : rho.matrix();
    const RealignmentMoments mom = realignment_moments(x, split);
    const double estimate = e4(mom.m2, mom.m4);
    DetectionOutcome out;
    out.threshold = std::sqrt(std::max(0.0, (1.0 - purity(rho_a)) * (1.0 - purity(rho_b))));
    out.statistic = estimate - out.threshold;
    out.detected = out.statistic > 0.0;
    return out;
}

double pt_moment3(const DensityMatrix& rho) {
    return trace_of_cube(partial_transpose(rho.matrix(), Subsystem::B, rho.split()));
}

D3OptTerms d3opt_terms(double p) {
    D3OptTerms t;
    // 1/p can land a hair below 1 for pure states; beta >= 1 always.
    t.beta = std::max(1, static_cast<int>(std::floor(1.0 / p)));
    const double beta = t.beta;
    t.radicand = beta * ((beta + 1.0) * p - 1.0);
    t.x = (beta + std::sqrt(std::max(0.0, t.radicand))) / (beta * (beta + 1.0));
    const double rest = 1.0 - beta * t.x;
    t.lhs = beta * t.x * t.x * t.x + rest * rest * rest;
    return t;
}

DetectionOutcome detect_d3opt(const DensityMatrix& rho) {
    const D3OptTerms t = d3opt_terms(purity(rho.matrix()));
    const double m3 = pt_moment3(rho);
    DetectionOutcome out;
    out.threshold = m3;
    out.statistic = t.lhs - m3;
    out.detected = out.statistic > 0.0;
    return out;
}

DetectionOutcome detect(const CriterionSpec& spec, const DensityMatrix& rho, SeedSpec seed) {
    require_split_matches(spec, rho);
    switch (spec.kind) {
    case CriterionKind::ew_fixed:
        spec.validate();
        return detect_witness(*spec.witness, rho);
    case CriterionKind::ew_ppt: {
        GaussianSource src(seed);
        return detect_witness(ppt_witness(random_pure_state(spec.split.dim(), src), spec.split), rho);
    }
    case CriterionKind::ew_faithful: {
        GaussianSource src(seed);
        const PureStateVector phi = random_max_entangled(spec.split.dim_a, spec.split.dim_b, src);
        return detect_witness(faithful_witness(phi, spec.split), rho);
    }
    case CriterionKind::ppt:
        return detect_ppt(rho);
    case CriterionKind::purity:
        return detect_purity(rho);
    case CriterionKind::fisher: {
        const SeedSpec pair_seed = spec.fisher_schedule == FisherSchedule::per_state
                                       ? seed
                                       : SeedSpec{derive_master(seed.master_seed, kFixedFisherDomain), 0};
        GaussianSource src(pair_seed);
        const auto pairs = fisher_observable_pairs(spec.split, spec.fisher_pairs, src);
        return detect_fisher(rho, pairs);
    }
    case CriterionKind::m4:
        return detect_m4(rho, spec.m4_moments);
    case CriterionKind::d3opt:
        return detect_d3opt(rho);
    }
    throw InvalidInput("detect: unknown criterion kind");
}

}  // namespace entcap
