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

#include "entcap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entcap/errors.hpp"

namespace entcap {

namespace {

void require_alpha(double alpha, const char* what) {
    if (!(alpha >= 1.0)) {
        throw InvalidInput(std::string(what) + ": alpha must be >= 1");
    }
}

void require_eps(double eps, const char* what) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw InvalidInput(std::string(what) + ": eps must lie in (0, 1)");
    }
}

void require_k(double k, const char* what) {
    if (!(k >= 0.0)) {
        throw InvalidInput(std::string(what) + ": k must be >= 0");
    }
}

struct SpectrumNorms {
    double a1 = 0.0, a2 = 0.0;         // positive part
    double b1 = 0.0, b2 = 0.0, binf = 0.0;  // absolute negative part
    double trace = 0.0;
};

SpectrumNorms norms_of(const Spectrum& spec) {
    SpectrumNorms n;
    for (double l : spec.eigenvalues) {
        if (l > 0.0) {
            n.a1 += l;
            n.a2 += l * l;
        } else if (l < 0.0) {
            n.b1 -= l;
            n.b2 += l * l;
            n.binf = std::max(n.binf, -l);
        }
    }
    n.a2 = std::sqrt(n.a2);
    n.b2 = std::sqrt(n.b2);
    n.trace = n.a1 - n.b1;
    return n;
}

}  // namespace

BoundResult make_bound(double prefactor_log, double exponent_rate, double k) {
    BoundResult r;
    r.prefactor_log = prefactor_log;
    r.exponent_rate = exponent_rate;
    r.value = std::exp(prefactor_log - exponent_rate * k);
    r.vacuous = r.value >= 1.0;
    return r;
}

BoundResult ew_bound(double alpha, double k) {
    require_alpha(alpha, "ew_bound");
    require_k(k, "ew_bound");
    const double s = std::sqrt(1.0 + alpha) - 1.0;
    return make_bound(std::log(2.0), s * s, k);
}

BoundResult ew_set_bound(double n_witnesses, double alpha_min, double k) {
    if (!(n_witnesses >= 1.0)) {
        throw InvalidInput("ew_set_bound: need at least one witness");
    }
    require_alpha(alpha_min, "ew_set_bound");
    require_k(k, "ew_set_bound");
    const double s = std::sqrt(1.0 + alpha_min) - 1.0;
    return make_bound(std::log(2.0 * n_witnesses), s * s, k);
}

double spectrum_alpha(const Spectrum& spec) {
    double tr = 0.0;
    double sq = 0.0;
    for (double l : spec.eigenvalues) {
        tr += l;
        sq += l * l;
    }
    return tr / std::sqrt(sq);
}

BoundResult spectrum_bound(const Spectrum& spec, double k) {
    require_k(k, "spectrum_bound");
    const SpectrumNorms n = norms_of(spec);
    if (!(n.trace > 0.0)) {
        throw InvalidInput("spectrum_bound: trace must be positive");
    }
    if (n.binf == 0.0) {
        BoundResult r;
        r.value = 0.0;
        r.exponent_rate = 0.0;
        r.prefactor_log = -std::numeric_limits<double>::infinity();
        return r;
    }
    const double sum2 = n.a2 + n.b2;
    const double s = (-sum2 + std::sqrt(sum2 * sum2 + 2.0 * n.binf * n.trace)) / (2.0 * n.binf);
    // t = 2k s^2
    return make_bound(std::log(2.0), 2.0 * s * s, k);
}

double spectrum_tail_pair(const Spectrum& spec, double k, double t1) {
    const SpectrumNorms n = norms_of(spec);
    const double root2k = std::sqrt(2.0 * k);
    const double c = 2.0 * k * n.b1 + 2.0 * root2k * n.b2 * std::sqrt(t1) + 2.0 * n.binf * t1;
    const double sqrt_t2 = (2.0 * k * n.a1 - c) / (2.0 * root2k * n.a2);
    if (sqrt_t2 <= 0.0) {
        return 0.0;
    }
    return sqrt_t2 * sqrt_t2;
}

BoundResult param_ew_bound(int m_params, double lipschitz, int d, double alpha_min, double k,
                           double eps) {
    if (m_params < 1 || d < 1) {
        throw InvalidInput("param_ew_bound: M and d must be >= 1");
    }
    if (!(lipschitz > 0.0)) {
        throw InvalidInput("param_ew_bound: Lipschitz constant must be positive");
    }
    require_alpha(alpha_min, "param_ew_bound");
    require_eps(eps, "param_ew_bound");
    require_k(k, "param_ew_bound");
    const double m = m_params;
    const double c1 = m * std::log(2.0 * std::sqrt(m) * lipschitz * d / eps);
    const double s = std::sqrt(1.0 + alpha_min - eps) - 1.0;
    return make_bound(std::log(2.0) + c1, s * s, k);
}

BoundResult positive_map_bound(int d, double lipschitz, double alpha_min, double k) {
    return param_ew_bound(2 * d, lipschitz, d, alpha_min, k, 0.5);
}

BoundResult faithful_ratio_bound(int d, double k) {
    const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(d))));
    if (d < 4 || root * root != d) {
        throw InvalidInput("faithful_ratio_bound: d must be a perfect square >= 4");
    }
    require_k(k, "faithful_ratio_bound");
    const double dd = d;
    const double c1 = 3.0 * dd * std::log(4.0 * dd);
    const double s = std::sqrt(0.5 + std::sqrt((dd - std::sqrt(dd)) / 2.0)) - 1.0;
    return make_bound(std::log(2.0) + c1, s * s, k);
}

BoundResult single_copy_bound(int m_observables, int d, double k, double eps) {
    if (m_observables < 0 || d < 1) {
        throw InvalidInput("single_copy_bound: need m >= 0 and d >= 1");
    }
    require_eps(eps, "single_copy_bound");
    require_k(k, "single_copy_bound");
    const double m = m_observables + 1;
    const double c1 = m * std::log(2.0 * std::sqrt(m) * d / eps);
    const double s = std::sqrt(2.0 - eps) - 1.0;
    return make_bound(std::log(2.0) + c1, s * s, k);
}

double single_copy_threshold_k(int m_observables, int d, double eps) {
    const BoundResult at0 = single_copy_bound(m_observables, d, 0.0, eps);
    return at0.prefactor_log / at0.exponent_rate;
}

BoundResult adaptive_bound(int m_queries, double k) {
    if (m_queries < 0) {
        throw InvalidInput("adaptive_bound: m must be >= 0");
    }
    require_k(k, "adaptive_bound");
    return make_bound((m_queries + 1) * std::log(2.0), 3.0 - 2.0 * std::sqrt(2.0), k);
}

}  // namespace entcap
