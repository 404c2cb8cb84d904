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

#include "entcap/cli_io/descriptors.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <vector>

#include "entcap/cli_io/matrix_file.hpp"
#include "entcap/errors.hpp"

namespace entcap::cli {

namespace {

std::vector<std::string_view> split_on(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = text.find(sep, start);
        parts.push_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
        if (at == std::string_view::npos) {
            return parts;
        }
        start = at + 1;
    }
}

double number(std::string_view text, std::string_view what) {
    const std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
        throw InvalidInput(std::string(what) + ": '" + s + "' is not a number");
    }
    return v;
}

int whole(std::string_view text, std::string_view what) {
    const double v = number(text, what);
    if (v != std::floor(v) || v < 0 || v > 1e9) {
        throw InvalidInput(std::string(what) + ": '" + std::string(text) + "' is not a non-negative integer");
    }
    return static_cast<int>(v);
}

}  // namespace

Witness named_witness(std::string_view source, Bipartition split, const std::string& base_dir) {
    const int d = split.dim();
    if (source == "bell") {
        const int m = std::min(split.dim_a, split.dim_b);
        if (m < 2) {
            throw InvalidInput("witness bell: needs min(d_a, d_b) >= 2");
        }
        ComplexVector phi = ComplexVector::Zero(d);
        for (int i = 0; i < m; ++i) {
            phi(i * split.dim_b + i) = 1.0 / std::sqrt(static_cast<double>(m));
        }
        return ppt_witness(PureStateVector(phi), split);
    }
    if (source == "identity") {
        const ComplexMatrix w = ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d));
        return Witness(HermitianObservable(w), WitnessKind::custom);
    }
    if (source.substr(0, 5) == "file:") {
        std::filesystem::path path(std::string(source.substr(5)));
        if (path.empty()) {
            throw InvalidInput("witness file: empty path");
        }
        if (path.is_relative() && !base_dir.empty()) {
            path = std::filesystem::path(base_dir) / path;
        }
        const ComplexMatrix w = read_matrix_file(path.string());
        if (w.rows() != d || w.cols() != d) {
            throw InvalidInput("witness file " + path.string() + ": expected a " + std::to_string(d) + "x" +
                               std::to_string(d) + " matrix");
        }
        return Witness(HermitianObservable(w), WitnessKind::custom);
    }
    throw InvalidInput("unknown witness '" + std::string(source) + "' (bell, identity, file:PATH)");
}

CriterionSpec parse_criterion(std::string_view descriptor, Bipartition split, const std::string& base_dir) {
    const std::vector<std::string_view> parts = split_on(descriptor, ';');
    const auto kind = criterion_kind_from_name(parts[0]);
    if (!kind) {
        throw InvalidInput("unknown criterion '" + std::string(parts[0]) +
                           "' (ew_fixed, ew_ppt, ew_faithful, ppt, purity, fisher, m4, d3opt)");
    }
    CriterionSpec spec;
    spec.kind = *kind;
    spec.split = split;
    std::string witness = "bell";
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const std::size_t eq = parts[i].find('=');
        if (eq == std::string_view::npos) {
            throw InvalidInput("criterion parameter '" + std::string(parts[i]) + "' is not key=value");
        }
        const std::string_view key = parts[i].substr(0, eq);
        const std::string_view value = parts[i].substr(eq + 1);
        if (spec.kind == CriterionKind::ew_fixed && key == "witness") {
            witness = std::string(value);
        } else if (spec.kind == CriterionKind::fisher && key == "pairs") {
            spec.fisher_pairs = whole(value, "fisher pairs");
        } else if (spec.kind == CriterionKind::fisher && key == "schedule") {
            if (value == "per_state") {
                spec.fisher_schedule = FisherSchedule::per_state;
            } else if (value == "per_experiment") {
                spec.fisher_schedule = FisherSchedule::per_experiment;
            } else {
                throw InvalidInput("fisher schedule must be per_state or per_experiment");
            }
        } else if (spec.kind == CriterionKind::m4 && key == "moments") {
            if (value == "centered") {
                spec.m4_moments = MomentOperand::centered;
            } else if (value == "raw") {
                spec.m4_moments = MomentOperand::raw;
            } else {
                throw InvalidInput("m4 moments must be centered or raw");
            }
        } else {
            throw InvalidInput("criterion " + std::string(parts[0]) + " takes no parameter '" + std::string(key) +
                               "'");
        }
    }
    if (spec.kind == CriterionKind::ew_fixed) {
        spec.witness = named_witness(witness, split, base_dir);
        spec.witness_source = witness;
    }
    spec.validate();
    return spec;
}

BoundSelector parse_bound_selector(std::string_view text) {
    const std::vector<std::string_view> p = split_on(text, ':');
    const std::string_view name = p[0];
    BoundSelector b;
    auto arity = [&](std::size_t lo, std::size_t hi) {
        if (p.size() - 1 < lo || p.size() - 1 > hi) {
            throw InvalidInput("bound '" + std::string(text) + "': wrong number of parameters");
        }
    };
    auto alpha_at = [&](std::size_t i) {
        const double a = number(p[i], "bound alpha");
        if (!(a >= 1.0)) {
            throw InvalidInput("bound '" + std::string(text) + "': alpha must be >= 1");
        }
        return a;
    };
    auto eps_at = [&](std::size_t i) {
        if (i >= p.size()) {
            return kDefaultEps;
        }
        const double e = number(p[i], "bound eps");
        if (!(e > 0.0 && e < 1.0)) {
            throw InvalidInput("bound '" + std::string(text) + "': eps must lie in (0, 1)");
        }
        return e;
    };
    auto positive_at = [&](std::size_t i, const char* what) {
        const double v = number(p[i], what);
        if (!(v > 0.0)) {
            throw InvalidInput("bound '" + std::string(text) + "': " + what + " must be positive");
        }
        return v;
    };
    if (name == "none") {
        arity(0, 0);
        b.type = BoundSelector::Type::none;
    } else if (name == "auto") {
        arity(0, 0);
        b.type = BoundSelector::Type::automatic;
    } else if (name == "ew") {
        arity(1, 1);
        b.type = BoundSelector::Type::ew;
        b.alpha = alpha_at(1);
    } else if (name == "ewset") {
        arity(2, 2);
        b.type = BoundSelector::Type::ewset;
        b.count = whole(p[1], "bound witness count");
        if (b.count < 1) {
            throw InvalidInput("bound ewset: witness count must be >= 1");
        }
        b.alpha = alpha_at(2);
    } else if (name == "spectrum") {
        arity(0, 0);
        b.type = BoundSelector::Type::spectrum;
    } else if (name == "param") {
        arity(3, 4);
        b.type = BoundSelector::Type::param;
        b.count = whole(p[1], "bound parameter count");
        if (b.count < 1) {
            throw InvalidInput("bound param: M must be >= 1");
        }
        b.lipschitz = positive_at(2, "Lipschitz constant");
        b.alpha = alpha_at(3);
        b.eps = eps_at(4);
    } else if (name == "posmap") {
        arity(2, 2);
        b.type = BoundSelector::Type::posmap;
        b.lipschitz = positive_at(1, "Lipschitz constant");
        b.alpha = alpha_at(2);
    } else if (name == "faithful") {
        arity(0, 0);
        b.type = BoundSelector::Type::faithful;
    } else if (name == "singlecopy") {
        arity(1, 2);
        b.type = BoundSelector::Type::singlecopy;
        b.count = whole(p[1], "bound observable count");
        b.eps = eps_at(2);
    } else if (name == "adaptive") {
        arity(1, 1);
        b.type = BoundSelector::Type::adaptive;
        b.count = whole(p[1], "bound query count");
    } else {
        throw InvalidInput("unknown bound '" + std::string(text) +
                           "' (none, auto, ew, ewset, spectrum, param, posmap, faithful, singlecopy, adaptive)");
    }
    return b;
}

CiMethod parse_ci_method(std::string_view text) {
    if (text == "wilson") {
        return CiMethod::wilson;
    }
    if (text == "exact_small") {
        return CiMethod::exact_small;
    }
    throw InvalidInput("ci method must be wilson or exact_small");
}

}  // namespace entcap::cli
