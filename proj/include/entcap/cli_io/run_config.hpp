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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "entcap/capability.hpp"
#include "entcap/errors.hpp"

namespace entcap::cli {

// Config grammar, one statement per line:
//   # comment            (also after a value)
//   [section-name]       starts a sweep section; the name becomes experiment_id
//   key = value
// Keys: criterion, d_a, d_b, k, n_samples, master_seed, ci_level, ci_method,
// bound, output, witness, fisher_pairs, fisher_schedule, m4_moments_on.
// k takes `a:b` (inclusive range) or a comma list, strictly ascending.
// Required per section: criterion, d_a, d_b, k, output.

class ConfigError : public InvalidInput {
  public:
    using InvalidInput::InvalidInput;
};

struct SweepSection {
    std::string name;
    int line = 0;  // line of the section header
    CriterionSpec criterion;
    int dim_a = 0;
    int dim_b = 0;
    std::vector<int> ks;
    std::uint64_t n_samples = 100000;
    std::uint64_t master_seed = 0;
    double ci_level = 0.95;
    CiMethod ci_method = CiMethod::wilson;
    BoundSelector bound;
    std::string output;

    std::vector<EstimateConfig> grid() const;
};

struct RunConfig {
    std::vector<SweepSection> sections;
};

/// `origin` prefixes diagnostics ("origin:line: ..."); `base_dir` resolves
/// witness files. Throws ConfigError.
RunConfig parse_run_config(std::string_view text, const std::string& origin,
                           const std::string& base_dir = "");
RunConfig load_run_config(const std::string& path);

/// `a:b` or `a,b,c`; throws InvalidInput unless nonempty, >= 1 and strictly ascending.
std::vector<int> parse_k_list(std::string_view text);

}  // namespace entcap::cli
