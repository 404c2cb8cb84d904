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

#include <string>
#include <vector>

#include "entcap/tolerances.hpp"

namespace entcap::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // worst deviation or the first failure
    double seconds = 0.0;
};

// Fast invariant checks. Each one draws its inputs from fixed seeds, so a
// failure reproduces exactly.

CheckResult check_multicopy_m4(const Tolerances& tol);
CheckResult check_index_oracles(const Tolerances& tol);
CheckResult check_qfi_oracle(const Tolerances& tol);
CheckResult check_e4_trace_norm(const Tolerances& tol);
CheckResult check_witness_validity(const Tolerances& tol);
CheckResult check_bound_arithmetic(const Tolerances& tol);
CheckResult check_determinism(const Tolerances& tol);

/// All of the above, in that order.
std::vector<CheckResult> run_fast_checks(const Tolerances& tol);

}  // namespace entcap::verify
