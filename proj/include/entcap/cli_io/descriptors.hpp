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
#include <string_view>

#include "entcap/capability.hpp"
#include "entcap/criteria.hpp"

namespace entcap::cli {

/// Fixed witness by name: `bell` (PPT witness of the maximally entangled
/// state on the min(d_a, d_b) diagonal), `identity` (I / sqrt d) or
/// `file:PATH`. Relative paths resolve against `base_dir` when it is nonempty.
Witness named_witness(std::string_view source, Bipartition split, const std::string& base_dir = "");

/// `name[;key=value]...`, the inverse of describe(). Keys:
///   ew_fixed: witness=bell|identity|file:PATH (default bell)
///   fisher:   pairs=N, schedule=per_state|per_experiment
///   m4:       moments=centered|raw
/// Throws InvalidInput naming the offending part.
CriterionSpec parse_criterion(std::string_view descriptor, Bipartition split,
                              const std::string& base_dir = "");

/// none | auto | ew:ALPHA | ewset:N:ALPHA | spectrum | param:M:L:ALPHA[:EPS]
/// | posmap:L:ALPHA | faithful | singlecopy:M[:EPS] | adaptive:M
BoundSelector parse_bound_selector(std::string_view text);

CiMethod parse_ci_method(std::string_view text);

}  // namespace entcap::cli
