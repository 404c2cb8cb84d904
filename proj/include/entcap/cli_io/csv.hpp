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

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entcap/capability.hpp"

namespace entcap::cli {

inline constexpr std::array<std::string_view, 14> kCsvColumns = {
    "experiment_id", "criterion", "d_a",     "d_b",      "k",           "n_samples",   "n_detected",
    "p_hat",         "ci_low",    "ci_high", "master_seed", "bound_value", "wall_time_s", "error",
};

/// %.17g, which strtod reads back to the same double.
std::string format_double(double v);

/// RFC 4180 quoting: fields containing a comma, quote or line break are
/// wrapped in quotes with inner quotes doubled.
std::string quote_field(std::string_view field);

std::string csv_header();                    // terminated by '\n'
std::string format_csv_row(const SweepRow& row);  // terminated by '\n'
std::string format_csv(std::span<const SweepRow> rows);

/// Parses a document written by format_csv. Empty numeric fields map to an
/// absent estimate (n_detected..ci_high, wall_time_s) or an absent bound.
/// Throws InvalidInput on a header mismatch or a malformed field.
std::vector<SweepRow> parse_csv(std::string_view text);

}  // namespace entcap::cli
