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

#include "entcap/quantum_core.hpp"

namespace entcap::cli {

// Plain-text complex matrix: one row per line, entries separated by
// whitespace, each written `re+imi` or `re-imi` (a bare real is accepted).
// Blank lines and lines starting with '#' are skipped.

Complex parse_complex_entry(std::string_view token);
ComplexMatrix parse_matrix(std::string_view text);
ComplexMatrix read_matrix_file(const std::string& path);
std::string format_matrix(const ComplexMatrix& m);

}  // namespace entcap::cli
