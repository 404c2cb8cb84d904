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

#include "entcap/cli_io/matrix_file.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "entcap/cli_io/csv.hpp"
#include "entcap/errors.hpp"

namespace entcap::cli {

Complex parse_complex_entry(std::string_view token) {
    const std::string s(token);
    const char* begin = s.c_str();
    char* end = nullptr;
    const double re = std::strtod(begin, &end);
    if (end == begin) {
        throw InvalidInput("matrix: bad entry '" + s + "'");
    }
    if (*end == '\0') {
        return {re, 0.0};
    }
    if (*end != '+' && *end != '-') {
        throw InvalidInput("matrix: bad entry '" + s + "' (expected re+imi)");
    }
    const char* im_begin = end;
    const double im = std::strtod(im_begin, &end);
    if (end == im_begin || *end != 'i' || end[1] != '\0') {
        throw InvalidInput("matrix: bad entry '" + s + "' (expected re+imi)");
    }
    return {re, im};
}

ComplexMatrix parse_matrix(std::string_view text) {
    std::vector<std::vector<Complex>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string tok;
        std::vector<Complex> row;
        while (fields >> tok) {
            if (row.empty() && tok[0] == '#') {
                break;
            }
            try {
                row.push_back(parse_complex_entry(tok));
            } catch (const InvalidInput& e) {
                throw InvalidInput("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        if (row.empty()) {
            continue;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw InvalidInput("matrix: line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                               " entries, expected " + std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw InvalidInput("matrix: no entries");
    }
    ComplexMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInput("matrix: cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_matrix(buf.str());
    } catch (const InvalidInput& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

std::string format_matrix(const ComplexMatrix& m) {
    std::string out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) {
                out += ' ';
            }
            const double im = m(r, c).imag();
            out += format_double(m(r, c).real());
            out += std::signbit(im) ? "-" : "+";
            out += format_double(std::abs(im));
            out += 'i';
        }
        out += '\n';
    }
    return out;
}

}  // namespace entcap::cli
