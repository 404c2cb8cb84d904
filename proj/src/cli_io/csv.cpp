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

#include "entcap/cli_io/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <optional>

#include "entcap/errors.hpp"

namespace entcap::cli {

namespace {

std::string format_uint(std::uint64_t v) { return std::to_string(v); }

void append_field(std::string& line, std::string_view field, bool first) {
    if (!first) {
        line += ',';
    }
    line += quote_field(field);
}

// Splits one record; `pos` advances past the record terminator.
std::vector<std::string> read_record(std::string_view text, std::size_t& pos) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    while (pos < text.size()) {
        const char c = text[pos];
        if (quoted) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field += '"';
                    pos += 2;
                    continue;
                }
                quoted = false;
            } else {
                field += c;
            }
            ++pos;
            continue;
        }
        if (c == '"') {
            quoted = true;
            ++pos;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            ++pos;
        } else if (c == '\r' || c == '\n') {
            pos += (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ? 2 : 1;
            break;
        } else {
            field += c;
            ++pos;
        }
    }
    if (quoted) {
        throw InvalidInput("csv: unterminated quoted field");
    }
    fields.push_back(std::move(field));
    return fields;
}

double to_double(const std::string& s, std::string_view column) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw InvalidInput("csv: bad number in column " + std::string(column) + ": '" + s + "'");
    }
    return v;
}

std::uint64_t to_uint(const std::string& s, std::string_view column) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || s[0] == '-' || end != s.c_str() + s.size() || errno == ERANGE) {
        throw InvalidInput("csv: bad integer in column " + std::string(column) + ": '" + s + "'");
    }
    return v;
}

int to_int(const std::string& s, std::string_view column) {
    const std::uint64_t v = to_uint(s, column);
    if (v > static_cast<std::uint64_t>(INT32_MAX)) {
        throw InvalidInput("csv: integer out of range in column " + std::string(column));
    }
    return static_cast<int>(v);
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quote_field(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_header() {
    std::string line;
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
        append_field(line, kCsvColumns[i], i == 0);
    }
    return line + '\n';
}

std::string format_csv_row(const SweepRow& row) {
    const auto& est = row.estimate;
    const std::string fields[] = {
        row.experiment_id,
        row.criterion,
        std::to_string(row.dim_a),
        std::to_string(row.dim_b),
        std::to_string(row.k),
        format_uint(row.n_samples),
        est ? format_uint(est->n_detected) : "",
        est ? format_double(est->p_hat) : "",
        est ? format_double(est->ci_low) : "",
        est ? format_double(est->ci_high) : "",
        format_uint(row.master_seed),
        est && est->bound_value ? format_double(*est->bound_value) : "",
        est ? format_double(est->wall_time_s) : "",
        row.error,
    };
    std::string line;
    for (std::size_t i = 0; i < std::size(fields); ++i) {
        append_field(line, fields[i], i == 0);
    }
    return line + '\n';
}

std::string format_csv(std::span<const SweepRow> rows) {
    std::string out = csv_header();
    for (const SweepRow& r : rows) {
        out += format_csv_row(r);
    }
    return out;
}

std::vector<SweepRow> parse_csv(std::string_view text) {
    std::size_t pos = 0;
    const std::vector<std::string> header = read_record(text, pos);
    if (header.size() != kCsvColumns.size()) {
        throw InvalidInput("csv: header has " + std::to_string(header.size()) + " columns, expected " +
                           std::to_string(kCsvColumns.size()));
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] != kCsvColumns[i]) {
            throw InvalidInput("csv: header column " + std::to_string(i + 1) + " is '" + header[i] +
                               "', expected '" + std::string(kCsvColumns[i]) + "'");
        }
    }
    std::vector<SweepRow> rows;
    std::size_t line = 1;
    while (pos < text.size()) {
        ++line;
        const std::vector<std::string> f = read_record(text, pos);
        if (f.size() == 1 && f[0].empty()) {
            continue;  // blank line
        }
        if (f.size() != kCsvColumns.size()) {
            throw InvalidInput("csv: record " + std::to_string(line) + " has " + std::to_string(f.size()) +
                               " fields");
        }
        SweepRow r;
        r.experiment_id = f[0];
        r.criterion = f[1];
        r.dim_a = to_int(f[2], kCsvColumns[2]);
        r.dim_b = to_int(f[3], kCsvColumns[3]);
        r.k = to_int(f[4], kCsvColumns[4]);
        r.n_samples = to_uint(f[5], kCsvColumns[5]);
        r.master_seed = to_uint(f[10], kCsvColumns[10]);
        r.error = f[13];
        if (!f[6].empty()) {
            CapabilityEstimate est;
            est.n_samples = r.n_samples;
            est.n_detected = to_uint(f[6], kCsvColumns[6]);
            est.p_hat = to_double(f[7], kCsvColumns[7]);
            est.ci_low = to_double(f[8], kCsvColumns[8]);
            est.ci_high = to_double(f[9], kCsvColumns[9]);
            est.seed = r.master_seed;
            if (!f[11].empty()) {
                est.bound_value = to_double(f[11], kCsvColumns[11]);
            }
            est.wall_time_s = to_double(f[12], kCsvColumns[12]);
            r.estimate = est;
        } else if (!f[7].empty() || !f[11].empty()) {
            throw InvalidInput("csv: record " + std::to_string(line) + " has values but no n_detected");
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace entcap::cli
