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

#include "entcap/cli_io/run_config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "entcap/cli_io/descriptors.hpp"

namespace entcap::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::uint64_t parse_uint(std::string_view text, const char* what) {
    const std::string s(text);
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || s[0] == '-' || end != s.c_str() + s.size() || errno == ERANGE) {
        throw InvalidInput(std::string(what) + ": '" + s + "' is not a non-negative integer");
    }
    return v;
}

int parse_dim(std::string_view text, const char* what) {
    const std::uint64_t v = parse_uint(text, what);
    if (v < 1 || v > 64) {
        throw InvalidInput(std::string(what) + " must lie in [1, 64]");
    }
    return static_cast<int>(v);
}

double parse_real(std::string_view text, const char* what) {
    const std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw InvalidInput(std::string(what) + ": '" + s + "' is not a number");
    }
    return v;
}

struct Entry {
    std::string value;
    int line = 0;
};

// Raw key/value pairs of one section, before interpretation.
struct RawSection {
    std::string name;
    int line = 0;
    std::map<std::string, Entry> entries;
};

const char* const kKeys[] = {
    "criterion",   "d_a",     "d_b",    "k",       "n_samples",    "master_seed",     "ci_level",
    "ci_method",   "bound",   "output", "witness", "fisher_pairs", "fisher_schedule", "m4_moments_on",
};

bool known_key(std::string_view key) {
    for (const char* k : kKeys) {
        if (key == k) {
            return true;
        }
    }
    return false;
}

class Diagnostics {
  public:
    explicit Diagnostics(const std::string& origin) : origin_(origin) {}

    [[noreturn]] void fail(int line, const std::string& section, const std::string& msg) const {
        std::string text = origin_ + ":" + std::to_string(line) + ": ";
        if (!section.empty()) {
            text += "[" + section + "] ";
        }
        throw ConfigError(text + msg);
    }

  private:
    std::string origin_;
};

SweepSection interpret(const RawSection& raw, const Diagnostics& diag, const std::string& base_dir) {
    for (const char* required : {"criterion", "d_a", "d_b", "k", "output"}) {
        if (!raw.entries.count(required)) {
            diag.fail(raw.line, raw.name, std::string("missing required key '") + required + "'");
        }
    }
    SweepSection s;
    s.name = raw.name;
    s.line = raw.line;
    const auto at = [&](const char* key) -> const Entry& { return raw.entries.at(key); };
    const auto guarded = [&](const char* key, auto&& body) {
        const auto it = raw.entries.find(key);
        if (it == raw.entries.end()) {
            return;
        }
        try {
            body(it->second.value);
        } catch (const InvalidInput& e) {
            diag.fail(it->second.line, raw.name, e.what());
        }
    };

    guarded("d_a", [&](const std::string& v) { s.dim_a = parse_dim(v, "d_a"); });
    guarded("d_b", [&](const std::string& v) { s.dim_b = parse_dim(v, "d_b"); });
    guarded("k", [&](const std::string& v) { s.ks = parse_k_list(v); });
    guarded("n_samples", [&](const std::string& v) { s.n_samples = parse_uint(v, "n_samples"); });
    guarded("master_seed", [&](const std::string& v) { s.master_seed = parse_uint(v, "master_seed"); });
    guarded("ci_level", [&](const std::string& v) {
        s.ci_level = parse_real(v, "ci_level");
        if (!(s.ci_level > 0.0 && s.ci_level < 1.0)) {
            throw InvalidInput("ci_level must lie in (0, 1)");
        }
    });
    guarded("ci_method", [&](const std::string& v) { s.ci_method = parse_ci_method(v); });
    guarded("bound", [&](const std::string& v) { s.bound = parse_bound_selector(v); });
    guarded("output", [&](const std::string& v) {
        if (v.empty()) {
            throw InvalidInput("output path is empty");
        }
        s.output = v;
    });
    if (s.n_samples < 100) {
        diag.fail(at("n_samples").line, raw.name, "n_samples must be >= 100");
    }

    // Criterion parameters given as separate keys are folded into the descriptor.
    std::string descriptor = at("criterion").value;
    const std::pair<const char*, const char*> folded[] = {
        {"witness", "witness"},
        {"fisher_pairs", "pairs"},
        {"fisher_schedule", "schedule"},
        {"m4_moments_on", "moments"},
    };
    int descriptor_line = at("criterion").line;
    for (const auto& [key, param] : folded) {
        if (const auto it = raw.entries.find(key); it != raw.entries.end()) {
            descriptor += std::string(";") + param + "=" + it->second.value;
            descriptor_line = std::max(descriptor_line, it->second.line);
        }
    }
    try {
        s.criterion = parse_criterion(descriptor, Bipartition{s.dim_a, s.dim_b}, base_dir);
    } catch (const InvalidInput& e) {
        // Blame the criterion line for a bad name, the last folded key otherwise.
        const std::string& name = at("criterion").value;
        const bool known = criterion_kind_from_name(std::string_view(name).substr(0, name.find(';'))).has_value();
        diag.fail(known ? descriptor_line : at("criterion").line, raw.name, e.what());
    }
    return s;
}

}  // namespace

std::vector<EstimateConfig> SweepSection::grid() const {
    std::vector<EstimateConfig> out;
    out.reserve(ks.size());
    for (int k : ks) {
        EstimateConfig cfg;
        cfg.criterion = criterion;
        cfg.dim_a = dim_a;
        cfg.dim_b = dim_b;
        cfg.k = k;
        cfg.n_samples = n_samples;
        cfg.master_seed = master_seed;
        cfg.ci_level = ci_level;
        cfg.ci_method = ci_method;
        out.push_back(std::move(cfg));
    }
    return out;
}

std::vector<int> parse_k_list(std::string_view text) {
    std::vector<int> ks;
    text = trim(text);
    if (const std::size_t colon = text.find(':'); colon != std::string_view::npos) {
        const std::uint64_t a = parse_uint(trim(text.substr(0, colon)), "k range start");
        const std::uint64_t b = parse_uint(trim(text.substr(colon + 1)), "k range end");
        if (a < 1 || b < a || b > 1000000) {
            throw InvalidInput("k range must satisfy 1 <= a <= b");
        }
        for (std::uint64_t k = a; k <= b; ++k) {
            ks.push_back(static_cast<int>(k));
        }
        return ks;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string_view item =
            trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        const std::uint64_t k = parse_uint(item, "k");
        if (k < 1 || k > 1000000) {
            throw InvalidInput("k values must lie in [1, 1000000]");
        }
        if (!ks.empty() && static_cast<int>(k) <= ks.back()) {
            throw InvalidInput("k list must be strictly ascending");
        }
        ks.push_back(static_cast<int>(k));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return ks;
}

RunConfig parse_run_config(std::string_view text, const std::string& origin, const std::string& base_dir) {
    const Diagnostics diag(origin);
    std::vector<RawSection> raws;
    std::istringstream in{std::string(text)};
    std::string line_buf;
    int line = 0;
    while (std::getline(in, line_buf)) {
        ++line;
        std::string_view l = line_buf;
        if (const std::size_t hash = l.find('#'); hash != std::string_view::npos) {
            l = l.substr(0, hash);
        }
        l = trim(l);
        if (l.empty()) {
            continue;
        }
        if (l.front() == '[') {
            if (l.back() != ']') {
                diag.fail(line, "", "malformed section header");
            }
            const std::string name(trim(l.substr(1, l.size() - 2)));
            if (name.empty()) {
                diag.fail(line, "", "empty section name");
            }
            for (const RawSection& r : raws) {
                if (r.name == name) {
                    diag.fail(line, name, "duplicate section (first at line " + std::to_string(r.line) + ")");
                }
            }
            raws.push_back(RawSection{name, line, {}});
            continue;
        }
        const std::size_t eq = l.find('=');
        if (eq == std::string_view::npos) {
            diag.fail(line, raws.empty() ? "" : raws.back().name, "expected 'key = value' or '[section]'");
        }
        if (raws.empty()) {
            diag.fail(line, "", "key outside of any section");
        }
        RawSection& sec = raws.back();
        const std::string key(trim(l.substr(0, eq)));
        const std::string value(trim(l.substr(eq + 1)));
        if (!known_key(key)) {
            diag.fail(line, sec.name, "unknown key '" + key + "'");
        }
        if (sec.entries.count(key)) {
            diag.fail(line, sec.name, "duplicate key '" + key + "'");
        }
        sec.entries[key] = Entry{value, line};
    }
    if (raws.empty()) {
        diag.fail(line, "", "no sections");
    }
    RunConfig cfg;
    for (const RawSection& raw : raws) {
        cfg.sections.push_back(interpret(raw, diag, base_dir));
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open config");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string base = std::filesystem::path(path).parent_path().string();
    return parse_run_config(buf.str(), path, base);
}

}  // namespace entcap::cli
