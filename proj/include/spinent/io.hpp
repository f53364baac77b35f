// Copyright 2026 The spinent Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file io.hpp
 * Text formats: susceptibility datasets, report tables with `# key=value`
 * metadata, temperature grids.
 *
 * Dataset files:
 *   # field_Oe=100
 *   temperature_K,chi_muB_per_FU_Oe[,sigma]
 *   300,2.34e-7
 * Lines starting with '#' are comments. Numbers use '.' as the decimal
 * point regardless of locale.
 */
#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "error.hpp"
#include "suscept_fit.hpp"

namespace spinent::io {

inline constexpr std::string_view dataset_header = "temperature_K,chi_muB_per_FU_Oe";
inline constexpr std::string_view dataset_header_sigma =
    "temperature_K,chi_muB_per_FU_Oe,sigma";
inline constexpr std::string_view report_header_prefix = "temperature_K,chi_model";

/// 17 significant digits: parses back bit-for-bit.
inline std::string format_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Scientific, 12 significant digits.
inline std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

/// 64-bit FNV-1a of the raw bytes, recorded in report metadata.
inline std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
    out << content;
    if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

/// Parsed text table: `# key=value` metadata, one header line, numeric rows.
struct Table {
    std::map<std::string, std::string, std::less<>> meta;
    std::string header;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> row_lines; ///< 1-based source line of each row

    [[nodiscard]] std::optional<std::size_t> column(std::string_view name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return i;
        return std::nullopt;
    }

    [[nodiscard]] std::optional<double> meta_number(std::string_view key) const {
        const auto it = meta.find(key);
        if (it == meta.end()) return std::nullopt;
        return parse_double(it->second);
    }
};

inline Table parse_table(std::string_view text) {
    Table t;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::string_view body = trim(line.substr(1));
            const auto eq = body.find('=');
            if (eq != std::string_view::npos) {
                t.meta.insert_or_assign(std::string(trim(body.substr(0, eq))),
                                        std::string(trim(body.substr(eq + 1))));
            }
            continue;
        }
        if (t.header.empty()) {
            t.header = std::string(line);
            for (auto c : split(line, ',')) t.columns.emplace_back(trim(c));
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != t.columns.size()) {
            throw Error(ErrorKind::MalformedRow,
                        "line " + std::to_string(line_no) + ": expected " +
                            std::to_string(t.columns.size()) + " fields",
                        line_no);
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (auto c : cells) {
            const auto v = parse_double(c);
            if (!v || !std::isfinite(*v)) {
                throw Error(ErrorKind::MalformedRow,
                            "line " + std::to_string(line_no) + ": bad number '" +
                                std::string(trim(c)) + "'",
                            line_no);
            }
            row.push_back(*v);
        }
        t.rows.push_back(std::move(row));
        t.row_lines.push_back(line_no);
    }
    return t;
}

inline bool is_dataset_header(std::string_view header) {
    return header == dataset_header || header == dataset_header_sigma;
}

/// Dataset from an already parsed table; the header must be exactly
/// `temperature_K,chi_muB_per_FU_Oe` with an optional `,sigma`.
inline SusceptibilityDataset dataset_from_table(const Table &t) {
    if (t.header.empty() && t.rows.empty()) {
        throw Error(ErrorKind::EmptyDataset, "no header and no data rows");
    }
    if (!is_dataset_header(t.header)) {
        throw Error(ErrorKind::MalformedRow,
                    "unexpected header '" + t.header + "'", 0);
    }
    SusceptibilityDataset d;
    if (auto f = t.meta_number("field_Oe")) d.applied_field_oe = *f;
    if (auto it = t.meta.find("label"); it != t.meta.end()) d.label = it->second;
    const bool sigma = t.columns.size() == 3;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto &row = t.rows[i];
        if (!(row[0] > 0.0)) {
            throw Error(ErrorKind::NonPositiveTemperature,
                        "line " + std::to_string(t.row_lines[i]) +
                            ": temperature must be > 0",
                        t.row_lines[i]);
        }
        ChiPoint p{row[0], row[1], std::nullopt};
        if (sigma) {
            if (!(row[2] > 0.0)) {
                throw Error(ErrorKind::MalformedRow,
                            "line " + std::to_string(t.row_lines[i]) + ": sigma must be > 0",
                            t.row_lines[i]);
            }
            p.sigma = row[2];
        }
        d.points.push_back(p);
    }
    if (d.points.empty()) throw Error(ErrorKind::EmptyDataset, "dataset has no rows");
    return d;
}

inline SusceptibilityDataset parse_dataset_text(std::string_view text) {
    return dataset_from_table(parse_table(text));
}

inline SusceptibilityDataset parse_dataset(const std::string &path) {
    return parse_dataset_text(read_file(path));
}

/// Dataset table (header + rows) without metadata lines.
inline std::string dataset_table_text(const SusceptibilityDataset &d) {
    const bool sigma = d.has_sigma();
    std::string out(sigma ? dataset_header_sigma : dataset_header);
    out += '\n';
    for (const auto &p : d.points) {
        out += format_exact(p.temperature);
        out += ',';
        out += format_exact(p.chi);
        if (sigma) {
            out += ',';
            out += format_exact(*p.sigma);
        }
        out += '\n';
    }
    return out;
}

inline std::string dataset_text(const SusceptibilityDataset &d) {
    std::string out = "# field_Oe=" + format_exact(d.applied_field_oe) + "\n";
    if (!d.label.empty()) out += "# label=" + d.label + "\n";
    return out + dataset_table_text(d);
}

inline void write_dataset(const std::string &path, const SusceptibilityDataset &d) {
    write_file(path, dataset_text(d));
}

/// Temperature grid `min:max:count[:log|:lin]`.
struct GridSpec {
    double min_k = 2.0;
    double max_k = 700.0;
    std::size_t count = 200;
    bool log = true;

    static GridSpec parse(std::string_view text) {
        const auto parts = split(text, ':');
        if (parts.size() < 3 || parts.size() > 4) {
            throw Error(ErrorKind::InvalidParams,
                        "grid must be min:max:count[:log], got '" + std::string(text) + "'");
        }
        GridSpec g;
        const auto lo = parse_double(parts[0]);
        const auto hi = parse_double(parts[1]);
        const auto n = parse_double(parts[2]);
        if (!lo || !hi || !n || *n != std::floor(*n)) {
            throw Error(ErrorKind::InvalidParams, "grid fields must be numbers");
        }
        g.min_k = *lo;
        g.max_k = *hi;
        g.count = *n < 0 ? 0 : static_cast<std::size_t>(*n);
        g.log = false;
        if (parts.size() == 4) {
            if (parts[3] == "log") g.log = true;
            else if (parts[3] != "lin") {
                throw Error(ErrorKind::InvalidParams, "grid spacing must be 'log' or 'lin'");
            }
        }
        g.validate();
        return g;
    }

    void validate() const {
        if (!(min_k > 0.0) || !(min_k < max_k) || count < 2 || !std::isfinite(max_k)) {
            throw Error(ErrorKind::InvalidParams, "grid needs 0 < min < max and count >= 2");
        }
    }

    [[nodiscard]] std::vector<double> values() const {
        validate();
        std::vector<double> t(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double f = static_cast<double>(i) / static_cast<double>(count - 1);
            t[i] = log ? min_k * std::pow(max_k / min_k, f) : min_k + f * (max_k - min_k);
        }
        t.front() = min_k;
        t.back() = max_k;
        return t;
    }

    [[nodiscard]] std::string to_string() const {
        return format_exact(min_k) + ":" + format_exact(max_k) + ":" +
               std::to_string(count) + (log ? ":log" : ":lin");
    }
};

} // namespace spinent::io
