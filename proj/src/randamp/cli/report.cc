// Copyright 2026 The randamp Authors
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

#include "randamp/cli/report.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace randamp {

Report::Report(std::vector<std::string> columns) : columns_(std::move(columns)) {
}

void Report::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) {
        throw std::invalid_argument("report row has " + std::to_string(row.size()) + " cells, expected " +
                                    std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(row));
}

Format parse_format(const std::string &name) {
    if (name == "csv") {
        return Format::csv;
    }
    if (name == "json") {
        return Format::json;
    }
    throw std::invalid_argument("unknown format: " + name);
}

namespace {

std::string format_real(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string format_cell(const Cell &cell) {
    struct Visitor {
        std::string operator()(std::monostate) const {
            return {};
        }
        std::string operator()(std::int64_t v) const {
            return std::to_string(v);
        }
        std::string operator()(double v) const {
            return format_real(v);
        }
        std::string operator()(const std::string &v) const {
            return v;
        }
        std::string operator()(bool v) const {
            return v ? "true" : "false";
        }
    };
    return std::visit(Visitor{}, cell);
}

std::string to_csv(const Report &report) {
    std::string out;
    for (std::size_t i = 0; i < report.columns().size(); ++i) {
        out += (i ? "," : "") + csv_escape(report.columns()[i]);
    }
    out += "\n";
    for (const auto &row : report.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + csv_escape(format_cell(row[i]));
        }
        out += "\n";
    }
    return out;
}

nlohmann::ordered_json report_to_json(const Report &report) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto &row : report.rows()) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const std::string &key = report.columns()[i];
            const Cell &c = row[i];
            if (std::holds_alternative<std::monostate>(c)) {
                obj[key] = nullptr;
            } else if (auto v = std::get_if<std::int64_t>(&c)) {
                obj[key] = *v;
            } else if (auto d = std::get_if<double>(&c)) {
                if (std::isfinite(*d)) {
                    obj[key] = std::stod(format_real(*d));
                } else {
                    obj[key] = format_real(*d);
                }
            } else if (auto s = std::get_if<std::string>(&c)) {
                obj[key] = *s;
            } else {
                obj[key] = std::get<bool>(c);
            }
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

std::string render(const Report &report, Format format) {
    if (format == Format::csv) {
        return to_csv(report);
    }
    return report_to_json(report).dump(2) + "\n";
}

void emit_report(const Report &report, Format format, const std::string &path, std::ostream &console) {
    std::string text = render(report, format);
    if (path.empty() || path == "-") {
        console << text << std::flush;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw OutputError("cannot open output file: " + path);
    }
    file << text;
    file.close();
    if (!file) {
        throw OutputError("failed writing output file: " + path);
    }
}

}  // namespace randamp
