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

#ifndef RANDAMP_CLI_REPORT_H
#define RANDAMP_CLI_REPORT_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace randamp {

/// Empty, integer, real, text or boolean.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

template <typename T>
Cell optional_cell(const std::optional<T> &v) {
    if (!v) {
        return std::monostate{};
    }
    if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
        return static_cast<std::int64_t>(*v);
    } else {
        return *v;
    }
}

class Report {
   public:
    explicit Report(std::vector<std::string> columns);

    const std::vector<std::string> &columns() const {
        return columns_;
    }
    const std::vector<std::vector<Cell>> &rows() const {
        return rows_;
    }
    /// Throws std::invalid_argument when the row width differs from the header.
    void add_row(std::vector<Cell> row);

   private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

enum class Format { csv, json };

Format parse_format(const std::string &name);

/// Reals use 12 significant digits; booleans are true/false; empty cells are blank.
std::string format_cell(const Cell &cell);

std::string to_csv(const Report &report);

/// Array of objects in column order. Reals carry the same 12-digit value as the CSV;
/// non-finite reals become strings.
nlohmann::ordered_json report_to_json(const Report &report);

std::string render(const Report &report, Format format);

class OutputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Writes to the path, or to `console` when the path is empty or "-". Throws OutputError.
void emit_report(const Report &report, Format format, const std::string &path, std::ostream &console);

}  // namespace randamp

#endif
