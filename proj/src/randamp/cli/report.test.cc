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
#include <limits>
#include <sstream>

#include "gtest/gtest.h"

using namespace randamp;

TEST(report, rejects_ragged_rows) {
    Report r({"a", "b"});
    ASSERT_THROW(r.add_row({std::int64_t{1}}), std::invalid_argument);
    r.add_row({std::int64_t{1}, 2.5});
    ASSERT_EQ(r.rows().size(), 1u);
}

TEST(report, cell_formatting) {
    ASSERT_EQ(format_cell(std::monostate{}), "");
    ASSERT_EQ(format_cell(std::int64_t{-7}), "-7");
    ASSERT_EQ(format_cell(0.1), "0.1");
    ASSERT_EQ(format_cell(1.0 / 3), "0.333333333333");
    ASSERT_EQ(format_cell(std::numeric_limits<double>::quiet_NaN()), "nan");
    ASSERT_EQ(format_cell(-std::numeric_limits<double>::infinity()), "-inf");
    ASSERT_EQ(format_cell(true), "true");
    ASSERT_EQ(format_cell(std::string("x")), "x");
    ASSERT_EQ(format_cell(optional_cell(std::optional<int>{})), "");
    ASSERT_EQ(format_cell(optional_cell(std::optional<std::size_t>{4})), "4");
}

TEST(report, csv_quotes_when_needed) {
    Report r({"name", "value"});
    r.add_row({std::string("a,b"), std::int64_t{1}});
    r.add_row({std::string("say \"hi\""), std::monostate{}});
    ASSERT_EQ(to_csv(r), "name,value\n\"a,b\",1\n\"say \"\"hi\"\"\",\n");
}

TEST(report, empty_report_keeps_header) {
    Report r({"x", "y"});
    ASSERT_EQ(to_csv(r), "x,y\n");
    ASSERT_EQ(render(r, Format::json), "[]\n");
}

TEST(report, json_types_and_order) {
    Report r({"z", "a", "flag", "missing", "bad"});
    r.add_row({std::int64_t{3}, 0.25, false, std::monostate{}, std::numeric_limits<double>::infinity()});
    auto j = report_to_json(r);
    ASSERT_EQ(j.size(), 1u);
    auto it = j[0].begin();
    ASSERT_EQ(it.key(), "z");
    ASSERT_EQ(j[0]["z"], 3);
    ASSERT_EQ(j[0]["a"].get<double>(), 0.25);
    ASSERT_EQ(j[0]["flag"], false);
    ASSERT_TRUE(j[0]["missing"].is_null());
    ASSERT_EQ(j[0]["bad"], "inf");
    // Reals carry the same 12 significant digits as the CSV form.
    Report third({"v"});
    third.add_row({1.0 / 3});
    ASSERT_EQ(report_to_json(third)[0]["v"].get<double>(), 0.333333333333);
}

TEST(report, parse_format_and_emit) {
    ASSERT_EQ(parse_format("csv"), Format::csv);
    ASSERT_EQ(parse_format("json"), Format::json);
    ASSERT_THROW(parse_format("xml"), std::invalid_argument);
    Report r({"k"});
    r.add_row({std::int64_t{1}});
    std::ostringstream console;
    emit_report(r, Format::csv, "-", console);
    ASSERT_EQ(console.str(), "k\n1\n");
    ASSERT_THROW(emit_report(r, Format::csv, "/nonexistent-dir/out.csv", console), OutputError);
}
