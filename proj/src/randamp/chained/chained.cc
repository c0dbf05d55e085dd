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

#include "randamp/chained/chained.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "randamp/util/errors.h"

namespace randamp {

ChainedSettings::ChainedSettings(int n) : n_(n) {
    require(n >= 1, "chained settings need N >= 1");
    for (int i = 0; i < n; ++i) {
        terms_.push_back({a_of(i), b_of(i), false});
        if (i + 1 < n) {
            terms_.push_back({a_of(i + 1), b_of(i), false});
        }
    }
    terms_.push_back({0, 2 * n - 1, true});
}

LabelSet ChainedSettings::a_values() const {
    LabelSet out(n_);
    for (int i = 0; i < n_; ++i) {
        out[i] = a_of(i);
    }
    return out;
}

LabelSet ChainedSettings::b_values() const {
    LabelSet out(n_);
    for (int i = 0; i < n_; ++i) {
        out[i] = b_of(i);
    }
    return out;
}

std::vector<ChainTerm> ChainedSettings::terms_lexicographic() const {
    std::vector<ChainTerm> out = terms_;
    std::sort(out.begin(), out.end(), [](const ChainTerm &l, const ChainTerm &r) {
        if (l.a != r.a) return l.a < r.a;
        if (l.b != r.b) return l.b < r.b;
        return l.wrap_around < r.wrap_around;
    });
    return out;
}

bool ChainedSettings::is_neighbouring(int a, int b) const {
    return std::abs(a - b) == 1 || is_wrap_around(a, b);
}

std::vector<LabelSet> ChainedSettings::input_spaces() const {
    return {a_values(), b_values()};
}

std::vector<LabelSet> ChainedSettings::output_spaces() {
    return {{kPlus, kMinus}, {kPlus, kMinus}};
}

void ChainedSettings::check_box(const ConditionalDist &box) const {
    require(box.inputs().spaces() == input_spaces() && box.outputs().spaces() == output_spaces(),
            "box is not defined on the chained settings for N = " + std::to_string(n_));
}

double chained_value(const ConditionalDist &box, const ChainedSettings &settings) {
    settings.check_box(box);
    double total = 0;
    for (const ChainTerm &t : settings.terms()) {
        auto row = box.row(box.inputs().index_of(std::vector<Label>{t.a, t.b}));
        // Output index = 2 * (x == -1) + (y == -1).
        double same = row[0] + row[3];
        total += t.wrap_around ? same : 1.0 - same;
    }
    return total;
}

namespace {

ConditionalDist correlated_box(const ChainedSettings &s, const std::vector<double> &p_differ_by_input) {
    std::vector<double> table;
    table.reserve(p_differ_by_input.size() * 4);
    for (double d : p_differ_by_input) {
        table.insert(table.end(), {(1 - d) / 2, d / 2, d / 2, (1 - d) / 2});
    }
    return ConditionalDist(LabelGrid(s.input_spaces()), LabelGrid(ChainedSettings::output_spaces()), std::move(table));
}

}  // namespace

ConditionalDist quantum_chained_box(int n) {
    require(n >= 2, "quantum_chained_box needs N >= 2");
    ChainedSettings s(n);
    std::vector<double> p_differ;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double half_angle = std::numbers::pi * (ChainedSettings::a_of(i) - ChainedSettings::b_of(j)) / (4.0 * n);
            double sn = std::sin(half_angle);
            p_differ.push_back(sn * sn);
        }
    }
    return correlated_box(s, p_differ);
}

double quantum_closed_form(int n) {
    require(n >= 1, "quantum_closed_form needs N >= 1");
    double sn = std::sin(std::numbers::pi / (4.0 * n));
    return 2.0 * n * sn * sn;
}

ConditionalDist extremal_chained_box(int n) {
    require(n >= 2, "extremal_chained_box needs N >= 2");
    ChainedSettings s(n);
    std::vector<double> p_differ;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            int a = ChainedSettings::a_of(i), b = ChainedSettings::b_of(j);
            if (s.is_wrap_around(a, b)) {
                p_differ.push_back(1.0);
            } else if (s.is_neighbouring(a, b)) {
                p_differ.push_back(0.0);
            } else {
                p_differ.push_back(0.5);
            }
        }
    }
    return correlated_box(s, p_differ);
}

ConditionalDist DeterministicStrategy::to_box() const {
    require(x_of_a.size() == y_of_b.size() && !x_of_a.empty(), "strategy tables must both have N entries");
    ChainedSettings s(static_cast<int>(x_of_a.size()));
    auto digit = [](int v) -> std::size_t {
        require(v == kPlus || v == kMinus, "strategy outcomes must be +1 or -1");
        return v == kPlus ? 0 : 1;
    };
    std::vector<std::vector<std::size_t>> choice(2);
    for (int v : x_of_a) choice[0].push_back(digit(v));
    for (int v : y_of_b) choice[1].push_back(digit(v));
    std::vector<double> table(s.n() * s.n() * 4, 0.0);
    for (int i = 0; i < s.n(); ++i) {
        for (int j = 0; j < s.n(); ++j) {
            table[(i * s.n() + j) * 4 + 2 * choice[0][i] + choice[1][j]] = 1.0;
        }
    }
    return ConditionalDist(LabelGrid(s.input_spaces()), LabelGrid(ChainedSettings::output_spaces()), std::move(table));
}

int DeterministicStrategy::violated_terms(const ChainedSettings &settings) const {
    int count = 0;
    for (const ChainTerm &t : settings.terms()) {
        count += t.violated(x(t.a), y(t.b)) ? 1 : 0;
    }
    return count;
}

DeterministicStrategy staircase_strategy(const ChainedSettings &settings, const ChainTerm &term) {
    const auto &terms = settings.terms();
    auto it = std::find(terms.begin(), terms.end(), term);
    require(it != terms.end(), "staircase_strategy: not a chained term");
    // The terms form a cycle over the settings. Start just after the cut and walk the other 2N-1
    // terms, choosing each new outcome to satisfy the term that introduces it.
    DeterministicStrategy s{std::vector<int>(settings.n(), 0), std::vector<int>(settings.n(), 0)};
    const std::size_t count = terms.size();
    const std::size_t cut = static_cast<std::size_t>(it - terms.begin());
    auto value_of = [&](int setting) -> int & {
        return setting % 2 == 0 ? s.x_of_a[setting / 2] : s.y_of_b[(setting - 1) / 2];
    };
    // Chain order visits settings 0, 1, 2, ..., 2N-1 and closes back to 0. Term k joins setting k
    // and setting k+1 (mod 2N); the last term is the wrap-around pair.
    int start = static_cast<int>((cut + 1) % count);
    value_of(start) = kPlus;
    for (std::size_t step = 0; step + 1 < count; ++step) {
        std::size_t k = (cut + 1 + step) % count;
        const ChainTerm &t = terms[k];
        int from = static_cast<int>(k);
        int to = static_cast<int>((k + 1) % count);
        int v = value_of(from);
        value_of(to) = t.wrap_around ? -v : v;
    }
    return s;
}

ClassicalMinimum classical_min_chained(int n) {
    require(n >= 1, "classical_min_chained needs N >= 1");
    require(n <= kMaxEnumerationN, "classical_min_chained: N = " + std::to_string(n) +
                                       " is too large to enumerate (2^{2N} strategies); use the bound I_N >= 1");
    // Bit i of xs (ys) set means x(a_i) = -1 (y(b_i) = -1).
    const std::uint32_t mask = (1u << n) - 1;
    const std::uint32_t low = (n > 1) ? (1u << (n - 1)) - 1 : 0;
    int best = 1 << 30;
    std::uint32_t best_x = 0, best_y = 0;
    for (std::uint32_t xs = 0; xs <= mask; ++xs) {
        for (std::uint32_t ys = 0; ys <= mask; ++ys) {
            int count = std::popcount(xs ^ ys);                 // (a_i, b_i)
            count += std::popcount(((xs >> 1) ^ ys) & low);      // (a_{i+1}, b_i)
            count += ((xs ^ (ys >> (n - 1))) & 1) ? 0 : 1;       // (a_0, b_{N-1}) wants x != y
            if (count < best) {
                best = count;
                best_x = xs;
                best_y = ys;
            }
        }
    }
    ClassicalMinimum out;
    out.value = best;
    for (int i = 0; i < n; ++i) {
        out.argmin.x_of_a.push_back(((best_x >> i) & 1) ? kMinus : kPlus);
        out.argmin.y_of_b.push_back(((best_y >> i) & 1) ? kMinus : kPlus);
    }
    return out;
}

}  // namespace randamp
