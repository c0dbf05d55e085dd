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

#include <cmath>
#include <array>
#include <numbers>

#include "gtest/gtest.h"

#include "randamp/dist/no_signalling.h"
#include "randamp/util/errors.h"

using namespace randamp;

namespace {

// P(x, y | a, b) for the state (|00> + |11>)/sqrt 2, measured in the basis
// {cos(t/2)|0> + sin(t/2)|1>, sin(t/2)|0> - cos(t/2)|1>} with t = pi * setting / 2N.
double amplitude_oracle(int n, int a, int b, int x, int y) {
    auto basis = [n](int setting, int outcome) {
        double t = std::numbers::pi * setting / (2.0 * n);
        if (outcome == kPlus) {
            return std::array<double, 2>{std::cos(t / 2), std::sin(t / 2)};
        }
        return std::array<double, 2>{std::sin(t / 2), -std::cos(t / 2)};
    };
    auto u = basis(a, x);
    auto v = basis(b, y);
    double amp = (u[0] * v[0] + u[1] * v[1]) / std::numbers::sqrt2;
    return amp * amp;
}

}  // namespace

TEST(chained_settings, term_order_and_neighbours) {
    ChainedSettings s(3);
    std::vector<ChainTerm> expected = {{0, 1, false}, {2, 1, false}, {2, 3, false},
                                       {4, 3, false}, {4, 5, false}, {0, 5, true}};
    ASSERT_EQ(s.terms(), expected);
    ASSERT_TRUE(s.is_neighbouring(0, 5));
    ASSERT_TRUE(s.is_neighbouring(4, 3));
    ASSERT_FALSE(s.is_neighbouring(0, 3));
    auto lex = s.terms_lexicographic();
    ASSERT_EQ(lex.size(), 6u);
    ASSERT_EQ(lex[0], (ChainTerm{0, 1, false}));
    ASSERT_EQ(lex[1], (ChainTerm{0, 5, true}));
    ASSERT_EQ(lex[2], (ChainTerm{2, 1, false}));
}

TEST(quantum_chained_box, matches_amplitude_oracle) {
    for (int n : {2, 3, 4, 8}) {
        ConditionalDist box = quantum_chained_box(n);
        ChainedSettings s(n);
        for (int a : s.a_values()) {
            for (int b : s.b_values()) {
                for (int x : {kPlus, kMinus}) {
                    for (int y : {kPlus, kMinus}) {
                        const Label out[2] = {x, y};
                        const Label in[2] = {a, b};
                        ASSERT_NEAR(box.prob(out, in), amplitude_oracle(n, a, b, x, y), 1e-14)
                            << n << " " << a << " " << b << " " << x << " " << y;
                    }
                }
            }
        }
        ASSERT_TRUE(is_no_signalling(box, 1e-12));
    }
}

TEST(quantum_chained_box, value_matches_closed_form) {
    for (int n : {2, 4, 8, 16, 32, 64}) {
        ASSERT_NEAR(chained_value(quantum_chained_box(n), ChainedSettings(n)), quantum_closed_form(n), 1e-9);
    }
    ASSERT_NEAR(quantum_closed_form(2), 2 - std::numbers::sqrt2, 1e-12);
    ASSERT_THROW(quantum_chained_box(1), PreconditionError);
}

TEST(quantum_closed_form, decreases_like_one_over_n) {
    double prev = quantum_closed_form(2);
    for (int n = 3; n <= 200; ++n) {
        double v = quantum_closed_form(n);
        ASSERT_LT(v, prev);
        prev = v;
    }
    // 2N sin^2(pi/4N) ~ pi^2 / 8N.
    ASSERT_NEAR(quantum_closed_form(1000) * 1000, std::numbers::pi * std::numbers::pi / 8, 1e-5);
}

TEST(extremal_chained_box, zero_value_and_no_signalling) {
    for (int n : {2, 3, 5}) {
        ConditionalDist box = extremal_chained_box(n);
        ASSERT_NEAR(chained_value(box, ChainedSettings(n)), 0.0, 1e-15);
        ASSERT_TRUE(is_no_signalling(box));
    }
}

TEST(classical_min_chained, equals_one) {
    for (int n = 1; n <= 8; ++n) {
        auto m = classical_min_chained(n);
        ASSERT_EQ(m.value, 1.0) << n;
        ChainedSettings s(n);
        ASSERT_EQ(m.argmin.violated_terms(s), 1);
        ASSERT_NEAR(chained_value(m.argmin.to_box(), s), 1.0, 1e-15);
    }
    ASSERT_THROW(classical_min_chained(kMaxEnumerationN + 1), PreconditionError);
}

TEST(classical_min_chained, agrees_with_naive_enumeration) {
    for (int n = 2; n <= 4; ++n) {
        ChainedSettings s(n);
        int best = 1 << 20;
        for (int xs = 0; xs < (1 << n); ++xs) {
            for (int ys = 0; ys < (1 << n); ++ys) {
                DeterministicStrategy d;
                for (int i = 0; i < n; ++i) {
                    d.x_of_a.push_back((xs >> i & 1) ? kMinus : kPlus);
                    d.y_of_b.push_back((ys >> i & 1) ? kMinus : kPlus);
                }
                best = std::min(best, d.violated_terms(s));
                // Every deterministic strategy violates an odd number of terms.
                ASSERT_EQ(d.violated_terms(s) % 2, 1);
            }
        }
        ASSERT_EQ(best, static_cast<int>(classical_min_chained(n).value));
    }
}

TEST(staircase_strategy, fails_exactly_the_chosen_term) {
    for (int n : {2, 3, 4, 8}) {
        ChainedSettings s(n);
        for (const ChainTerm &t : s.terms()) {
            DeterministicStrategy d = staircase_strategy(s, t);
            ASSERT_EQ(d.violated_terms(s), 1);
            ASSERT_TRUE(t.violated(d.x(t.a), d.y(t.b)));
        }
    }
    ASSERT_THROW(staircase_strategy(ChainedSettings(2), ChainTerm{0, 3, false}), PreconditionError);
}

TEST(chained_value, rejects_wrong_shape) {
    ConditionalDist box = quantum_chained_box(3);
    ASSERT_THROW(chained_value(box, ChainedSettings(2)), PreconditionError);
}
