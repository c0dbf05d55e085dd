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

#include "randamp/bounds/bounds.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "randamp/dist/no_signalling.h"
#include "randamp/sources/bias_rules.h"
#include "randamp/util/errors.h"

using namespace randamp;

namespace {

// Σ_w P(w|ab) Σ_x |P(x|abw) - 1/2| / 2 with the marginal summed by hand.
double lhs_oracle(const WFamily &fam, int a, int b) {
    const Label in[2] = {a, b};
    std::size_t i = fam.inputs().index_of(in);
    double total = 0;
    for (std::size_t w = 0; w < fam.w_count(); ++w) {
        double plus = 0;
        for (int y : {kPlus, kMinus}) {
            const Label out[2] = {kPlus, y};
            plus += fam.box(w).prob(out, in);
        }
        total += fam.weight(i, w) * (std::abs(plus - 0.5) + std::abs((1 - plus) - 0.5)) / 2;
    }
    return total;
}

ConditionalDist constant_x_box(int n) {
    DeterministicStrategy s;
    s.x_of_a.assign(n, kPlus);
    s.y_of_b.assign(n, kPlus);
    return s.to_box();
}

}  // namespace

TEST(q_factor, trivial_and_settings_independent_families) {
    WFamily trivial = WFamily::trivial(quantum_chained_box(3));
    ASSERT_EQ(q_factor(trivial, 0, 1), 1.0);
    std::vector<double> prior = {0.3, 0.7};
    std::vector<std::vector<double>> flat(2, std::vector<double>(4, 0.25));
    WFamily indep = WFamily::from_prior({quantum_chained_box(2), extremal_chained_box(2)}, prior, flat);
    for (int a : {0, 2}) {
        for (int b : {1, 3}) {
            ASSERT_NEAR(q_factor(indep, a, b), 1.0, 1e-15);
        }
    }
}

TEST(q_factor, sv_settings_respect_lower_bound) {
    for (int r = 1; r <= 3; ++r) {
        for (double eps : {0.05, 0.1, 0.2}) {
            for (const auto &src : {worst_case_pair_source(eps, r), balanced_pair_source(eps, r)}) {
                std::size_t ws = 2u << r;
                std::vector<ConditionalDist> boxes(ws, quantum_chained_box(1 << r));
                std::vector<double> prior(ws, 1.0 / ws);
                WFamily fam = sv_family(boxes, prior, src, r);
                double bound = sv_q_lower_bound(eps, r);
                ChainedSettings s(1 << r);
                for (int a : s.a_values()) {
                    for (int b : s.b_values()) {
                        ASSERT_GE(q_factor(fam, a, b), bound - 1e-12);
                    }
                }
            }
        }
    }
}

TEST(q_factor, zero_denominator_is_undefined) {
    ConditionalDist box = quantum_chained_box(2);
    // w = 1 never occurs with (a, b) = (2, 3) but does with its neighbours.
    std::vector<std::vector<double>> weights = {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {1.0, 0.0}};
    WFamily fam({box, box}, weights);
    ASSERT_THROW(q_factor(fam, 2, 3), PreconditionError);
    // Both sides zero is skipped.
    std::vector<std::vector<double>> none = {{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}};
    ASSERT_EQ(q_factor(WFamily({box, box}, none), 2, 3), 1.0);
}

TEST(measured_freedom_deficit, examples) {
    WFamily uniform = WFamily::trivial(quantum_chained_box(4));
    ASSERT_NEAR(measured_freedom_deficit(uniform, 2, 3), 0.0, 1e-15);
    WFamily fixed = WFamily::trivial(constant_x_box(2));
    ASSERT_NEAR(measured_freedom_deficit(fixed, 0, 1), 0.5, 1e-15);
    // X copies b: signalling.
    ChainedSettings s(2);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 2; ++i) {
        rows.push_back({1, 0, 0, 0});
        rows.push_back({0, 0, 0, 1});
    }
    WFamily sig = WFamily::trivial(ConditionalDist(s.input_spaces(), ChainedSettings::output_spaces(), rows));
    ASSERT_THROW(measured_freedom_deficit(sig, 0, 1), PreconditionError);
    ASSERT_THROW(lemma1_check(sig), PreconditionError);
}

TEST(lemma1_check, quantum_box_trivial_w) {
    auto reports = lemma1_check(WFamily::trivial(quantum_chained_box(3)));
    ASSERT_EQ(reports.size(), 9u);
    for (const auto &r : reports) {
        ASSERT_NEAR(r.lhs, 0.0, 1e-15);
        ASSERT_NEAR(r.I_N, quantum_closed_form(3), 1e-12);
        ASSERT_EQ(r.q, 1.0);
        ASSERT_TRUE(r.holds());
    }
}

TEST(lemma1_check, holds_on_random_families) {
    for (int n : {2, 3}) {
        for (std::uint64_t k = 0; k < 200; ++k) {
            Rng rng = make_stream(1234, k);
            WFamily fam = random_no_signalling_family(n, rng);
            ASSERT_TRUE(check_family_no_signalling(fam).ok);
            for (const auto &r : lemma1_check(fam)) {
                ASSERT_NEAR(r.lhs, lhs_oracle(fam, r.a, r.b), 1e-12);
                ASSERT_LE(r.lhs, r.rhs + 1e-9) << "N=" << n << " instance " << k;
                ASSERT_NEAR(r.margin, r.rhs - r.lhs, 1e-15);
            }
            ASSERT_GE(chain_inequality_margin(fam), -1e-9);
        }
    }
}

TEST(lemma1_check, bound_is_tight_for_a_constant_output) {
    // One w, I_N = 1, q = 1: D = 1/2 = I_N / 2.
    auto reports = lemma1_check(WFamily::trivial(constant_x_box(3)));
    for (const auto &r : reports) {
        ASSERT_NEAR(r.lhs, 0.5, 1e-15);
        ASSERT_NEAR(r.rhs, 0.5, 1e-15);
    }
}

TEST(random_no_signalling_family, deterministic_under_seed) {
    Rng a = make_stream(5, 1), b = make_stream(5, 1);
    WFamily fa = random_no_signalling_family(3, a), fb = random_no_signalling_family(3, b);
    ASSERT_EQ(fa.w_count(), fb.w_count());
    for (std::size_t i = 0; i < fa.inputs().count(); ++i) {
        for (std::size_t w = 0; w < fa.w_count(); ++w) {
            ASSERT_EQ(fa.weight(i, w), fb.weight(i, w));
        }
    }
    ASSERT_THROW(random_no_signalling_family(4, a), PreconditionError);
}

TEST(pr_boxes, are_no_signalling_with_zero_or_four_value) {
    auto boxes = pr_boxes();
    ASSERT_EQ(boxes.size(), 8u);
    int zero = 0;
    for (const auto &b : boxes) {
        ASSERT_TRUE(is_no_signalling(b));
        double v = chained_value(b, ChainedSettings(2));
        ASSERT_TRUE(std::abs(v) < 1e-15 || std::abs(v - 4) < 1e-15 || std::abs(v - 2) < 1e-15);
        zero += std::abs(v) < 1e-15;
    }
    ASSERT_EQ(zero, 1);
    ASSERT_EQ(local_chained_boxes(2).size(), 16u);
    ASSERT_EQ(local_chained_boxes(3).size(), 64u);
}

TEST(theorem1_bound, closed_forms) {
    constexpr double pi = std::numbers::pi;
    for (int r = 1; r <= 20; ++r) {
        ASSERT_NEAR(theorem1_bound(0, r).bound, pi * pi / 16 * std::pow(2.0, -r), 1e-15);
    }
    auto t = theorem1_bound(0.1, 3);
    double base = 1.2 / (std::numbers::sqrt2 * 0.8);
    ASSERT_NEAR(t.bound, pi * pi / 16 * std::pow(base, 6), 1e-12);
    ASSERT_NEAR(t.pre_bound, 8 * std::pow(1.2 / 0.8, 6) * std::pow(std::sin(pi / 32), 2), 1e-12);
}

TEST(theorem1_bound, monotonicity_follows_base) {
    for (double eps : {0.0, 0.02, 0.05, 0.08, 0.085}) {
        ASSERT_LT(theorem1_base(eps), 1);
        for (int r = 1; r < 40; ++r) {
            ASSERT_LT(theorem1_bound(eps, r + 1).bound, theorem1_bound(eps, r).bound) << eps;
        }
    }
    for (double eps : {0.087, 0.09, 0.12, 0.3}) {
        ASSERT_GT(theorem1_base(eps), 1);
        for (int r = 1; r < 40; ++r) {
            ASSERT_GT(theorem1_bound(eps, r + 1).bound, theorem1_bound(eps, r).bound) << eps;
        }
    }
    ASSERT_NEAR(amplification_threshold(), 0.0857864376269, 1e-12);
    ASSERT_NEAR(theorem1_base(amplification_threshold()), 1.0, 1e-12);
}

TEST(theorem1_bound, pre_bound_never_exceeds_bound) {
    for (double eps = 0; eps < 0.49; eps += 0.01) {
        for (int r = 1; r <= 60; ++r) {
            auto t = theorem1_bound(eps, r);
            ASSERT_LE(t.pre_bound, t.bound * (1 + 1e-12));
        }
    }
}

TEST(select_r, examples) {
    ASSERT_EQ(select_r(0, 0.01), 6);
    ASSERT_THROW(select_r(0.086, 0.01), PreconditionError);
    ASSERT_THROW(select_r(0.09, 0.01), PreconditionError);
    ASSERT_THROW(select_r(0.01, 0), PreconditionError);
    ASSERT_EQ(select_r(0.05, 10.0), 1);
    for (double eps : {0.0, 0.03, 0.06, 0.08}) {
        for (double target : {0.3, 0.01, 1e-4}) {
            int r = select_r(eps, target);
            ASSERT_LE(theorem1_bound(eps, r).bound, target);
            if (r > 1) {
                ASSERT_GT(theorem1_bound(eps, r - 1).bound, target);
            }
        }
    }
}
