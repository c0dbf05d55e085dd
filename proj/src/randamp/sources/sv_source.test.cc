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

#include "randamp/sources/sv_source.h"

#include <cmath>

#include "gtest/gtest.h"

#include "randamp/chained/chained.h"
#include "randamp/sources/bias_rules.h"
#include "randamp/sources/correlated.h"
#include "randamp/util/errors.h"

using namespace randamp;

namespace {

double zero_fraction(const BitHistory &h) {
    double zeros = 0;
    for (auto b : h.bits) {
        zeros += b == 0;
    }
    return zeros / static_cast<double>(h.size());
}

}  // namespace

TEST(sample_bits, unbiased_source_is_fair) {
    Rng rng = make_stream(1, 0);
    BitHistory h = sample_bits(unbiased_source(), 100000, 0, rng);
    ASSERT_EQ(h.size(), 100000u);
    ASSERT_NEAR(zero_fraction(h), 0.5, 0.01);
}

TEST(sample_bits, constant_bias) {
    Rng rng = make_stream(2, 0);
    BitHistory h = sample_bits(constant_source(0.25, 0.75), 100000, 0, rng);
    ASSERT_NEAR(zero_fraction(h), 0.75, 0.01);
    ASSERT_THROW(constant_source(0.1, 0.75), PreconditionError);
}

TEST(sample_bits, reproducible_for_fixed_seed) {
    SVSourceModel m = history_parity_source(0.2);
    Rng r1 = make_stream(77, 3), r2 = make_stream(77, 3), r3 = make_stream(77, 4);
    auto a = sample_bits(m, 500, 0, r1);
    auto b = sample_bits(m, 500, 0, r2);
    auto c = sample_bits(m, 500, 0, r3);
    ASSERT_EQ(a.bits, b.bits);
    ASSERT_NE(a.bits, c.bits);
    ASSERT_THROW(sample_bits(m, 0, 0, r1), PreconditionError);
}

TEST(sv_source, audits_every_emission) {
    SVSourceModel parity = history_parity_source(0.25);
    SVSource src(parity, 0);
    Rng rng = make_stream(3, 0);
    for (int i = 0; i < 1000; ++i) {
        src.next(rng);
    }
    int ones = 0;
    for (std::size_t i = 0; i < src.biases().size(); ++i) {
        double bias = src.biases()[i];
        ASSERT_GE(bias, 0.25);
        ASSERT_LE(bias, 0.75);
        ASSERT_EQ(bias, ones % 2 == 0 ? 0.75 : 0.25);
        ones += src.history().bits[i];
    }
    SVSourceModel cheat(0.1, [](std::size_t, std::span<const std::uint8_t> h) { return h.size() < 5 ? 0.5 : 0.9; });
    SVSource bad(cheat, 0);
    for (int i = 0; i < 5; ++i) {
        bad.next(rng);
    }
    ASSERT_THROW(bad.next(rng), ContractViolation);
    ASSERT_THROW(SVSourceModel(0.5, [](std::size_t, std::span<const std::uint8_t>) { return 0.5; }),
                 PreconditionError);
}

TEST(sv_source, next_bits_big_endian_and_index_rejection) {
    SVSourceModel ones(0.5 - 1e-9, [](std::size_t, std::span<const std::uint8_t>) { return 1e-9; });
    SVSource src(ones, 0);
    Rng rng = make_stream(4, 0);
    ASSERT_EQ(src.next_bits(3, rng), 7u);
    // Alternating 1, 0, 1, 0...
    SVSourceModel alt(0.5 - 1e-12, [](std::size_t, std::span<const std::uint8_t> h) {
        return h.size() % 2 == 0 ? 1e-12 : 1 - 1e-12;
    });
    SVSource a(alt, 0);
    ASSERT_EQ(a.next_bits(4, rng), 0b1010u);
    // Index in [0, 3) never returns 3.
    SVSource fair(unbiased_source(), 0);
    std::vector<int> counts(3, 0);
    for (int i = 0; i < 30000; ++i) {
        counts[fair.next_index(3, rng)]++;
    }
    for (int c : counts) {
        ASSERT_NEAR(c / 30000.0, 1.0 / 3, 0.015);
    }
    // A source that only ever emits 11 cannot index [0, 3).
    SVSource stuck(ones, 0);
    ASSERT_THROW(stuck.next_index(3, rng), ContractViolation);
}

TEST(settings_weight, uniform_at_zero_epsilon) {
    for (int r = 1; r <= 3; ++r) {
        PairDist pd = settings_weight(unbiased_source(), r, 0);
        double n2 = std::pow(4.0, r);
        for (double p : pd.probs()) {
            ASSERT_NEAR(p, 1.0 / n2, 1e-15);
        }
    }
}

TEST(settings_weight, worst_case_extremes) {
    SVSourceModel m = worst_case_pair_source(0.25, 1);
    PairDist pd = settings_weight(m, 1, 0);
    // w = 0 designates (0, 1) so (2, 3) gets the opposite bits.
    ASSERT_NEAR(pd(0, 1), 1.0 / 16, 1e-15);
    ASSERT_NEAR(pd(2, 3), 9.0 / 16, 1e-15);
    ASSERT_NEAR(pd.min(), 1.0 / 16, 1e-15);
    ASSERT_NEAR(pd.max(), 9.0 / 16, 1e-15);
}

TEST(settings_weight, normalized_and_bracketed_for_every_rule) {
    const double eps = 0.15;
    for (int r = 1; r <= 3; ++r) {
        std::vector<SVSourceModel> models = {unbiased_source(), constant_source(eps, 0.5 + eps),
                                             history_parity_source(eps), worst_case_pair_source(eps, r),
                                             balanced_pair_source(eps, r)};
        double lo = std::pow(0.5 - eps, 2 * r), hi = std::pow(0.5 + eps, 2 * r);
        for (const auto &m : models) {
            std::size_t ws = (m.name() == "worst-case-pair" || m.name() == "balanced-pair") ? (2u << r) : 1;
            for (std::size_t w = 0; w < ws; ++w) {
                PairDist pd = settings_weight(m, r, w);
                double total = 0;
                for (double p : pd.probs()) {
                    total += p;
                    ASSERT_GE(p, lo - 1e-15) << m.name();
                    ASSERT_LE(p, hi + 1e-15) << m.name();
                }
                ASSERT_NEAR(total, 1.0, 1e-12);
            }
        }
    }
}

TEST(settings_weight, matches_sampling_order) {
    // Settings drawn through the source land where settings_weight predicts.
    SVSourceModel m = worst_case_pair_source(0.3, 2);
    PairDist pd = settings_weight(m, 2, 5);
    std::vector<double> counts(16, 0.0);
    Rng rng = make_stream(8, 0);
    const int draws = 200000;
    for (int i = 0; i < draws; ++i) {
        SVSource src(m, 5);
        SettingsPair s = draw_settings(src, 2, rng);
        counts[(s.a / 2) * 4 + (s.b - 1) / 2] += 1;
    }
    for (int k = 0; k < 16; ++k) {
        double p = pd.probs()[k];
        ASSERT_NEAR(counts[k] / draws, p, 5 * std::sqrt(p * (1 - p) / draws) + 1e-9);
    }
}

TEST(bias_rules, designated_pairs_and_setting_bits) {
    auto pairs = designated_pairs(2);
    ASSERT_EQ(pairs.size(), 8u);
    ASSERT_EQ(pairs.front(), (ChainTerm{0, 1, false}));
    ASSERT_EQ(pairs[1], (ChainTerm{0, 7, true}));
    ASSERT_EQ(setting_bits(0, 7, 2), 3u);
    ASSERT_EQ(setting_bits(6, 1, 2), 12u);
}

TEST(bias_rules, worst_case_pair_designated_probability) {
    for (int r = 1; r <= 3; ++r) {
        const double eps = 0.1;
        SVSourceModel m = worst_case_pair_source(eps, r);
        auto pairs = designated_pairs(r);
        for (std::size_t w = 0; w < pairs.size(); ++w) {
            PairDist pd = settings_weight(m, r, w);
            ASSERT_NEAR(pd(pairs[w].a, pairs[w].b), std::pow(0.5 - eps, 2 * r), 1e-15);
        }
        ASSERT_THROW(settings_weight(m, r, pairs.size()), PreconditionError);
    }
}

TEST(bias_rules, balanced_pair_gives_uniform_marginal) {
    for (int r = 1; r <= 4; ++r) {
        for (double eps : {0.0, 0.05, 0.1, 0.2, 0.3}) {
            SVSourceModel m = balanced_pair_source(eps, r);
            auto pairs = designated_pairs(r);
            const int n = 1 << r;
            std::vector<double> marginal(static_cast<std::size_t>(n) * n, 0.0);
            for (std::size_t w = 0; w < pairs.size(); ++w) {
                PairDist pd = settings_weight(m, r, w);
                ASSERT_NEAR(pd(pairs[w].a, pairs[w].b), std::pow(0.5 - eps, 2 * r), 1e-14);
                for (std::size_t k = 0; k < marginal.size(); ++k) {
                    marginal[k] += pd.probs()[k] / static_cast<double>(pairs.size());
                }
            }
            for (double p : marginal) {
                ASSERT_NEAR(p, 1.0 / (n * n), 1e-13) << r << " " << eps;
            }
        }
    }
}

TEST(bias_rules, parse_source_names) {
    ASSERT_EQ(parse_source("unbiased", 0.1, 2).name(), "unbiased");
    ASSERT_EQ(parse_source("constant:0.55", 0.1, 2).name(), "constant:0.55");
    ASSERT_EQ(parse_source("history-parity", 0.1, 2).name(), "history-parity");
    ASSERT_EQ(parse_source("worst-case-pair", 0.1, 2).name(), "worst-case-pair");
    ASSERT_EQ(parse_source("balanced-pair", 0.1, 2).name(), "balanced-pair");
    ASSERT_THROW(parse_source("constant:", 0.1, 2), PreconditionError);
    ASSERT_THROW(parse_source("constant:0.9", 0.1, 2), PreconditionError);
    ASSERT_THROW(parse_source("nope", 0.1, 2), PreconditionError);
}

TEST(correlated_pair_box, amplitudes_and_marginals) {
    for (double eps : {0.0, 0.1, 0.25, 0.4}) {
        Dist d = correlated_pair_box(eps);
        double sq = 0.25 - eps * eps;
        // Squared amplitudes of (1/2+e)|00> + sqrt(1/4-e^2)|01> + (1/2-e)|10> + sqrt(1/4-e^2)|11>.
        ASSERT_NEAR(d.at(0), (0.5 + eps) * (0.5 + eps), 1e-15);
        ASSERT_NEAR(d.at(1), sq, 1e-15);
        ASSERT_NEAR(d.at(2), (0.5 - eps) * (0.5 - eps), 1e-15);
        ASSERT_NEAR(d.at(3), sq, 1e-15);
        double total = d.at(0) + d.at(1) + d.at(2) + d.at(3);
        ASSERT_NEAR(total, 1.0, 1e-12);
        double first0 = d.at(0) + d.at(1);
        ASSERT_NEAR(first0, 0.5 + eps, 1e-15);
        ASSERT_NEAR(d.at(0) / first0, 0.5 + eps, 1e-12);
        if (eps > 0) {
            ASSERT_NEAR(d.at(2) / (1 - first0), 0.5 - eps, 1e-12);
        }
        // Each bit is eps-free on its own, but the second bit is not free given the first.
        double second0 = d.at(0) + d.at(2);
        ASSERT_LE(epsilon_free_deficit(Dist({0, 1}, {first0, 1 - first0})), eps + 1e-15);
        ASSERT_LE(epsilon_free_deficit(Dist({0, 1}, {second0, 1 - second0})), eps + 1e-15);
        JointDist second_given_first({0, 1}, {0, 1}, {d.at(0), d.at(2), d.at(1), d.at(3)});
        ASSERT_NEAR(epsilon_free_deficit(second_given_first), eps, 1e-12);
    }
}

TEST(gf2_inner_product, examples) {
    std::vector<std::uint8_t> a = {1, 0, 1}, b = {1, 1, 0}, z = {0, 0, 0};
    ASSERT_EQ(gf2_inner_product(a, b), 1);
    ASSERT_EQ(gf2_inner_product(a, z), 0);
    ASSERT_EQ(gf2_inner_product(a, a), 0);
    std::vector<std::uint8_t> shorter = {1};
    ASSERT_THROW(gf2_inner_product(a, shorter), PreconditionError);
}

TEST(interleaved_source, pairwise_mode_matches_pair_box) {
    const double eps = 0.2;
    SVSourceModel m = interleaved_source(eps, Correlation::pairwise);
    Dist box = correlated_pair_box(eps);
    Rng rng = make_stream(12, 0);
    std::vector<double> counts(4, 0.0);
    const int pairs = 50000;
    BitHistory h = sample_bits(m, 2 * pairs, 0, rng);
    for (int j = 0; j < pairs; ++j) {
        counts[2 * h.bits[2 * j] + h.bits[2 * j + 1]] += 1;
    }
    for (int k = 0; k < 4; ++k) {
        double p = box.at(k);
        ASSERT_NEAR(counts[k] / pairs, p, 5 * std::sqrt(p * (1 - p) / pairs));
    }
}

TEST(inner_product_demo, independent_vanishes_adaptive_does_not) {
    auto ind = independent_inner_product_demo(constant_source(0.1, 0.6), history_parity_source(0.1), 64, 20000, 5);
    ASSERT_LT(ind.deficit, 4 * ind.noise_floor + 0.005);
    auto adaptive = correlated_inner_product_demo(0.1, Correlation::adaptive, 64, 20000, 5);
    ASSERT_NEAR(adaptive.deficit, 0.1, 0.02);
    ASSERT_GT(adaptive.deficit, 0.03);
    // Deterministic under the seed.
    auto again = correlated_inner_product_demo(0.1, Correlation::adaptive, 64, 20000, 5);
    ASSERT_EQ(again.p_zero, adaptive.p_zero);
}
