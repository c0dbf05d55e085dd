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

#include "randamp/ghz/ghz.h"

#include <cmath>
#include <complex>

#include "gtest/gtest.h"

#include "randamp/dist/no_signalling.h"
#include "randamp/util/errors.h"

using namespace randamp;

namespace {

// Born rule on (|0...0> - |1...1>)/sqrt(2) with X for input 0 and Y for input 1.
double statevector_prob(const std::vector<int> &outs, const std::vector<int> &ins) {
    const int m = static_cast<int>(outs.size());
    std::complex<double> prod = 1;
    for (int i = 0; i < m; ++i) {
        std::complex<double> phase = ins[i] ? std::complex<double>(0, -1) : 1.0;
        prod *= static_cast<double>(outs[i]) * phase;
    }
    return std::norm(1.0 - prod) * std::ldexp(1.0, -m) / 2;
}

}  // namespace

TEST(ghz_relations, three_party_list) {
    auto rels = relations(3);
    ASSERT_EQ(rels.size(), 4u);
    // XXX -> -1; XYY, YXY, YYX -> +1.
    ASSERT_EQ(rels[0].pattern, 0b000u);
    ASSERT_EQ(rels[0].parity, -1);
    for (std::size_t k = 1; k < 4; ++k) {
        ASSERT_EQ(std::popcount(rels[k].pattern), 2);
        ASSERT_EQ(rels[k].parity, +1);
    }
    int product = 1;
    for (const auto &r : rels) {
        product *= r.parity;
    }
    ASSERT_EQ(product, -1);
    ASSERT_EQ(relation_parity(0b111, 3), 0);
    ASSERT_EQ(ghz_input(0b100, 3, 0), 1);
    ASSERT_EQ(ghz_input(0b100, 3, 2), 0);
}

TEST(ghz_relations, counts_by_party_number) {
    for (int m = 3; m <= 12; ++m) {
        ASSERT_EQ(relations(m).size(), std::size_t{1} << (m - 1));
    }
    ASSERT_THROW(relations(2), PreconditionError);
    ASSERT_THROW(relations(25), PreconditionError);
}

TEST(ghz_classical, three_of_four_is_the_maximum) {
    auto best = max_classical_satisfiable(3);
    ASSERT_EQ(best.count, 3);
    ASSERT_EQ(best.total, 4);
    ASSERT_EQ(best.witness, uniform_assignment(3, +1));
    // Naive oracle: every one of the 64 assignments misses at least one relation.
    auto rels = relations(3);
    for (std::uint64_t code = 0; code < 64; ++code) {
        auto a = assignment_from_code(3, code);
        int c = 0;
        for (const auto &r : rels) {
            int p = a[0][(r.pattern >> 2) & 1] * a[1][(r.pattern >> 1) & 1] * a[2][r.pattern & 1];
            c += p == r.parity;
        }
        ASSERT_EQ(c, satisfied_count(a, rels));
        ASSERT_LE(c, 3);
    }
}

TEST(ghz_detection, worst_case_respects_lower_bound) {
    for (double eps : {0.0, 0.1, 0.2, 0.3, 0.4, 0.49}) {
        double bound = detection_probability_lower_bound(eps);
        ASSERT_NEAR(bound, std::pow(0.5 - eps, 3), 1e-15);
        for (std::uint64_t code = 0; code < 64; ++code) {
            auto a = assignment_from_code(3, code);
            ASSERT_GE(worst_case_detection_probability(a, eps), bound - 1e-12) << code << " " << eps;
        }
    }
    // The all-+1 strategy fails only XXX, which the adversary can reach with weight (1/2 - eps)^3.
    ASSERT_NEAR(worst_case_detection_probability(uniform_assignment(3, +1), 0.2), std::pow(0.3, 3), 1e-12);
}

TEST(ghz_detection, simulation_matches_worst_case) {
    auto a = uniform_assignment(3, +1);
    double eps = 0.2;
    auto est = simulate_detection(a, worst_case_input_source(a, eps), 200000, 7);
    ASSERT_NEAR(est.rate, worst_case_detection_probability(a, eps), 4 * est.sigma + 1e-4);
}

TEST(ghz_quantum, box_matches_statevector) {
    for (int m = 3; m <= 5; ++m) {
        ConditionalDist box = quantum_ghz_box(m);
        ASSERT_TRUE(is_no_signalling(box, 1e-12));
        for (std::uint32_t in = 0; in < (1u << m); ++in) {
            std::vector<int> ins(m);
            for (int i = 0; i < m; ++i) {
                ins[i] = ghz_input(in, m, i);
            }
            for (std::uint32_t o = 0; o < (1u << m); ++o) {
                std::vector<int> outs(m);
                for (int i = 0; i < m; ++i) {
                    outs[i] = ((o >> (m - 1 - i)) & 1) ? -1 : +1;
                }
                ASSERT_NEAR(box.prob(outs, ins), statevector_prob(outs, ins), 1e-12);
            }
        }
    }
}

TEST(ghz_quantum, sampler_never_fails_a_relation) {
    Rng rng = make_stream(3, 0);
    for (int m : {3, 4, 7}) {
        int plus_first = 0, total = 0;
        for (int t = 0; t < 20000; ++t) {
            std::uint32_t p = static_cast<std::uint32_t>(rng() >> (64 - m));
            std::vector<int> ins(m);
            for (int i = 0; i < m; ++i) {
                ins[i] = ghz_input(p, m, i);
            }
            auto out = sample_quantum_ghz(ins, rng);
            int prod = 1;
            for (int v : out) {
                prod *= v;
            }
            int parity = relation_parity(p, m);
            if (parity != 0) {
                ASSERT_EQ(prod, parity);
            }
            plus_first += out[m - 1] == +1;
            ++total;
        }
        ASSERT_NEAR(static_cast<double>(plus_first) / total, 0.5, 0.02);
    }
}

TEST(ghz_deterministic_party, no_signalling_and_relations_hold) {
    for (int m = 3; m <= 5; ++m) {
        for (int d = 0; d < m; ++d) {
            for (std::array<int, 2> v : {std::array<int, 2>{1, 1}, std::array<int, 2>{-1, 1}}) {
                ConditionalDist box = deterministic_party_box(m, d, v);
                auto ns = check_no_signalling(box, 1e-12);
                ASSERT_TRUE(ns.ok);
                for (std::uint32_t in = 0; in < (1u << m); ++in) {
                    std::vector<int> ins(m);
                    for (int i = 0; i < m; ++i) {
                        ins[i] = ghz_input(in, m, i);
                    }
                    int parity = relation_parity(in, m);
                    for (std::uint32_t o = 0; o < (1u << m); ++o) {
                        std::vector<int> outs(m);
                        int prod = 1;
                        for (int i = 0; i < m; ++i) {
                            outs[i] = ((o >> (m - 1 - i)) & 1) ? -1 : +1;
                            prod *= outs[i];
                        }
                        double p = box.prob(outs, ins);
                        if (p > 0) {
                            ASSERT_EQ(outs[d], v[ins[d]]);
                            if (parity != 0) {
                                ASSERT_EQ(prod, parity);
                            }
                        }
                    }
                }
            }
        }
    }
}

TEST(ghz_deterministic_party, sampler_follows_box) {
    Rng rng = make_stream(9, 0);
    std::vector<int> ins{0, 1, 1, 0};
    for (int t = 0; t < 1000; ++t) {
        auto out = sample_deterministic_party(ins, 1, {+1, -1}, rng);
        ASSERT_EQ(out[1], -1);
        int prod = out[0] * out[1] * out[2] * out[3];
        ASSERT_EQ(prod, relation_parity(0b0110, 4));
    }
}

TEST(ghz_conjecture, honest_selection_is_free) {
    auto row = conjecture1_harness(3, 0.1, 10000, 1, GhzAdversary::honest);
    ASSERT_LT(row.deficit, 0.02);
    ASSERT_EQ(row.relation_failures, 0u);
    ASSERT_EQ(row.predicted, 0.0);
}

TEST(ghz_conjecture, deterministic_party_deficit_matches_prediction) {
    for (int m : {3, 5, 8}) {
        auto row = conjecture1_harness(m, 0.1, 40000, 2, GhzAdversary::deterministic_party);
        ASSERT_NEAR(row.predicted, 1.0 / (2 * m), 1e-12);
        ASSERT_EQ(row.relation_failures, 0u);
        ASSERT_NEAR(row.deficit, row.predicted, 3 * row.noise_floor + 0.005);
    }
    auto steered = conjecture1_harness(4, 0.2, 40000, 3, GhzAdversary::deterministic_party, GhzSelection::steered);
    ASSERT_GT(steered.predicted, 1.0 / 8);
    for (int d = 0; d < 4; ++d) {
        ASSERT_NEAR(steered_selection_probability(4, 0.0, d), 0.25, 1e-15);
        // Two chooser bits, both leaning toward the target.
        ASSERT_NEAR(steered_selection_probability(4, 0.2, d), 0.49, 1e-12);
    }
    ASSERT_NEAR(steered.deficit, steered.predicted, 3 * steered.noise_floor + 0.005);
}

TEST(ghz_conjecture, deterministic_output) {
    auto a = conjecture1_harness(6, 0.05, 5000, 11, GhzAdversary::deterministic_party);
    auto b = conjecture1_harness(6, 0.05, 5000, 11, GhzAdversary::deterministic_party);
    ASSERT_EQ(a.deficit, b.deficit);
}
