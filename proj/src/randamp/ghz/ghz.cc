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

#include <bit>
#include <cmath>
#include <memory>
#include <numbers>

#include "randamp/util/errors.h"
#include "randamp/util/parallel.h"

namespace randamp {
namespace {

constexpr int kMaxExplicitParties = 10;
constexpr int kMaxEnumerationParties = 8;

void check_m(int m) {
    require(m >= 3, "GHZ needs M >= 3");
    require(m <= kMaxGhzParties, "GHZ supports M <= 24");
}

int index_bits(int m) {
    int k = 0;
    while ((1 << k) < m) {
        ++k;
    }
    return k;
}

std::vector<LabelSet> binary_spaces(int m, LabelSet values) {
    return std::vector<LabelSet>(m, values);
}

}  // namespace

int relation_parity(std::uint32_t pattern, int m) {
    int k = std::popcount(pattern & ((1u << m) - 1));
    if (k % 2 != 0) {
        return 0;
    }
    return k % 4 == 0 ? -1 : +1;
}

std::vector<GhzRelation> relations(int m) {
    check_m(m);
    std::vector<GhzRelation> out;
    for (std::uint32_t p = 0; p < (1u << m); ++p) {
        int parity = relation_parity(p, m);
        if (parity != 0) {
            out.push_back({p, parity});
        }
    }
    return out;
}

GhzAssignment uniform_assignment(int m, int value) {
    return GhzAssignment(m, {value, value});
}

GhzAssignment assignment_from_code(int m, std::uint64_t code) {
    GhzAssignment a(m);
    for (int i = 0; i < m; ++i) {
        a[i][0] = ((code >> (2 * i)) & 1) ? -1 : +1;
        a[i][1] = ((code >> (2 * i + 1)) & 1) ? -1 : +1;
    }
    return a;
}

int satisfied_count(const GhzAssignment &assignment, const std::vector<GhzRelation> &rels) {
    const int m = static_cast<int>(assignment.size());
    int count = 0;
    for (const auto &rel : rels) {
        int product = 1;
        for (int i = 0; i < m; ++i) {
            product *= assignment[i][ghz_input(rel.pattern, m, i)];
        }
        count += product == rel.parity;
    }
    return count;
}

ClassicalGhzMaximum max_classical_satisfiable(int m) {
    check_m(m);
    require(m <= kMaxEnumerationParties, "max_classical_satisfiable enumerates 4^M assignments; needs M <= 8");
    auto rels = relations(m);
    ClassicalGhzMaximum best;
    best.total = static_cast<int>(rels.size());
    best.count = -1;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * m)); ++code) {
        GhzAssignment a = assignment_from_code(m, code);
        int c = satisfied_count(a, rels);
        if (c > best.count) {
            best.count = c;
            best.witness = a;
        }
    }
    return best;
}

double detection_probability_lower_bound(double epsilon) {
    require(epsilon >= 0 && epsilon < 0.5, "detection bound needs 0 <= epsilon < 1/2");
    return std::pow(0.5 - epsilon, 3);
}

namespace {

// fails[pattern] = 1 when the assignment violates that pattern's relation.
std::vector<double> failure_table(const GhzAssignment &assignment) {
    const int m = static_cast<int>(assignment.size());
    std::vector<double> fails(std::size_t{1} << m, 0.0);
    for (std::uint32_t p = 0; p < (1u << m); ++p) {
        int parity = relation_parity(p, m);
        if (parity == 0) {
            continue;
        }
        int product = 1;
        for (int i = 0; i < m; ++i) {
            product *= assignment[i][ghz_input(p, m, i)];
        }
        fails[p] = product != parity;
    }
    return fails;
}

// Minimum detection probability below each tree node (heap layout, leaves are patterns) and the
// preferred child (0 or 1) of each internal node.
struct SteeringTable {
    std::vector<double> value;
    std::vector<std::uint8_t> prefer_zero;
};

SteeringTable solve_steering(const GhzAssignment &assignment, double epsilon) {
    std::vector<double> fails = failure_table(assignment);
    const std::size_t leaves = fails.size();
    SteeringTable t;
    t.value.assign(2 * leaves - 1, 0.0);
    t.prefer_zero.assign(leaves - 1, 1);
    for (std::size_t p = 0; p < leaves; ++p) {
        t.value[leaves - 1 + p] = fails[p];
    }
    for (std::size_t node = leaves - 1; node-- > 0;) {
        double v0 = t.value[2 * node + 1];
        double v1 = t.value[2 * node + 2];
        bool z = v0 <= v1;
        t.prefer_zero[node] = z;
        double lo = std::min(v0, v1), hi = std::max(v0, v1);
        t.value[node] = (0.5 + epsilon) * lo + (0.5 - epsilon) * hi;
    }
    return t;
}

}  // namespace

double worst_case_detection_probability(const GhzAssignment &assignment, double epsilon) {
    check_m(static_cast<int>(assignment.size()));
    require(epsilon >= 0 && epsilon < 0.5, "worst-case detection needs 0 <= epsilon < 1/2");
    require(assignment.size() <= 16, "worst-case detection supports M <= 16");
    return solve_steering(assignment, epsilon).value[0];
}

SVSourceModel worst_case_input_source(const GhzAssignment &assignment, double epsilon) {
    require(assignment.size() <= 16, "worst-case input source supports M <= 16");
    auto table = std::make_shared<const SteeringTable>(solve_steering(assignment, epsilon));
    const std::size_t m = assignment.size();
    return SVSourceModel(
        epsilon,
        [table, m, epsilon](std::size_t, std::span<const std::uint8_t> history) {
            std::size_t k = history.size() % m;
            std::size_t node = 0;
            for (std::size_t i = history.size() - k; i < history.size(); ++i) {
                node = 2 * node + 1 + history[i];
            }
            return table->prefer_zero[node] ? 0.5 + epsilon : 0.5 - epsilon;
        },
        "ghz-worst-case");
}

ConditionalDist quantum_ghz_box(int m) {
    check_m(m);
    require(m <= kMaxExplicitParties, "quantum_ghz_box is explicit; needs M <= 10");
    LabelGrid inputs(binary_spaces(m, {0, 1}));
    LabelGrid outputs(binary_spaces(m, {+1, -1}));
    std::vector<double> table(inputs.count() * outputs.count());
    for (std::size_t i = 0; i < inputs.count(); ++i) {
        // Input index digits follow party order, so the index is the pattern itself.
        int parity = relation_parity(static_cast<std::uint32_t>(i), m);
        for (std::size_t o = 0; o < outputs.count(); ++o) {
            int product = (std::popcount(o) % 2 == 0) ? 1 : -1;
            double p = parity == 0 ? std::ldexp(1.0, -m) : (product == parity ? std::ldexp(1.0, 1 - m) : 0.0);
            table[i * outputs.count() + o] = p;
        }
    }
    return ConditionalDist(std::move(inputs), std::move(outputs), std::move(table));
}

std::vector<int> sample_quantum_ghz(std::span<const int> inputs, Rng &rng) {
    const int m = static_cast<int>(inputs.size());
    require(m >= 3, "GHZ needs M >= 3");
    int k = 0;
    for (int v : inputs) {
        k += v;
    }
    std::vector<int> out(m);
    int product = 1;
    for (int i = 0; i < m; ++i) {
        out[i] = (rng() >> 63) ? -1 : +1;
        product *= out[i];
    }
    if (k % 2 == 0) {
        int parity = k % 4 == 0 ? -1 : +1;
        if (product != parity) {
            out[m - 1] = -out[m - 1];
        }
    }
    return out;
}

namespace {

// Product the non-deterministic parties must produce, as a function of their own inputs.
int rest_target(std::span<const int> inputs, int d, std::array<int, 2> values) {
    int k_rest = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (static_cast<int>(i) != d) {
            k_rest += inputs[i];
        }
    }
    int a_d = k_rest % 2;
    int k = k_rest + a_d;
    int parity = k % 4 == 0 ? -1 : +1;
    return parity * values[a_d];
}

}  // namespace

ConditionalDist deterministic_party_box(int m, int d, std::array<int, 2> values) {
    check_m(m);
    require(m <= kMaxExplicitParties, "deterministic_party_box is explicit; needs M <= 10");
    require(d >= 0 && d < m, "deterministic party out of range");
    for (int v : values) {
        require(v == 1 || v == -1, "deterministic outputs must be +1 or -1");
    }
    LabelGrid inputs(binary_spaces(m, {0, 1}));
    LabelGrid outputs(binary_spaces(m, {+1, -1}));
    std::vector<double> table(inputs.count() * outputs.count(), 0.0);
    const double weight = std::ldexp(1.0, 2 - m);
    for (std::size_t i = 0; i < inputs.count(); ++i) {
        auto in = inputs.labels_of(i);
        int target = rest_target(in, d, values);
        int x_d = values[in[d]];
        for (std::size_t o = 0; o < outputs.count(); ++o) {
            auto out = outputs.labels_of(o);
            if (out[d] != x_d) {
                continue;
            }
            int product = 1;
            for (int p = 0; p < m; ++p) {
                if (p != d) {
                    product *= out[p];
                }
            }
            if (product == target) {
                table[i * outputs.count() + o] = weight;
            }
        }
    }
    return ConditionalDist(std::move(inputs), std::move(outputs), std::move(table));
}

std::vector<int> sample_deterministic_party(std::span<const int> inputs, int d, std::array<int, 2> values,
                                            Rng &rng) {
    const int m = static_cast<int>(inputs.size());
    require(d >= 0 && d < m, "deterministic party out of range");
    int target = rest_target(inputs, d, values);
    std::vector<int> out(m);
    int product = 1;
    int last = -1;
    for (int i = 0; i < m; ++i) {
        if (i == d) {
            out[i] = values[inputs[i]];
            continue;
        }
        out[i] = (rng() >> 63) ? -1 : +1;
        product *= out[i];
        last = i;
    }
    if (product != target) {
        out[last] = -out[last];
    }
    return out;
}

DetectionEstimate simulate_detection(const GhzAssignment &assignment, const SVSourceModel &inputs,
                                     std::size_t trials, std::uint64_t seed) {
    const int m = static_cast<int>(assignment.size());
    check_m(m);
    require(trials >= 1, "simulate_detection needs trials >= 1");
    std::vector<double> fails = failure_table(assignment);
    constexpr std::size_t kChunk = 8192;
    std::size_t chunks = (trials + kChunk - 1) / kChunk;
    std::vector<std::size_t> caught(chunks, 0);
    parallel_for(chunks, [&](std::size_t c) {
        Rng rng = make_stream(seed, c);
        std::size_t end = std::min(trials, (c + 1) * kChunk);
        for (std::size_t t = c * kChunk; t < end; ++t) {
            SVSource bits(inputs, 0);
            auto pattern = static_cast<std::size_t>(bits.next_bits(m, rng));
            caught[c] += fails[pattern] > 0;
        }
    });
    std::size_t total = 0;
    for (auto c : caught) {
        total += c;
    }
    DetectionEstimate e;
    e.trials = trials;
    e.rate = static_cast<double>(total) / static_cast<double>(trials);
    e.sigma = std::sqrt(std::max(e.rate * (1 - e.rate), 1.0 / static_cast<double>(trials)) /
                        static_cast<double>(trials));
    return e;
}

std::string to_string(GhzAdversary adversary) {
    return adversary == GhzAdversary::honest ? "honest" : "deterministic-party";
}

std::string to_string(GhzSelection selection) {
    return selection == GhzSelection::uniform ? "uniform" : "steered";
}

namespace {

// Chooser bits lean toward the binary expansion of the target index; w encodes the target.
SVSourceModel selection_source(int m, double epsilon, GhzSelection selection, bool targeted) {
    if (selection == GhzSelection::uniform || !targeted) {
        return SVSourceModel(epsilon, [](std::size_t, std::span<const std::uint8_t>) { return 0.5; }, "uniform");
    }
    const int k = index_bits(m);
    return SVSourceModel(
        epsilon,
        [k, epsilon](std::size_t target, std::span<const std::uint8_t> history) {
            int pos = static_cast<int>(history.size() % static_cast<std::size_t>(k));
            int bit = static_cast<int>((target >> (k - 1 - pos)) & 1u);
            return bit == 0 ? 0.5 + epsilon : 0.5 - epsilon;
        },
        "steered-selection");
}

}  // namespace

double steered_selection_probability(int m, double epsilon, int target) {
    require(target >= 0 && target < m, "target out of range");
    const int k = index_bits(m);
    double total = 0;
    double hit = 0;
    for (int i = 0; i < m; ++i) {
        int agree = k - std::popcount(static_cast<unsigned>(i ^ target));
        double p = std::pow(0.5 + epsilon, agree) * std::pow(0.5 - epsilon, k - agree);
        total += p;
        if (i == target) {
            hit = p;
        }
    }
    return hit / total;
}

ConjectureRow conjecture1_harness(int m, double epsilon, std::size_t trials, std::uint64_t seed,
                                  GhzAdversary adversary, GhzSelection selection) {
    check_m(m);
    require(epsilon >= 0 && epsilon < 0.5, "conjecture harness needs 0 <= epsilon < 1/2");
    require(trials >= 1, "conjecture harness needs trials >= 1");
    const bool deterministic = adversary == GhzAdversary::deterministic_party;
    // W = (d, v) with w = 2d + (v == -1); trivial for the honest sampler.
    const std::size_t ws = deterministic ? static_cast<std::size_t>(2 * m) : 1;
    SVSourceModel input_source(epsilon, [epsilon](std::size_t, std::span<const std::uint8_t>) { return 0.5 + epsilon; },
                               "constant-inputs");
    SVSourceModel chooser = selection_source(m, epsilon, selection, deterministic);
    std::vector<std::uint8_t> w_of(trials), plus_of(trials), failed_of(trials);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng = make_stream(seed, t);
        std::size_t w = uniform_below(rng, ws);
        SVSource in_bits(input_source, w);
        std::vector<int> inputs(m);
        for (int i = 0; i < m; ++i) {
            inputs[i] = in_bits.next(rng);
        }
        std::vector<int> out;
        int d = static_cast<int>(w / 2);
        if (deterministic) {
            int v = (w % 2) ? -1 : +1;
            out = sample_deterministic_party(inputs, d, {v, v}, rng);
        } else {
            out = sample_quantum_ghz(inputs, rng);
        }
        std::uint32_t pattern = 0;
        int product = 1;
        for (int i = 0; i < m; ++i) {
            pattern = (pattern << 1) | static_cast<std::uint32_t>(inputs[i]);
            product *= out[i];
        }
        int parity = relation_parity(pattern, m);
        failed_of[t] = parity != 0 && product != parity;
        SVSource pick(chooser, deterministic ? static_cast<std::size_t>(d) : 0);
        std::size_t sel = pick.next_index(static_cast<std::size_t>(m), rng);
        w_of[t] = static_cast<std::uint8_t>(w);
        plus_of[t] = out[sel] == +1;
    });
    std::vector<double> count(ws, 0.0), plus(ws, 0.0);
    ConjectureRow row;
    row.m = m;
    row.adversary = adversary;
    row.selection = selection;
    row.epsilon = epsilon;
    row.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        count[w_of[t]] += 1;
        plus[w_of[t]] += plus_of[t];
        row.relation_failures += failed_of[t];
    }
    double n = static_cast<double>(trials);
    for (std::size_t w = 0; w < ws; ++w) {
        if (count[w] == 0) {
            continue;
        }
        row.deficit += std::abs(plus[w] - count[w] / 2) / n;
        row.noise_floor += std::sqrt(count[w] / (2 * std::numbers::pi)) / n;
    }
    if (deterministic) {
        double sum = 0;
        for (int d = 0; d < m; ++d) {
            double p = selection == GhzSelection::steered ? steered_selection_probability(m, epsilon, d)
                                                          : 1.0 / static_cast<double>(m);
            sum += p / 2;
        }
        row.predicted = sum / m;
    }
    return row;
}

}  // namespace randamp
