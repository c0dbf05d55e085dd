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

#include "randamp/sources/bias_rules.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

#include "randamp/util/errors.h"

namespace randamp {
namespace {

constexpr int kMaxSteeringR = 8;
constexpr double kFeasibilityTolerance = 1e-12;

int round_position(std::span<const std::uint8_t> history, int depth) {
    return static_cast<int>(history.size() % static_cast<std::size_t>(depth));
}

std::uint64_t round_prefix(std::span<const std::uint8_t> history, int k) {
    std::uint64_t v = 0;
    for (std::size_t i = history.size() - k; i < history.size(); ++i) {
        v = (v << 1) | history[i];
    }
    return v;
}

int target_bit(std::uint64_t target, int depth, int k) {
    return static_cast<int>((target >> (depth - 1 - k)) & 1u);
}

std::vector<std::uint64_t> designated_targets(int r) {
    std::vector<std::uint64_t> out;
    for (const ChainTerm &t : designated_pairs(r)) {
        out.push_back(setting_bits(t.a, t.b, r));
    }
    return out;
}

// Off-path bias per tree node, indexed heap-style: (1 << k) - 1 + prefix.
struct BalancedTable {
    int r = 0;
    double epsilon = 0;
    std::vector<std::uint64_t> targets;
    std::vector<double> beta;
};

std::shared_ptr<const BalancedTable> solve_balanced(double epsilon, int r) {
    auto table = std::make_shared<BalancedTable>();
    table->r = r;
    table->epsilon = epsilon;
    table->targets = designated_targets(r);
    const int depth = 2 * r;
    const std::size_t count = table->targets.size();
    table->beta.assign((std::size_t{1} << depth) - 1, 0.5);
    const double away = 0.5 - epsilon;
    // reach[w] = P(prefix | w) under the uniform prior on w (unnormalized).
    auto walk = [&](auto &&self, int k, std::uint64_t prefix, const std::vector<double> &reach) -> void {
        if (k == depth) {
            return;
        }
        double total = std::accumulate(reach.begin(), reach.end(), 0.0);
        double on_zero = 0;
        double off_mass = 0;
        for (std::size_t w = 0; w < count; ++w) {
            std::uint64_t t = table->targets[w];
            bool on_path = (t >> (depth - k)) == prefix;
            if (on_path) {
                on_zero += reach[w] * (target_bit(t, depth, k) == 0 ? away : 1.0 - away);
            } else {
                off_mass += reach[w];
            }
        }
        double beta = 0.5;
        double need = total / 2 - on_zero;
        if (off_mass > 0) {
            beta = need / off_mass;
        } else if (std::abs(need) > kFeasibilityTolerance * std::max(total, 1e-300)) {
            beta = -1;
        }
        if (!(beta >= 0.5 - epsilon - kFeasibilityTolerance && beta <= 0.5 + epsilon + kFeasibilityTolerance)) {
            std::ostringstream msg;
            msg << "balanced steering infeasible at r=" << r << ", epsilon=" << epsilon;
            throw PreconditionError(msg.str());
        }
        beta = std::clamp(beta, 0.5 - epsilon, 0.5 + epsilon);
        table->beta[(std::size_t{1} << k) - 1 + prefix] = beta;
        for (int bit = 0; bit < 2; ++bit) {
            std::vector<double> child(count);
            for (std::size_t w = 0; w < count; ++w) {
                std::uint64_t t = table->targets[w];
                bool on_path = (t >> (depth - k)) == prefix;
                double p0 = on_path ? (target_bit(t, depth, k) == 0 ? away : 1.0 - away) : beta;
                child[w] = reach[w] * (bit == 0 ? p0 : 1.0 - p0);
            }
            self(self, k + 1, (prefix << 1) | static_cast<std::uint64_t>(bit), child);
        }
    };
    walk(walk, 0, 0, std::vector<double>(count, 1.0 / static_cast<double>(count)));
    return table;
}

void check_w(std::size_t w, std::size_t count) {
    if (w >= count) {
        throw PreconditionError("hidden value w out of range for this source");
    }
}

}  // namespace

SVSourceModel unbiased_source() {
    return SVSourceModel(0.0, [](std::size_t, std::span<const std::uint8_t>) { return 0.5; }, "unbiased");
}

SVSourceModel constant_source(double epsilon, double bias) {
    require(std::abs(bias - 0.5) <= epsilon + 1e-12, "constant bias outside [1/2 - epsilon, 1/2 + epsilon]");
    std::ostringstream name;
    name << "constant:" << bias;
    return SVSourceModel(epsilon, [bias](std::size_t, std::span<const std::uint8_t>) { return bias; }, name.str());
}

SVSourceModel history_parity_source(double epsilon) {
    return SVSourceModel(
        epsilon,
        [epsilon](std::size_t, std::span<const std::uint8_t> history) {
            int ones = 0;
            for (std::uint8_t b : history) {
                ones ^= b;
            }
            return ones == 0 ? 0.5 + epsilon : 0.5 - epsilon;
        },
        "history-parity");
}

std::uint64_t setting_bits(int a, int b, int r) {
    return (static_cast<std::uint64_t>(a / 2) << r) | static_cast<std::uint64_t>((b - 1) / 2);
}

std::vector<ChainTerm> designated_pairs(int r) {
    require(r >= 1 && r <= 10, "designated_pairs needs 1 <= r <= 10");
    return ChainedSettings(1 << r).terms_lexicographic();
}

SVSourceModel worst_case_pair_source(double epsilon, int r) {
    auto targets = std::make_shared<const std::vector<std::uint64_t>>(designated_targets(r));
    const int depth = 2 * r;
    return SVSourceModel(
        epsilon,
        [targets, depth, epsilon](std::size_t w, std::span<const std::uint8_t> history) {
            check_w(w, targets->size());
            int k = round_position(history, depth);
            return target_bit((*targets)[w], depth, k) == 0 ? 0.5 - epsilon : 0.5 + epsilon;
        },
        "worst-case-pair");
}

SVSourceModel balanced_pair_source(double epsilon, int r) {
    require(r >= 1 && r <= kMaxSteeringR, "balanced steering supports 1 <= r <= 8");
    require(epsilon >= 0 && epsilon < 0.5, "balanced steering needs 0 <= epsilon < 1/2");
    auto table = solve_balanced(epsilon, r);
    const int depth = 2 * r;
    return SVSourceModel(
        epsilon,
        [table, depth](std::size_t w, std::span<const std::uint8_t> history) {
            check_w(w, table->targets.size());
            int k = round_position(history, depth);
            std::uint64_t prefix = k == 0 ? 0 : round_prefix(history, k);
            std::uint64_t t = table->targets[w];
            if ((t >> (depth - k)) == prefix) {
                return target_bit(t, depth, k) == 0 ? 0.5 - table->epsilon : 0.5 + table->epsilon;
            }
            return table->beta[(std::size_t{1} << k) - 1 + prefix];
        },
        "balanced-pair");
}

SVSourceModel parse_source(const std::string &id, double epsilon, int r) {
    if (id == "unbiased") {
        return unbiased_source();
    }
    if (id.rfind("constant:", 0) == 0) {
        std::string value = id.substr(9);
        std::size_t used = 0;
        double bias = 0;
        try {
            bias = std::stod(value, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        require(used == value.size() && !value.empty(), "constant:<bias> needs a number");
        return constant_source(epsilon, bias);
    }
    if (id == "history-parity") {
        return history_parity_source(epsilon);
    }
    if (id == "worst-case-pair") {
        return worst_case_pair_source(epsilon, r);
    }
    if (id == "balanced-pair") {
        return balanced_pair_source(epsilon, r);
    }
    throw PreconditionError("unknown bias rule: " + id);
}

}  // namespace randamp
