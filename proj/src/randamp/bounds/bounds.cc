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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "randamp/dist/no_signalling.h"
#include "randamp/util/errors.h"

namespace randamp {
namespace {

std::size_t pair_index(const WFamily &family, int a, int b) {
    const Label labels[2] = {a, b};
    return family.inputs().index_of(labels);
}

int chained_n(const WFamily &family) {
    require(family.inputs().arity() == 2, "chained family must be bipartite");
    int n = static_cast<int>(family.inputs().spaces()[0].size());
    ChainedSettings settings(n);
    for (const auto &box : family.boxes()) {
        settings.check_box(box);
    }
    return n;
}

// P(X = +1 | input, w) from a bipartite box with outputs (x, y), x most significant.
double p_x_plus(const ConditionalDist &box, std::size_t input) {
    auto row = box.row(input);
    return row[0] + row[1];
}

double deficit_unchecked(const WFamily &family, std::size_t input) {
    std::vector<double> table;
    std::size_t ws = family.w_count();
    table.assign(2 * ws, 0.0);
    for (std::size_t w = 0; w < ws; ++w) {
        double pw = family.weight(input, w);
        double px = p_x_plus(family.box(w), input);
        table[w] = pw * px;
        table[ws + w] = pw * (1.0 - px);
    }
    LabelSet g(ws);
    for (std::size_t w = 0; w < ws; ++w) {
        g[w] = static_cast<Label>(w);
    }
    return epsilon_free_deficit(JointDist({kPlus, kMinus}, std::move(g), std::move(table)));
}

void require_no_signalling(const WFamily &family) {
    auto report = check_family_no_signalling(family);
    if (!report.ok) {
        throw PreconditionError("family signals: max violation " + std::to_string(report.max_violation));
    }
}

double q_unchecked(const WFamily &family, const ChainedSettings &settings, std::size_t input) {
    double q = std::numeric_limits<double>::infinity();
    for (const ChainTerm &t : settings.terms()) {
        std::size_t other = pair_index(family, t.a, t.b);
        for (std::size_t w = 0; w < family.w_count(); ++w) {
            double num = family.weight(other, w);
            double den = family.weight(input, w);
            if (den == 0) {
                if (num == 0) {
                    continue;
                }
                throw PreconditionError("q undefined: P(w|ab) = 0 where a neighbouring pair has P(w|a'b') > 0");
            }
            q = std::min(q, num / den);
        }
    }
    return q;
}

}  // namespace

double q_factor(const WFamily &family, int a, int b) {
    ChainedSettings settings(chained_n(family));
    return q_unchecked(family, settings, pair_index(family, a, b));
}

double measured_freedom_deficit(const WFamily &family, int a, int b) {
    chained_n(family);
    require_no_signalling(family);
    return deficit_unchecked(family, pair_index(family, a, b));
}

std::vector<FreedomBoundReport> lemma1_check(const WFamily &family) {
    ChainedSettings settings(chained_n(family));
    require_no_signalling(family);
    double i_n = chained_value(average_family(family), settings);
    std::vector<FreedomBoundReport> out;
    for (int a : settings.a_values()) {
        for (int b : settings.b_values()) {
            std::size_t input = pair_index(family, a, b);
            FreedomBoundReport r;
            r.a = a;
            r.b = b;
            r.I_N = i_n;
            r.q = q_unchecked(family, settings, input);
            r.lhs = deficit_unchecked(family, input);
            r.rhs = r.q > 0 ? i_n / (2 * r.q) : std::numeric_limits<double>::infinity();
            r.margin = r.rhs - r.lhs;
            out.push_back(r);
        }
    }
    return out;
}

double chain_inequality_margin(const WFamily &family) {
    ChainedSettings settings(chained_n(family));
    require_no_signalling(family);
    double margin = std::numeric_limits<double>::infinity();
    for (const auto &box : family.boxes()) {
        double i_n = chained_value(box, settings);
        for (int a : settings.a_values()) {
            const Label labels[2] = {a, 1};
            double px = p_x_plus(box, box.inputs().index_of(labels));
            double d = std::abs(px - 0.5);
            margin = std::min(margin, i_n - 2 * d);
        }
    }
    return margin;
}

WFamily sv_family(std::vector<ConditionalDist> boxes, std::span<const double> prior, const SVSourceModel &source,
                  int r) {
    require(prior.size() == boxes.size(), "sv_family: one prior weight per box");
    std::vector<std::vector<double>> likelihood;
    for (std::size_t w = 0; w < boxes.size(); ++w) {
        PairDist pd = settings_weight(source, r, w);
        likelihood.emplace_back(pd.probs().begin(), pd.probs().end());
    }
    return WFamily::from_prior(std::move(boxes), prior, likelihood);
}

double sv_q_lower_bound(double epsilon, int r) {
    return std::pow((1 - 2 * epsilon) / (1 + 2 * epsilon), 2 * r);
}

double theorem1_base(double epsilon) {
    return (1 + 2 * epsilon) / (std::numbers::sqrt2 * (1 - 2 * epsilon));
}

Theorem1Bound theorem1_bound(double epsilon, int r) {
    require(epsilon >= 0 && epsilon < 0.5, "theorem1_bound needs 0 <= epsilon < 1/2");
    require(r >= 1, "theorem1_bound needs r >= 1");
    constexpr double pi = std::numbers::pi;
    Theorem1Bound out;
    out.bound = pi * pi / 16 * std::exp(2.0 * r * std::log(theorem1_base(epsilon)));
    double ratio = std::log((1 + 2 * epsilon) / (1 - 2 * epsilon));
    double s = std::sin(pi * std::ldexp(1.0, -(r + 2)));
    out.pre_bound = std::exp(r * std::log(2.0) + 2.0 * r * ratio + 2 * std::log(s));
    return out;
}

double amplification_threshold() {
    double d = std::numbers::sqrt2 - 1;
    return d * d / 2;
}

int select_r(double epsilon, double epsilon_prime) {
    require(epsilon >= 0, "select_r needs epsilon >= 0");
    require(epsilon_prime > 0, "select_r needs epsilon' > 0");
    if (epsilon >= amplification_threshold()) {
        throw PreconditionError("amplification threshold exceeded: epsilon must be below (sqrt(2)-1)^2/2");
    }
    constexpr double pi = std::numbers::pi;
    double log_base = std::log(theorem1_base(epsilon));
    double estimate = std::log(epsilon_prime / (pi * pi / 16)) / (2 * log_base);
    require(estimate < 1e9, "select_r: required r is out of range");
    int r = std::max(1, static_cast<int>(std::ceil(estimate)));
    while (r > 1 && theorem1_bound(epsilon, r - 1).bound <= epsilon_prime) {
        --r;
    }
    while (theorem1_bound(epsilon, r).bound > epsilon_prime) {
        ++r;
    }
    return r;
}

std::vector<ConditionalDist> local_chained_boxes(int n) {
    ChainedSettings settings(n);
    std::vector<ConditionalDist> out;
    const std::uint32_t count = 1u << n;
    for (std::uint32_t xs = 0; xs < count; ++xs) {
        for (std::uint32_t ys = 0; ys < count; ++ys) {
            DeterministicStrategy s;
            for (int i = 0; i < n; ++i) {
                s.x_of_a.push_back(((xs >> i) & 1) ? kMinus : kPlus);
                s.y_of_b.push_back(((ys >> i) & 1) ? kMinus : kPlus);
            }
            out.push_back(s.to_box());
        }
    }
    return out;
}

std::vector<ConditionalDist> pr_boxes() {
    ChainedSettings settings(2);
    std::vector<ConditionalDist> out;
    for (int variant = 0; variant < 8; ++variant) {
        int alpha = variant & 1, beta = (variant >> 1) & 1, gamma = (variant >> 2) & 1;
        std::vector<std::vector<double>> rows;
        for (int ai = 0; ai < 2; ++ai) {
            for (int bj = 0; bj < 2; ++bj) {
                int target = (ai & bj) ^ (alpha & ai) ^ (beta & bj) ^ gamma;
                std::vector<double> row(4);
                for (int xo = 0; xo < 2; ++xo) {
                    for (int yo = 0; yo < 2; ++yo) {
                        row[xo * 2 + yo] = ((xo ^ yo) == target) ? 0.5 : 0.0;
                    }
                }
                rows.push_back(row);
            }
        }
        out.emplace_back(settings.input_spaces(), ChainedSettings::output_spaces(), std::move(rows));
    }
    return out;
}

namespace {

std::vector<double> dirichlet_one(std::size_t k, Rng &rng) {
    std::vector<double> v(k);
    double total = 0;
    for (auto &x : v) {
        x = -std::log(1.0 - uniform01(rng));
        total += x;
    }
    for (auto &x : v) {
        x /= total;
    }
    return v;
}

}  // namespace

WFamily random_no_signalling_family(int n, Rng &rng) {
    require(n == 2 || n == 3, "random_no_signalling_family supports N in {2, 3}");
    ChainedSettings settings(n);
    std::vector<ConditionalDist> extremals = local_chained_boxes(n);
    if (n == 2) {
        auto prs = pr_boxes();
        extremals.insert(extremals.end(), prs.begin(), prs.end());
    } else {
        extremals.push_back(extremal_chained_box(3));
    }
    const std::size_t local_count = static_cast<std::size_t>(1) << (2 * n);
    const std::size_t ws = 1 + uniform_below(rng, 4);
    std::vector<ConditionalDist> boxes;
    for (std::size_t w = 0; w < ws; ++w) {
        std::size_t parts = 1 + uniform_below(rng, 4);
        std::vector<ConditionalDist> chosen;
        for (std::size_t k = 0; k < parts; ++k) {
            // Favour the nonlocal extremals so low-I_N boxes appear often.
            bool nonlocal = uniform01(rng) < 0.5;
            std::size_t idx = nonlocal ? local_count + uniform_below(rng, extremals.size() - local_count)
                                       : uniform_below(rng, local_count);
            chosen.push_back(extremals[idx]);
        }
        boxes.push_back(mixture(chosen, dirichlet_one(parts, rng)));
    }
    std::vector<double> prior = dirichlet_one(ws, rng);
    const std::size_t inputs = static_cast<std::size_t>(n) * n;
    double kappa = 2.0 * uniform01(rng);
    std::vector<std::vector<double>> likelihood(ws, std::vector<double>(inputs));
    for (auto &row : likelihood) {
        double total = 0;
        for (auto &x : row) {
            x = std::exp(kappa * (2 * uniform01(rng) - 1));
            total += x;
        }
        for (auto &x : row) {
            x /= total;
        }
    }
    return WFamily::from_prior(std::move(boxes), prior, likelihood);
}

}  // namespace randamp
