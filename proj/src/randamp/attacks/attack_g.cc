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

#include "randamp/attacks/attack_g.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "randamp/bounds/bounds.h"
#include "randamp/sources/bias_rules.h"
#include "randamp/util/errors.h"
#include "randamp/util/parallel.h"

namespace randamp {
namespace {

constexpr int kMaxAttackR = 6;
constexpr std::size_t kChunkRounds = 4096;

SVSourceModel steering_source(int r, double epsilon, Steering steering) {
    return steering == Steering::balanced ? balanced_pair_source(epsilon, r) : worst_case_pair_source(epsilon, r);
}

ChainTerm least_likely_term(const ChainedSettings &settings, const PairDist &pd) {
    auto terms = settings.terms_lexicographic();
    ChainTerm best = terms.front();
    double best_p = pd(best.a, best.b);
    for (const ChainTerm &t : terms) {
        double p = pd(t.a, t.b);
        if (p < best_p - kComparisonTolerance) {
            best = t;
            best_p = p;
        }
    }
    return best;
}

}  // namespace

AttackG build_attack(int r, double epsilon, Steering steering) {
    require(r >= 1 && r <= kMaxAttackR, "build_attack needs 1 <= r <= 6");
    require(epsilon >= 0 && epsilon < 0.5, "build_attack needs 0 <= epsilon < 1/2");
    ChainedSettings settings(1 << r);
    SVSourceModel source = steering_source(r, epsilon, steering);
    std::vector<ChainTerm> designated = designated_pairs(r);
    std::vector<ChainTerm> failed;
    std::vector<DeterministicStrategy> strategies;
    std::vector<ConditionalDist> boxes;
    for (std::size_t w = 0; w < designated.size(); ++w) {
        PairDist pd = settings_weight(source, r, w);
        ChainTerm t = least_likely_term(settings, pd);
        failed.push_back(t);
        strategies.push_back(staircase_strategy(settings, t));
        boxes.push_back(strategies.back().to_box());
    }
    std::vector<double> prior(designated.size(), 1.0 / static_cast<double>(designated.size()));
    WFamily family = sv_family(boxes, prior, source, r);
    return AttackG{r, epsilon, steering, std::move(designated), std::move(failed), std::move(strategies),
                   std::move(prior), std::move(source), std::move(family)};
}

double observed_I_closed_form(int r, double epsilon) {
    require(r >= 1, "observed_I_closed_form needs r >= 1");
    require(epsilon >= 0 && epsilon < 0.5, "observed_I_closed_form needs 0 <= epsilon < 1/2");
    return std::pow(1 - 2 * epsilon, 2 * r);
}

double per_pair_term(int r, double epsilon) {
    return std::ldexp(std::pow(0.5 - epsilon, 2 * r), r - 1);
}

double observed_I_exact(const AttackG &attack) {
    return chained_value(average_family(attack.family), ChainedSettings(attack.n()));
}

double feasibility_threshold(int r) {
    require(r >= 1, "feasibility_threshold needs r >= 1");
    // log(2 sin^2 x) with x = pi 2^{-(r+2)}, split so huge r does not underflow.
    double log_x = std::log(std::numbers::pi) - (r + 2) * std::numbers::ln2;
    double correction = 0;
    if (r < 60) {
        double x = std::ldexp(std::numbers::pi, -(r + 2));
        correction = std::log(std::sin(x) / x);
    } else {
        double x2 = std::exp(2 * log_x);
        correction = -x2 / 6;
    }
    double log_inner = std::numbers::ln2 + 2 * (log_x + correction);
    return 0.5 - std::exp(log_inner / (2.0 * r)) / std::numbers::sqrt2;
}

double limit_threshold() {
    return 0.5 - 1 / (2 * std::numbers::sqrt2);
}

ObservedIEstimate simulate_observed_I(const AttackG &attack, std::size_t rounds, std::uint64_t seed) {
    require(rounds >= 1, "simulate_observed_I needs rounds >= 1");
    ChainedSettings settings(attack.n());
    const auto &terms = settings.terms();
    const std::size_t nt = terms.size();
    std::size_t chunks = (rounds + kChunkRounds - 1) / kChunkRounds;
    // Per chunk: hits and failures per term.
    std::vector<std::vector<double>> hits(chunks, std::vector<double>(nt, 0.0));
    std::vector<std::vector<double>> fails(chunks, std::vector<double>(nt, 0.0));
    std::vector<int> term_of_pair(static_cast<std::size_t>(attack.n()) * attack.n(), -1);
    for (std::size_t k = 0; k < nt; ++k) {
        term_of_pair[(terms[k].a / 2) * attack.n() + (terms[k].b - 1) / 2] = static_cast<int>(k);
    }
    parallel_for(chunks, [&](std::size_t c) {
        Rng rng = make_stream(seed, c);
        std::size_t begin = c * kChunkRounds;
        std::size_t end = std::min(rounds, begin + kChunkRounds);
        for (std::size_t q = begin; q < end; ++q) {
            std::size_t w = uniform_below(rng, attack.prior.size());
            SVSource bits(attack.source, w);
            SettingsPair s = draw_settings(bits, attack.r, rng);
            int k = term_of_pair[(s.a / 2) * attack.n() + (s.b - 1) / 2];
            if (k < 0) {
                continue;
            }
            const DeterministicStrategy &st = attack.strategies[w];
            hits[c][k] += 1;
            fails[c][k] += terms[k].violated(st.x(s.a), st.y(s.b));
        }
    });
    ObservedIEstimate est;
    est.rounds = rounds;
    double var = 0;
    for (std::size_t k = 0; k < nt; ++k) {
        double h = 0, f = 0;
        for (std::size_t c = 0; c < chunks; ++c) {
            h += hits[c][k];
            f += fails[c][k];
        }
        if (h == 0) {
            throw PreconditionError("simulate_observed_I: a chained term was never sampled; increase rounds");
        }
        double p = f / h;
        est.value += p;
        var += std::max(p * (1 - p), 1.0 / (h * h)) / h;
    }
    est.sigma = std::sqrt(var);
    return est;
}

DeviceModel attack_device(const AttackG &attack) {
    return DeviceModel::from_family("attack-g", attack.family.boxes());
}

double response_value(const PairDist &pd, const DeterministicStrategy &strategy) {
    ChainedSettings settings(pd.n());
    double v = 0;
    for (const ChainTerm &t : settings.terms()) {
        if (t.violated(strategy.x(t.a), strategy.y(t.b))) {
            v += pd(t.a, t.b);
        }
    }
    return v;
}

double best_response_value(const PairDist &pd) {
    const int n = pd.n();
    require(n <= 8, "best_response_value enumerates 4^N strategies; needs N <= 8");
    ChainedSettings settings(n);
    double best = std::numeric_limits<double>::infinity();
    const std::uint32_t count = 1u << n;
    DeterministicStrategy s;
    s.x_of_a.assign(n, kPlus);
    s.y_of_b.assign(n, kPlus);
    for (std::uint32_t xs = 0; xs < count; ++xs) {
        for (int i = 0; i < n; ++i) {
            s.x_of_a[i] = ((xs >> i) & 1) ? kMinus : kPlus;
        }
        for (std::uint32_t ys = 0; ys < count; ++ys) {
            for (int i = 0; i < n; ++i) {
                s.y_of_b[i] = ((ys >> i) & 1) ? kMinus : kPlus;
            }
            best = std::min(best, response_value(pd, s));
        }
    }
    return best;
}

std::vector<AttackScanRow> attack_scan(const std::vector<int> &r_list, const std::vector<double> &epsilon_grid) {
    std::vector<AttackScanRow> rows;
    for (int r : r_list) {
        require(r >= 1 && r <= 30, "attack_scan needs 1 <= r <= 30");
        double quantum = quantum_closed_form(1 << r);
        double threshold = feasibility_threshold(r);
        for (double eps : epsilon_grid) {
            AttackScanRow row;
            row.r = r;
            row.epsilon = eps;
            row.observed_I = observed_I_closed_form(r, eps);
            row.quantum_I = quantum;
            row.threshold = threshold;
            row.indistinguishable = row.observed_I <= quantum;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace randamp
