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

#include "randamp/certify/protocol.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "randamp/chained/chained.h"
#include "randamp/util/errors.h"
#include "randamp/util/parallel.h"

namespace randamp {

int ProtocolParams::default_rounds(int n) {
    return static_cast<int>(std::lround(std::pow(static_cast<double>(n), 2.5)));
}

ProtocolParams ProtocolParams::standard(int n) {
    return with_rounds(n, default_rounds(n));
}

ProtocolParams ProtocolParams::with_rounds(int n, int m) {
    require(n >= 2 && std::has_single_bit(static_cast<unsigned>(n)), "protocol needs N a power of two, N >= 2");
    require(n <= 1024, "protocol supports N <= 1024");
    require(m >= 1, "protocol needs M >= 1");
    ProtocolParams p;
    p.n = n;
    p.r = std::countr_zero(static_cast<unsigned>(n));
    p.m = m;
    double nd = static_cast<double>(n);
    p.s_min = m / nd;
    p.s_max = m / std::pow(nd, 0.75);
    p.i_star = std::pow(nd, -0.25);
    return p;
}

std::string ProtocolParams::warning() const {
    int def = default_rounds(n);
    if (m < def) {
        return "M=" + std::to_string(m) + " is below N^{5/2}=" + std::to_string(def) +
               "; scaling claims do not apply";
    }
    return {};
}

std::string to_string(AbortReason reason) {
    switch (reason) {
        case AbortReason::none:
            return "none";
        case AbortReason::size_window:
            return "size-window";
        case AbortReason::check_failure:
            return "check-failure";
    }
    return "unknown";
}

ProtocolResult run_protocol(const ProtocolParams &params, const DeviceModel &device, const SVSourceModel &source,
                            std::size_t w, Rng &rng, bool keep_transcript) {
    require(device.n() == params.n, "device and protocol disagree on N");
    ChainedSettings settings(params.n);
    ProtocolResult result;
    result.w = w;
    SVSource bits(source, w);
    std::vector<std::size_t> kept_rounds;
    std::vector<int> kept_x;
    for (std::size_t q = 0; q < static_cast<std::size_t>(params.m); ++q) {
        SettingsPair s = draw_settings(bits, params.r, rng);
        auto [x, y] = device.respond(w, q, s.a, s.b, rng);
        RoundRecord rec{s.a, s.b, x, y, settings.is_neighbouring(s.a, s.b), true};
        if (rec.kept) {
            bool violated = settings.is_wrap_around(s.a, s.b) ? x == y : x != y;
            rec.check_ok = !violated;
            result.violations += violated;
            kept_rounds.push_back(q);
            kept_x.push_back(x);
        }
        if (keep_transcript) {
            result.transcript.push_back(rec);
        }
    }
    result.kept_count = kept_rounds.size();
    double size = static_cast<double>(result.kept_count);
    if (size < params.s_min || size > params.s_max) {
        result.aborted = true;
        result.abort_reason = AbortReason::size_window;
        return result;
    }
    SVSource chooser(source, w);
    std::size_t f = chooser.next_index(kept_rounds.size(), rng);
    result.final_index = f;
    result.final_round = kept_rounds[f];
    if (result.violations > 0) {
        result.aborted = true;
        result.abort_reason = AbortReason::check_failure;
        return result;
    }
    result.final_bit = kept_x[f];
    return result;
}

namespace {

std::size_t pick_w(const std::vector<double> &cumulative, Rng &rng) {
    if (cumulative.size() <= 1) {
        return 0;
    }
    double u = uniform01(rng) * cumulative.back();
    for (std::size_t w = 0; w < cumulative.size(); ++w) {
        if (u < cumulative[w]) {
            return w;
        }
    }
    return cumulative.size() - 1;
}

}  // namespace

std::vector<ProtocolResult> run_trials(const ProtocolParams &params, const DeviceModel &device,
                                       const SVSourceModel &source, const TrialConfig &config,
                                       bool keep_transcript) {
    require(config.trials >= 1, "need at least one trial");
    std::vector<double> prior = config.prior;
    if (prior.empty()) {
        prior.assign(device.w_count(), 1.0 / static_cast<double>(device.w_count()));
    }
    require(prior.size() == device.w_count(), "prior must have one weight per device w");
    std::vector<double> cumulative(prior.size());
    double acc = 0;
    for (std::size_t w = 0; w < prior.size(); ++w) {
        require(prior[w] >= 0, "prior weights must be non-negative");
        acc += prior[w];
        cumulative[w] = acc;
    }
    require(std::abs(acc - 1.0) <= 1e-9, "prior must sum to one");
    std::vector<ProtocolResult> results(config.trials);
    parallel_for(config.trials, [&](std::size_t t) {
        Rng rng = make_stream(config.seed, t);
        std::size_t w = pick_w(cumulative, rng);
        results[t] = run_protocol(params, device, source, w, rng, keep_transcript);
    });
    return results;
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    require(trials > 0, "wilson_interval needs trials > 0");
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

AbortEstimate summarize_aborts(const std::vector<ProtocolResult> &results) {
    require(!results.empty(), "no results to summarize");
    AbortEstimate e;
    e.trials = results.size();
    double sum = 0, sum2 = 0, kept = 0;
    for (const auto &r : results) {
        e.aborted += r.aborted;
        e.size_window += r.abort_reason == AbortReason::size_window;
        e.check_failure += r.abort_reason == AbortReason::check_failure;
        double v = static_cast<double>(r.violations);
        sum += v;
        sum2 += v * v;
        kept += static_cast<double>(r.kept_count);
    }
    double n = static_cast<double>(e.trials);
    e.rate = static_cast<double>(e.aborted) / n;
    e.ci = wilson_interval(e.aborted, e.trials);
    e.mean_violations = sum / n;
    double var = e.trials > 1 ? (sum2 - sum * sum / n) / (n - 1) : 0.0;
    e.violations_stderr = std::sqrt(std::max(var, 0.0) / n);
    e.mean_kept = kept / n;
    return e;
}

AbortEstimate estimate_abort_rate(const ProtocolParams &params, const DeviceModel &device,
                                  const SVSourceModel &source, const TrialConfig &config) {
    require(config.trials >= 100, "estimate_abort_rate needs at least 100 trials");
    return summarize_aborts(run_trials(params, device, source, config));
}

FreedomEstimate final_bit_freedom(const std::vector<ProtocolResult> &results) {
    std::size_t ws = 0;
    for (const auto &r : results) {
        ws = std::max(ws, r.w + 1);
    }
    std::vector<double> count(ws, 0.0), plus(ws, 0.0);
    FreedomEstimate e;
    for (const auto &r : results) {
        if (!r.final_bit) {
            continue;
        }
        ++e.accepted;
        count[r.w] += 1;
        plus[r.w] += *r.final_bit == kPlus;
    }
    if (e.accepted == 0) {
        throw PreconditionError("no accepted runs");
    }
    double n = static_cast<double>(e.accepted);
    for (std::size_t w = 0; w < ws; ++w) {
        if (count[w] == 0) {
            continue;
        }
        e.deficit += std::abs(plus[w] - count[w] / 2) / n;
        e.noise_floor += std::sqrt(count[w] / (2 * std::numbers::pi)) / n;
    }
    return e;
}

FreedomEstimate estimate_final_bit_freedom(const ProtocolParams &params, const DeviceModel &device,
                                           const SVSourceModel &source, const TrialConfig &config) {
    return final_bit_freedom(run_trials(params, device, source, config));
}

double failure_exponent(double epsilon) {
    return -3.5 * std::log2(0.5 + epsilon) + 2 * std::log2(0.5 - epsilon) - 1.25;
}

std::vector<ExponentRow> failure_exponent_scan(double epsilon, const std::vector<int> &n_list) {
    require(epsilon >= 0 && epsilon <= 0.1, "failure_exponent_scan needs epsilon in [0, 0.1]");
    double lp = std::log2(0.5 + epsilon);
    double lm = std::log2(0.5 - epsilon);
    std::vector<ExponentRow> rows;
    for (int n : n_list) {
        require(n >= 2, "failure_exponent_scan needs N >= 2");
        ExponentRow row;
        double nd = static_cast<double>(n);
        row.n = n;
        row.m = std::pow(nd, 2.5);
        row.i_star = std::pow(nd, -0.25);
        row.detection_count = std::pow(row.m / nd, -lp) * std::pow(nd, -1 - 2 * lp + 2 * lm) * row.i_star;
        row.exponent = failure_exponent(epsilon);
        row.simplified = std::pow(nd, row.exponent);
        row.positive = row.exponent > 0;
        rows.push_back(row);
    }
    return rows;
}

double failure_exponent_root(double tol) {
    double lo = 0.0, hi = 0.1;
    require(failure_exponent(lo) > 0 && failure_exponent(hi) < 0, "exponent does not change sign on [0, 0.1]");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (failure_exponent(mid) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace randamp
