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

#ifndef RANDAMP_CERTIFY_PROTOCOL_H
#define RANDAMP_CERTIFY_PROTOCOL_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "randamp/certify/device.h"
#include "randamp/sources/sv_source.h"
#include "randamp/util/rng.h"

namespace randamp {

struct ProtocolParams {
    int r = 0;
    int n = 0;
    int m = 0;
    double s_min = 0;
    double s_max = 0;
    double i_star = 0;

    /// N = 2^r, M = round(N^{5/2}), window [M/N, M/N^{3/4}], I* = N^{-1/4}.
    static ProtocolParams standard(int n);
    /// Same window formulas with an explicit M.
    static ProtocolParams with_rounds(int n, int m);
    static int default_rounds(int n);
    /// Non-empty when M is below the default; the scaling claims only hold at the default.
    std::string warning() const;
};

enum class AbortReason { none, size_window, check_failure };

std::string to_string(AbortReason reason);

struct RoundRecord {
    int a = 0;
    int b = 0;
    int x = 0;
    int y = 0;
    bool kept = false;
    bool check_ok = true;
};

struct ProtocolResult {
    std::size_t w = 0;
    bool aborted = false;
    AbortReason abort_reason = AbortReason::none;
    /// Position of f within the kept rounds, and the round it refers to.
    std::optional<std::size_t> final_index;
    std::optional<std::size_t> final_round;
    std::optional<int> final_bit;
    std::vector<RoundRecord> transcript;
    std::size_t kept_count = 0;
    /// Failed checks among the kept rounds, counted even when the size window aborts first.
    std::size_t violations = 0;
};

/// Runs the certification protocol once.
///
/// Settings use r source bits per side per round (A bits then B bits, round-major). The final index
/// is drawn from a fresh source of the same model and w, by rejection sampling.
ProtocolResult run_protocol(const ProtocolParams &params, const DeviceModel &device, const SVSourceModel &source,
                            std::size_t w, Rng &rng, bool keep_transcript = true);

struct TrialConfig {
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    /// P_W over the device's w values; empty means uniform.
    std::vector<double> prior;
};

/// Runs independent trials; trial t uses stream t of the master seed and picks w from the prior.
std::vector<ProtocolResult> run_trials(const ProtocolParams &params, const DeviceModel &device,
                                       const SVSourceModel &source, const TrialConfig &config,
                                       bool keep_transcript = false);

struct WilsonInterval {
    double low = 0;
    double high = 0;
};
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.96);

struct AbortEstimate {
    std::size_t trials = 0;
    std::size_t aborted = 0;
    std::size_t size_window = 0;
    std::size_t check_failure = 0;
    double rate = 0;
    WilsonInterval ci;
    double mean_violations = 0;
    double violations_stderr = 0;
    double mean_kept = 0;
};

AbortEstimate summarize_aborts(const std::vector<ProtocolResult> &results);

/// Requires at least 100 trials.
AbortEstimate estimate_abort_rate(const ProtocolParams &params, const DeviceModel &device,
                                  const SVSourceModel &source, const TrialConfig &config);

struct FreedomEstimate {
    std::size_t accepted = 0;
    /// Empirical D(P_{X_f W | accept}, U x P_{W | accept}).
    double deficit = 0;
    /// Expected deficit of exactly free bits with the same per-w counts.
    double noise_floor = 0;
};

FreedomEstimate final_bit_freedom(const std::vector<ProtocolResult> &results);

/// Throws when every run aborts.
FreedomEstimate estimate_final_bit_freedom(const ProtocolParams &params, const DeviceModel &device,
                                           const SVSourceModel &source, const TrialConfig &config);

/// Exponent of N in the detection-count scaling at M = N^{5/2}, I* = N^{-1/4}:
/// -(7/2) log2(1/2 + ε) + 2 log2(1/2 - ε) - 5/4.
double failure_exponent(double epsilon);

struct ExponentRow {
    int n = 0;
    double m = 0;
    double i_star = 0;
    /// (M/N)^{-log(1/2+ε)} N^{-1-2log(1/2+ε)+2log(1/2-ε)} I*, evaluated term by term.
    double detection_count = 0;
    /// N^{exponent}; equals detection_count up to rounding.
    double simplified = 0;
    double exponent = 0;
    bool positive = false;
};

/// Requires ε in [0, 0.1].
std::vector<ExponentRow> failure_exponent_scan(double epsilon, const std::vector<int> &n_list);

/// Root of failure_exponent in [0, 0.1] by bisection.
double failure_exponent_root(double tol = 1e-12);

}  // namespace randamp

#endif
