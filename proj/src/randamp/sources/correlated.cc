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

#include "randamp/sources/correlated.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "randamp/util/errors.h"
#include "randamp/util/parallel.h"

namespace randamp {

Dist correlated_pair_box(double epsilon) {
    require(epsilon >= 0 && epsilon < 0.5, "correlated_pair_box needs 0 <= epsilon < 1/2");
    double hi = 0.5 + epsilon;
    double lo = 0.5 - epsilon;
    return Dist({0, 1, 2, 3}, {hi * hi, hi * lo, lo * lo, lo * hi});
}

int gf2_inner_product(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
    require(x.size() == y.size(), "gf2_inner_product: length mismatch");
    int acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc ^= (x[i] & y[i]) & 1;
    }
    return acc;
}

double fair_bit_noise_floor(std::size_t trials) {
    require(trials > 0, "noise floor needs trials > 0");
    return 1.0 / std::sqrt(2.0 * std::numbers::pi * static_cast<double>(trials));
}

namespace {

ExtractorDemoResult summarize(const std::vector<std::uint8_t> &outputs, std::size_t length) {
    std::size_t zeros = 0;
    for (std::uint8_t v : outputs) {
        zeros += v == 0;
    }
    ExtractorDemoResult out;
    out.trials = outputs.size();
    out.length = length;
    out.p_zero = static_cast<double>(zeros) / static_cast<double>(outputs.size());
    out.deficit = std::abs(out.p_zero - 0.5);
    out.noise_floor = fair_bit_noise_floor(outputs.size());
    return out;
}

void check_demo_args(std::size_t length, std::size_t trials) {
    require(length >= 1, "extractor demo needs length >= 1");
    require(trials >= 1, "extractor demo needs trials >= 1");
}

}  // namespace

ExtractorDemoResult independent_inner_product_demo(const SVSourceModel &first, const SVSourceModel &second,
                                                   std::size_t length, std::size_t trials, std::uint64_t seed) {
    check_demo_args(length, trials);
    std::vector<std::uint8_t> outputs(trials);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng1 = make_stream(seed, 2 * t);
        Rng rng2 = make_stream(seed, 2 * t + 1);
        BitHistory x = sample_bits(first, length, 0, rng1);
        BitHistory y = sample_bits(second, length, 0, rng2);
        outputs[t] = static_cast<std::uint8_t>(gf2_inner_product(x.view(), y.view()));
    });
    return summarize(outputs, length);
}

SVSourceModel interleaved_source(double epsilon, Correlation mode) {
    double hi = 0.5 + epsilon;
    double lo = 0.5 - epsilon;
    if (mode == Correlation::pairwise) {
        return SVSourceModel(
            epsilon,
            [hi, lo](std::size_t, std::span<const std::uint8_t> h) {
                if (h.size() % 2 == 0) {
                    return hi;
                }
                return h.back() == 0 ? hi : lo;
            },
            "correlated-pairwise");
    }
    return SVSourceModel(
        epsilon,
        [hi, lo](std::size_t, std::span<const std::uint8_t> h) {
            if (h.size() % 2 == 0) {
                return hi;
            }
            if (h.back() == 0) {
                return hi;
            }
            int parity = 0;
            for (std::size_t i = 0; i + 1 < h.size(); i += 2) {
                parity ^= h[i] & h[i + 1];
            }
            // Favour second_j = parity so the running product returns to 0.
            return parity == 0 ? hi : lo;
        },
        "correlated-adaptive");
}

ExtractorDemoResult correlated_inner_product_demo(double epsilon, Correlation mode, std::size_t length,
                                                  std::size_t trials, std::uint64_t seed) {
    check_demo_args(length, trials);
    SVSourceModel model = interleaved_source(epsilon, mode);
    std::vector<std::uint8_t> outputs(trials);
    parallel_for(trials, [&](std::size_t t) {
        Rng rng = make_stream(seed, t);
        BitHistory joint = sample_bits(model, 2 * length, 0, rng);
        std::vector<std::uint8_t> x(length);
        std::vector<std::uint8_t> y(length);
        for (std::size_t j = 0; j < length; ++j) {
            x[j] = joint.bits[2 * j];
            y[j] = joint.bits[2 * j + 1];
        }
        outputs[t] = static_cast<std::uint8_t>(gf2_inner_product(x, y));
    });
    return summarize(outputs, length);
}

}  // namespace randamp
