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

#ifndef RANDAMP_SOURCES_CORRELATED_H
#define RANDAMP_SOURCES_CORRELATED_H

#include <cstddef>
#include <cstdint>
#include <span>

#include "randamp/dist/dist.h"
#include "randamp/sources/sv_source.h"

namespace randamp {

/// Joint law of one (first, second) bit pair, labels 2 * first + second:
/// first has P(0) = 1/2 + ε, second equals first with probability 1/2 + ε.
Dist correlated_pair_box(double epsilon);

/// Inner product over GF(2). Throws PreconditionError on length mismatch.
int gf2_inner_product(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

struct ExtractorDemoResult {
    std::size_t trials = 0;
    std::size_t length = 0;
    double p_zero = 0;
    /// |P(output = 0) - 1/2| estimated from the trials.
    double deficit = 0;
    /// Expected deficit of a perfectly uniform output with this many trials.
    double noise_floor = 0;
};

/// Both strings drawn from independent SV sources (w = 0 for each).
ExtractorDemoResult independent_inner_product_demo(const SVSourceModel &first, const SVSourceModel &second,
                                                   std::size_t length, std::size_t trials, std::uint64_t seed);

enum class Correlation {
    /// Each (first_j, second_j) pair follows correlated_pair_box, pairs i.i.d.
    pairwise,
    /// second_j leans toward keeping the running inner product at 0 whenever first_j = 1.
    adaptive,
};

/// One SV source emitting first_0, second_0, first_1, second_1, ...; the two strings are the
/// even and odd positions. Every bit is audited against the SV condition on the full history.
SVSourceModel interleaved_source(double epsilon, Correlation mode);

ExtractorDemoResult correlated_inner_product_demo(double epsilon, Correlation mode, std::size_t length,
                                                  std::size_t trials, std::uint64_t seed);

/// Expected |empirical P(0) - 1/2| for a fair bit over n trials, about 1 / sqrt(2 pi n).
double fair_bit_noise_floor(std::size_t trials);

}  // namespace randamp

#endif
