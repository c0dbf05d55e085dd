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

#ifndef RANDAMP_UTIL_RNG_H
#define RANDAMP_UTIL_RNG_H

#include <cstdint>
#include <random>

namespace randamp {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Used to decorrelate derived seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of sub-stream `stream` under `master`.
///
/// Counter-based: seed = splitmix64(splitmix64(master) ^ splitmix64(stream + 1)). The result
/// depends only on (master, stream), so trial i draws the same numbers no matter which
/// thread runs it or in which order trials are scheduled.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(splitmix64(master) ^ splitmix64(stream + 1));
}

inline Rng make_stream(std::uint64_t master, std::uint64_t stream) {
    return Rng(stream_seed(master, stream));
}

/// Uniform double in [0, 1) from the top 53 bits. Portable across standard libraries,
/// unlike std::uniform_real_distribution.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng &rng, double p_true) {
    return uniform01(rng) < p_true;
}

/// Uniform integer in [0, n) by rejection on the top bits; n > 0.
inline std::uint64_t uniform_below(Rng &rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

}  // namespace randamp

#endif
