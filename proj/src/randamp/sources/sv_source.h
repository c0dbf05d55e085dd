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

#ifndef RANDAMP_SOURCES_SV_SOURCE_H
#define RANDAMP_SOURCES_SV_SOURCE_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "randamp/dist/dist.h"
#include "randamp/util/rng.h"

namespace randamp {

/// Bits emitted so far by one source, in causal order (position j holds R_j).
struct BitHistory {
    std::vector<std::uint8_t> bits;

    std::size_t size() const {
        return bits.size();
    }
    std::span<const std::uint8_t> view() const {
        return bits;
    }
};

/// P(next bit = 0) as a deterministic function of the hidden value w and the bits emitted so far.
/// Randomized adversaries are modelled by enlarging W.
using BiasRule = std::function<double(std::size_t w, std::span<const std::uint8_t> history)>;

/// A Santha-Vazirani source: every bit has conditional bias in [1/2 - ε, 1/2 + ε].
class SVSourceModel {
   public:
    SVSourceModel(double epsilon, BiasRule rule, std::string name = "custom");

    double epsilon() const {
        return epsilon_;
    }
    const std::string &name() const {
        return name_;
    }
    /// The rule's bias, checked against [1/2 - ε, 1/2 + ε]; throws ContractViolation otherwise.
    double audited_bias(std::size_t w, std::span<const std::uint8_t> history) const;

   private:
    double epsilon_;
    BiasRule rule_;
    std::string name_;
};

/// One run's stateful view of a source. Single owner; append-only history.
class SVSource {
   public:
    SVSource(const SVSourceModel &model, std::size_t w);

    std::uint8_t next(Rng &rng);
    /// k bits read big-endian into an integer.
    std::uint64_t next_bits(int k, Rng &rng);
    /// Uniform-looking index in [0, n): reads ceil(log2 n) bits and rejects values >= n.
    std::size_t next_index(std::size_t n, Rng &rng);

    const BitHistory &history() const {
        return history_;
    }
    /// Conditional bias used for each emitted bit, aligned with history().
    const std::vector<double> &biases() const {
        return biases_;
    }

   private:
    const SVSourceModel *model_;
    std::size_t w_;
    BitHistory history_;
    std::vector<double> biases_;
};

/// n bits from a fresh source; reproducible for a fixed rng state.
BitHistory sample_bits(const SVSourceModel &model, std::size_t n, std::size_t w, Rng &rng);

/// Chained settings drawn from r source bits per side: A bits first, then B bits, each big-endian.
struct SettingsPair {
    int a = 0;
    int b = 0;
};
SettingsPair draw_settings(SVSource &source, int r, Rng &rng);

/// Exact distribution P_{AB|w} over the N x N chained setting pairs (N = 2^r).
class PairDist {
   public:
    PairDist(int r, std::vector<double> probs);

    int r() const {
        return r_;
    }
    int n() const {
        return 1 << r_;
    }
    double operator()(int a, int b) const {
        return probs_[(a / 2) * n() + (b - 1) / 2];
    }
    std::span<const double> probs() const {
        return probs_;
    }
    double min() const;
    double max() const;
    /// Labels are i * N + j for setting indices (i, j).
    Dist as_dist() const;

   private:
    int r_;
    std::vector<double> probs_;
};

/// Enumerates every 2r-bit history the rule can produce for this w, starting from an empty history.
PairDist settings_weight(const SVSourceModel &model, int r, std::size_t w);

}  // namespace randamp

#endif
