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

#include "randamp/sources/sv_source.h"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "randamp/util/errors.h"

namespace randamp {
namespace {

constexpr double kAuditTolerance = 1e-12;
constexpr std::size_t kMaxRejections = 100000;

}  // namespace

SVSourceModel::SVSourceModel(double epsilon, BiasRule rule, std::string name)
    : epsilon_(epsilon), rule_(std::move(rule)), name_(std::move(name)) {
    require(epsilon >= 0 && epsilon < 0.5, "SV source needs 0 <= epsilon < 1/2");
    require(static_cast<bool>(rule_), "SV source needs a bias rule");
}

double SVSourceModel::audited_bias(std::size_t w, std::span<const std::uint8_t> history) const {
    double bias = rule_(w, history);
    if (!(bias >= 0.5 - epsilon_ - kAuditTolerance && bias <= 0.5 + epsilon_ + kAuditTolerance)) {
        std::ostringstream msg;
        msg << "bias rule '" << name_ << "' returned " << bias << " at position " << history.size()
            << ", outside [" << 0.5 - epsilon_ << ", " << 0.5 + epsilon_ << "]";
        throw ContractViolation(msg.str());
    }
    return bias;
}

SVSource::SVSource(const SVSourceModel &model, std::size_t w) : model_(&model), w_(w) {
}

std::uint8_t SVSource::next(Rng &rng) {
    double bias = model_->audited_bias(w_, history_.view());
    std::uint8_t bit = bernoulli(rng, bias) ? 0 : 1;
    history_.bits.push_back(bit);
    biases_.push_back(bias);
    return bit;
}

std::uint64_t SVSource::next_bits(int k, Rng &rng) {
    std::uint64_t v = 0;
    for (int i = 0; i < k; ++i) {
        v = (v << 1) | next(rng);
    }
    return v;
}

std::size_t SVSource::next_index(std::size_t n, Rng &rng) {
    require(n > 0, "next_index: empty range");
    int k = 0;
    while ((std::size_t{1} << k) < n) {
        ++k;
    }
    for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
        std::uint64_t v = next_bits(k, rng);
        if (v < n) {
            return static_cast<std::size_t>(v);
        }
    }
    throw ContractViolation("next_index: rejection sampling did not terminate");
}

BitHistory sample_bits(const SVSourceModel &model, std::size_t n, std::size_t w, Rng &rng) {
    require(n >= 1, "sample_bits needs n >= 1");
    SVSource source(model, w);
    for (std::size_t i = 0; i < n; ++i) {
        source.next(rng);
    }
    return source.history();
}

SettingsPair draw_settings(SVSource &source, int r, Rng &rng) {
    int i = static_cast<int>(source.next_bits(r, rng));
    int j = static_cast<int>(source.next_bits(r, rng));
    return {2 * i, 2 * j + 1};
}

PairDist::PairDist(int r, std::vector<double> probs) : r_(r), probs_(std::move(probs)) {
    require(r >= 0 && r <= 12, "PairDist: r out of range");
    require(probs_.size() == static_cast<std::size_t>(n()) * n(), "PairDist: wrong table size");
}

double PairDist::min() const {
    return *std::min_element(probs_.begin(), probs_.end());
}

double PairDist::max() const {
    return *std::max_element(probs_.begin(), probs_.end());
}

Dist PairDist::as_dist() const {
    LabelSet labels(probs_.size());
    std::iota(labels.begin(), labels.end(), 0);
    return Dist(std::move(labels), probs_);
}

PairDist settings_weight(const SVSourceModel &model, int r, std::size_t w) {
    require(r >= 1 && r <= 10, "settings_weight needs 1 <= r <= 10");
    const int depth = 2 * r;
    std::vector<double> probs(std::size_t{1} << depth, 0.0);
    std::vector<std::uint8_t> history;
    history.reserve(depth);
    // Depth-first walk of the bit tree; the leaf index is the 2r-bit string (A index, then B index).
    auto walk = [&](auto &&self, double mass, std::size_t prefix) -> void {
        if (static_cast<int>(history.size()) == depth) {
            probs[prefix] += mass;
            return;
        }
        double p0 = model.audited_bias(w, history);
        for (std::uint8_t bit : {std::uint8_t{0}, std::uint8_t{1}}) {
            double p = bit == 0 ? p0 : 1.0 - p0;
            history.push_back(bit);
            self(self, mass * p, (prefix << 1) | bit);
            history.pop_back();
        }
    };
    walk(walk, 1.0, 0);
    return PairDist(r, std::move(probs));
}

}  // namespace randamp
