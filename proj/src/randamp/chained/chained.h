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

#ifndef RANDAMP_CHAINED_CHAINED_H
#define RANDAMP_CHAINED_CHAINED_H

#include <cstdint>
#include <vector>

#include "randamp/dist/conditional_dist.h"

namespace randamp {

/// One of the 2N terms of the chained Bell quantity.
///
/// Neighbouring pairs (|a - b| = 1) contribute P(X != Y | a, b); the wrap-around pair
/// (a0, b0) = (0, 2N - 1) contributes P(X = Y | a0, b0). \`violated\` says whether an observed
/// outcome pair counts towards the term.
struct ChainTerm {
    int a = 0;
    int b = 0;
    bool wrap_around = false;

    bool violated(int x, int y) const {
        return wrap_around ? x == y : x != y;
    }
    bool operator==(const ChainTerm &) const = default;
};

/// Settings A in {0, 2, ..., 2N-2} and B in {1, 3, ..., 2N-1}, indexed by i = a / 2, j = (b - 1) / 2.
class ChainedSettings {
   public:
    explicit ChainedSettings(int n);

    int n() const {
        return n_;
    }
    static constexpr int a_of(int index) {
        return 2 * index;
    }
    static constexpr int b_of(int index) {
        return 2 * index + 1;
    }
    LabelSet a_values() const;
    LabelSet b_values() const;
    /// The 2N terms in chain order (0,1), (2,1), (2,3), ..., (2N-2, 2N-1), then (0, 2N-1).
    const std::vector<ChainTerm> &terms() const {
        return terms_;
    }
    /// The terms sorted by (a, b); the wrap-around term sorts after a plain term on the same pair.
    std::vector<ChainTerm> terms_lexicographic() const;
    bool is_neighbouring(int a, int b) const;
    bool is_wrap_around(int a, int b) const {
        return a == 0 && b == 2 * n_ - 1;
    }
    /// Input and output spaces of a bipartite chained box.
    std::vector<LabelSet> input_spaces() const;
    static std::vector<LabelSet> output_spaces();
    /// Throws unless the box has this setting/outcome layout.
    void check_box(const ConditionalDist &box) const;

   private:
    int n_;
    std::vector<ChainTerm> terms_;
};

/// Outcome labels; index 0 is +1 and index 1 is -1 in every chained box.
inline constexpr int kPlus = +1;
inline constexpr int kMinus = -1;

/// I_N = P(X=Y | a0, b0) + sum over |a-b|=1 of P(X != Y | a, b).
double chained_value(const ConditionalDist &box, const ChainedSettings &settings);

/// Outcome statistics of the maximally entangled pair measured at angles θ = π·setting / 2N.
/// P(X != Y | a, b) = sin²((θ_a − θ_b) / 2), with uniform single-party marginals.
ConditionalDist quantum_chained_box(int n);

/// 2N sin²(π / 4N).
double quantum_closed_form(int n);

/// No-signalling box with I_N = 0: perfectly correlated uniform outcomes on neighbouring pairs,
/// anti-correlated on (a0, b0), independent uniform elsewhere.
ConditionalDist extremal_chained_box(int n);

/// A local deterministic strategy: x(a) and y(b) in {+1, -1}, indexed by setting index.
struct DeterministicStrategy {
    std::vector<int> x_of_a;
    std::vector<int> y_of_b;

    int x(int a) const {
        return x_of_a.at(a / 2);
    }
    int y(int b) const {
        return y_of_b.at((b - 1) / 2);
    }
    ConditionalDist to_box() const;
    /// Number of chained terms the strategy violates (its I_N value).
    int violated_terms(const ChainedSettings &settings) const;
};

/// Strategy violating \`term\` and satisfying every other chained term; cuts the setting cycle at
/// that term and propagates outcomes around it.
DeterministicStrategy staircase_strategy(const ChainedSettings &settings, const ChainTerm &term);

struct ClassicalMinimum {
    double value = 0;
    DeterministicStrategy argmin;
};

inline constexpr int kMaxEnumerationN = 12;

/// Exhaustive minimum of I_N over all 2^{2N} deterministic strategies (N ≤ 12).
ClassicalMinimum classical_min_chained(int n);

}  // namespace randamp

#endif
