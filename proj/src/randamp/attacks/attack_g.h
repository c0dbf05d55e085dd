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

#ifndef RANDAMP_ATTACKS_ATTACK_G_H
#define RANDAMP_ATTACKS_ATTACK_G_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include "randamp/certify/device.h"
#include "randamp/chained/chained.h"
#include "randamp/dist/w_family.h"
#include "randamp/sources/sv_source.h"

namespace randamp {

enum class Steering {
    /// Away from the designated pair on its path, balancing biases elsewhere (uniform P_{AB}).
    balanced,
    /// Every bit leans away from the designated pair regardless of history.
    product,
};

/// Classical attack on the chained checks: w names a neighbouring pair, the source makes that pair
/// unlikely, and the box for w is a deterministic strategy failing only the least likely pair.
struct AttackG {
    int r = 0;
    double epsilon = 0;
    Steering steering = Steering::balanced;
    /// Designated pair per w (lexicographic neighbouring pairs).
    std::vector<ChainTerm> designated;
    /// The pair actually failed by w's strategy (least likely under P_{AB|w}, ties to lowest (a, b)).
    std::vector<ChainTerm> failed;
    std::vector<DeterministicStrategy> strategies;
    std::vector<double> prior;
    SVSourceModel source;
    WFamily family;

    int n() const {
        return 1 << r;
    }
};

/// Requires 1 <= r <= 6 and 0 <= ε < 1/2.
AttackG build_attack(int r, double epsilon, Steering steering = Steering::balanced);

/// (1 - 2ε)^{2r}.
double observed_I_closed_form(int r, double epsilon);

/// 2^{r-1} (1/2 - ε)^{2r}: the contribution of one chained term.
double per_pair_term(int r, double epsilon);

/// I_N of the W-averaged box, computed exactly from the family.
double observed_I_exact(const AttackG &attack);

/// 1/2 - (1/sqrt 2)(2 sin^2(pi / 2^{r+2}))^{1/2r}, evaluated in log space.
double feasibility_threshold(int r);

/// 1/2 - 1/(2 sqrt 2).
double limit_threshold();

struct ObservedIEstimate {
    double value = 0;
    /// Per-term binomial errors added in quadrature.
    double sigma = 0;
    std::size_t rounds = 0;
};

/// Each round draws w from the prior, fresh settings from the source, and the strategy's outputs.
ObservedIEstimate simulate_observed_I(const AttackG &attack, std::size_t rounds, std::uint64_t seed);

DeviceModel attack_device(const AttackG &attack);

/// Smallest Σ_terms P(ab|w) [term violated] over all deterministic strategies (N <= 8).
double best_response_value(const PairDist &settings_given_w);

/// The same objective for a given strategy.
double response_value(const PairDist &settings_given_w, const DeterministicStrategy &strategy);

struct AttackScanRow {
    int r = 0;
    double epsilon = 0;
    double observed_I = 0;
    double quantum_I = 0;
    double threshold = 0;
    /// observed_I <= quantum_I.
    bool indistinguishable = false;
};

std::vector<AttackScanRow> attack_scan(const std::vector<int> &r_list, const std::vector<double> &epsilon_grid);

}  // namespace randamp

#endif
