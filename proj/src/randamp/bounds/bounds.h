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

#ifndef RANDAMP_BOUNDS_BOUNDS_H
#define RANDAMP_BOUNDS_BOUNDS_H

#include <vector>

#include "randamp/chained/chained.h"
#include "randamp/dist/w_family.h"
#include "randamp/sources/sv_source.h"
#include "randamp/util/rng.h"

namespace randamp {

/// min over neighbouring (a', b') and w' of P(w'|a'b') / P(w'|ab).
/// Pairs with both sides zero are skipped; a zero denominator under a nonzero numerator throws.
double q_factor(const WFamily &family, int a, int b);

/// Exact D(P_{XW|ab}, U x P_{W|ab}). Throws if any per-w box signals.
double measured_freedom_deficit(const WFamily &family, int a, int b);

struct FreedomBoundReport {
    int a = 0;
    int b = 0;
    double I_N = 0;
    double q = 0;
    double lhs = 0;
    /// I_N / (2q); infinite when q = 0.
    double rhs = 0;
    double margin = 0;

    bool holds(double tol = 1e-9) const {
        return lhs <= rhs + tol;
    }
};

/// One report per setting pair (all N^2 of them), in (a, b) order.
std::vector<FreedomBoundReport> lemma1_check(const WFamily &family);

/// Smallest I_N(P_w) - 2 D(P_{X|a,w}, U) over w and every setting a of the first party.
double chain_inequality_margin(const WFamily &family);

/// Weights P_{W|ab} induced by settings drawn from an SV source with r bits per side.
WFamily sv_family(std::vector<ConditionalDist> boxes, std::span<const double> prior, const SVSourceModel &source,
                  int r);

/// ((1 - 2ε) / (1 + 2ε))^{2r}: the lower bound on q when settings come from an SV source.
double sv_q_lower_bound(double epsilon, int r);

struct Theorem1Bound {
    double bound = 0;
    /// 2^r ((1+2ε)/(1-2ε))^{2r} sin^2(pi / 2^{r+2}); never above bound.
    double pre_bound = 0;
};

/// (pi^2/16) ((1+2ε) / (sqrt(2)(1-2ε)))^{2r}.
Theorem1Bound theorem1_bound(double epsilon, int r);

/// (1+2ε) / (sqrt(2)(1-2ε)); the bound decays in r iff this is below one.
double theorem1_base(double epsilon);

/// (sqrt(2) - 1)^2 / 2.
double amplification_threshold();

/// Minimal r with theorem1_bound(ε, r) <= ε'. Throws at or above the threshold.
int select_r(double epsilon, double epsilon_prime);

/// Random per-w no-signalling family on the chained settings for N in {2, 3}.
/// Boxes are convex mixtures of local deterministic boxes and nonlocal extremals
/// (PR-type boxes for N = 2, the zero-I_N chained box for N = 3); weights come from
/// random setting likelihoods and a random prior via Bayes' rule.
WFamily random_no_signalling_family(int n, Rng &rng);

/// The 8 PR-type boxes x xor y = ab xor alpha a xor beta b xor gamma on N = 2 chained settings.
std::vector<ConditionalDist> pr_boxes();

/// All 4^N local deterministic boxes on the chained settings.
std::vector<ConditionalDist> local_chained_boxes(int n);

}  // namespace randamp

#endif
