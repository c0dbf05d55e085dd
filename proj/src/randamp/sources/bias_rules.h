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

#ifndef RANDAMP_SOURCES_BIAS_RULES_H
#define RANDAMP_SOURCES_BIAS_RULES_H

#include <cstdint>
#include <string>
#include <vector>

#include "randamp/chained/chained.h"
#include "randamp/sources/sv_source.h"

namespace randamp {

SVSourceModel unbiased_source();

/// Every bit has P(0) = bias, independent of w and history; requires |bias - 1/2| <= ε.
SVSourceModel constant_source(double epsilon, double bias);

/// P(0) = 1/2 + ε after an even number of ones, 1/2 - ε after an odd number.
SVSourceModel history_parity_source(double epsilon);

/// 2r-bit setting string (A index then B index, big-endian) for a chained pair.
std::uint64_t setting_bits(int a, int b, int r);

/// Designated pair for each w: the 2N neighbouring pairs in lexicographic order.
std::vector<ChainTerm> designated_pairs(int r);

/// Each setting bit leans away from the designated pair's bit, independent of history.
/// P(designated pair | w) = (1/2 - ε)^{2r}; other pairs are not balanced.
SVSourceModel worst_case_pair_source(double epsilon, int r);

/// Leans away from the designated pair along its path and picks the off-path bias at every node
/// so that the marginal over settings is exactly uniform once w is averaged out.
/// Throws PreconditionError if no such biases exist within [1/2 - ε, 1/2 + ε].
SVSourceModel balanced_pair_source(double epsilon, int r);

/// Names: unbiased, constant:<bias>, history-parity, worst-case-pair, balanced-pair.
SVSourceModel parse_source(const std::string &id, double epsilon, int r);

}  // namespace randamp

#endif
