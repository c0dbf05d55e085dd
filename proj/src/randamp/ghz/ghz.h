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

#ifndef RANDAMP_GHZ_GHZ_H
#define RANDAMP_GHZ_GHZ_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "randamp/dist/conditional_dist.h"
#include "randamp/sources/sv_source.h"
#include "randamp/util/rng.h"

namespace randamp {

inline constexpr int kMaxGhzParties = 24;

/// Inputs are one bit per party (0 = X basis, 1 = Y basis). Party 1 is the most significant bit of
/// the pattern, so for M = 3 the pattern 0b011 means inputs (0, 1, 1).
struct GhzRelation {
    std::uint32_t pattern = 0;
    /// Required product of the +-1 outcomes.
    int parity = 0;
};

/// Input bit of party i (0-based) in a pattern over m parties.
inline int ghz_input(std::uint32_t pattern, int m, int party) {
    return static_cast<int>((pattern >> (m - 1 - party)) & 1u);
}

/// Every X/Y pattern with an even number k of Y's: parity -1 when k = 0 mod 4, +1 when k = 2 mod 4.
/// These are the certain outcomes for (|0...0> - |1...1>)/sqrt 2.
std::vector<GhzRelation> relations(int m);

/// Parity of the relation for this pattern, or 0 when the pattern has no certain outcome.
int relation_parity(std::uint32_t pattern, int m);

/// x[i][input] in {+1, -1}.
using GhzAssignment = std::vector<std::array<int, 2>>;

GhzAssignment uniform_assignment(int m, int value);
/// Bits 2i and 2i+1 of code give party i's outputs for inputs 0 and 1 (set bit = -1).
GhzAssignment assignment_from_code(int m, std::uint64_t code);

int satisfied_count(const GhzAssignment &assignment, const std::vector<GhzRelation> &rels);

struct ClassicalGhzMaximum {
    int count = 0;
    int total = 0;
    GhzAssignment witness;
};

/// Exhaustive over all 4^M assignments (M <= 8). The witness is the first maximiser in code order,
/// which for M = 3 is all +1.
ClassicalGhzMaximum max_classical_satisfiable(int m = 3);

/// (1/2 - ε)^3.
double detection_probability_lower_bound(double epsilon);

/// Smallest probability that SV-steered inputs hit a relation the assignment fails,
/// minimised over every bias choice of the source.
double worst_case_detection_probability(const GhzAssignment &assignment, double epsilon);

/// The source achieving worst_case_detection_probability for this assignment.
SVSourceModel worst_case_input_source(const GhzAssignment &assignment, double epsilon);

/// Explicit M-party box of the GHZ measurements (M <= 10).
ConditionalDist quantum_ghz_box(int m);

/// Samples outcomes for the given input bits.
std::vector<int> sample_quantum_ghz(std::span<const int> inputs, Rng &rng);

/// Party d outputs values[input]; the others are uniform subject to their product matching the
/// relation selected by their own inputs. No-signalling and satisfies every relation.
ConditionalDist deterministic_party_box(int m, int d, std::array<int, 2> values);

std::vector<int> sample_deterministic_party(std::span<const int> inputs, int d, std::array<int, 2> values,
                                            Rng &rng);

struct DetectionEstimate {
    double rate = 0;
    double sigma = 0;
    std::size_t trials = 0;
};

/// Rounds with inputs drawn from the source (w = 0); counts rounds where the fixed assignment fails a relation.
DetectionEstimate simulate_detection(const GhzAssignment &assignment, const SVSourceModel &inputs,
                                     std::size_t trials, std::uint64_t seed);

enum class GhzAdversary { honest, deterministic_party };
enum class GhzSelection { uniform, steered };

std::string to_string(GhzAdversary adversary);
std::string to_string(GhzSelection selection);

struct ConjectureRow {
    int m = 0;
    GhzAdversary adversary = GhzAdversary::honest;
    GhzSelection selection = GhzSelection::uniform;
    double epsilon = 0;
    std::size_t trials = 0;
    double deficit = 0;
    double noise_floor = 0;
    /// Exact deficit of the selected bit for this adversary (sampling aside).
    double predicted = 0;
    std::size_t relation_failures = 0;
};

/// Exploratory: freedom deficit of the randomly selected output bit against W.
/// The deterministic-party adversary has W = (d, v), party d always outputting v.
ConjectureRow conjecture1_harness(int m, double epsilon, std::size_t trials, std::uint64_t seed,
                                  GhzAdversary adversary, GhzSelection selection = GhzSelection::uniform);

/// P(selected index = target) for an SV chooser that leans toward the target's bits,
/// with ceil(log2 m) bits per attempt and rejection.
double steered_selection_probability(int m, double epsilon, int target);

}  // namespace randamp

#endif
