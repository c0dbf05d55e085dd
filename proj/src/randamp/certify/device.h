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

#ifndef RANDAMP_CERTIFY_DEVICE_H
#define RANDAMP_CERTIFY_DEVICE_H

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "randamp/dist/conditional_dist.h"
#include "randamp/util/rng.h"

namespace randamp {

/// Produces (x, y) for one round given the hidden value, the round index and the settings.
using Responder = std::function<std::pair<int, int>(std::size_t w, std::size_t round, int a, int b, Rng &rng)>;

/// A bipartite device on chained settings with a declared per-w behaviour P_{XY|AB,w}.
class DeviceModel {
   public:
    /// Registers a device; every declared box must be a chained box and no-signalling.
    DeviceModel(std::string name, std::vector<ConditionalDist> declared, Responder responder);

    /// Device that samples each round independently from its declared box for w.
    static DeviceModel from_family(std::string name, std::vector<ConditionalDist> declared);

    const std::string &name() const {
        return name_;
    }
    int n() const {
        return n_;
    }
    std::size_t w_count() const {
        return declared_.size();
    }
    const ConditionalDist &declared(std::size_t w) const {
        return declared_.at(w);
    }
    const std::vector<ConditionalDist> &declared() const {
        return declared_;
    }
    /// Queries the responder; outputs outside {+1, -1} throw ContractViolation.
    std::pair<int, int> respond(std::size_t w, std::size_t round, int a, int b, Rng &rng) const;

   private:
    std::string name_;
    int n_ = 0;
    std::vector<ConditionalDist> declared_;
    Responder responder_;
};

/// i.i.d. rounds from the quantum chained box, trivial W.
DeviceModel honest_quantum_device(int n);

/// X = Y on every round with X uniform, trivial W.
DeviceModel all_equal_device(int n);

/// Draws an output index of row `input` by inverting the cumulative table.
std::size_t sample_row(const ConditionalDist &box, std::size_t input, Rng &rng);

struct DeviceAudit {
    std::size_t samples = 0;
    double max_abs_z = 0;
    double chi_square = 0;
    std::size_t dof = 0;
    /// A cell beyond 4 sigma, an impossible outcome observed, or a chi-square far above its dof.
    bool flagged = false;
};

/// Compares empirical per-(a, b) output frequencies of the responder with the declared box for w.
DeviceAudit audit_device(const DeviceModel &device, std::size_t w, std::size_t samples_per_input, std::uint64_t seed);

}  // namespace randamp

#endif
