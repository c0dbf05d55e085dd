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

#include "randamp/certify/device.h"

#include <algorithm>
#include <cmath>
#include <memory>

#include "randamp/chained/chained.h"
#include "randamp/dist/no_signalling.h"
#include "randamp/util/errors.h"

namespace randamp {

DeviceModel::DeviceModel(std::string name, std::vector<ConditionalDist> declared, Responder responder)
    : name_(std::move(name)), declared_(std::move(declared)), responder_(std::move(responder)) {
    require(!declared_.empty(), "device must declare at least one box");
    require(static_cast<bool>(responder_), "device needs a responder");
    require(declared_.front().inputs().arity() == 2, "device boxes must be bipartite");
    n_ = static_cast<int>(declared_.front().inputs().spaces()[0].size());
    ChainedSettings settings(n_);
    for (std::size_t w = 0; w < declared_.size(); ++w) {
        settings.check_box(declared_[w]);
        auto report = check_no_signalling(declared_[w]);
        if (!report.ok) {
            throw PreconditionError("device '" + name_ + "' declares a signalling box for w=" + std::to_string(w));
        }
    }
}

DeviceModel DeviceModel::from_family(std::string name, std::vector<ConditionalDist> declared) {
    auto boxes = std::make_shared<const std::vector<ConditionalDist>>(declared);
    Responder responder = [boxes](std::size_t w, std::size_t, int a, int b, Rng &rng) {
        const ConditionalDist &box = boxes->at(w);
        const Label in[2] = {a, b};
        std::size_t o = sample_row(box, box.inputs().index_of(in), rng);
        auto labels = box.outputs().labels_of(o);
        return std::pair<int, int>{labels[0], labels[1]};
    };
    return DeviceModel(std::move(name), std::move(declared), std::move(responder));
}

std::pair<int, int> DeviceModel::respond(std::size_t w, std::size_t round, int a, int b, Rng &rng) const {
    if (w >= declared_.size()) {
        throw ContractViolation("device '" + name_ + "' queried with unknown w");
    }
    auto out = responder_(w, round, a, b, rng);
    auto valid = [](int v) { return v == kPlus || v == kMinus; };
    if (!valid(out.first) || !valid(out.second)) {
        throw ContractViolation("device '" + name_ + "' produced an outcome outside {+1, -1}");
    }
    return out;
}

DeviceModel honest_quantum_device(int n) {
    require(n >= 2, "honest_quantum_device needs N >= 2");
    return DeviceModel::from_family("honest", {quantum_chained_box(n)});
}

DeviceModel all_equal_device(int n) {
    ChainedSettings settings(n);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n) * n, {0.5, 0.0, 0.0, 0.5});
    return DeviceModel::from_family("all-equal",
                                    {ConditionalDist(settings.input_spaces(), ChainedSettings::output_spaces(), rows)});
}

std::size_t sample_row(const ConditionalDist &box, std::size_t input, Rng &rng) {
    auto row = box.row(input);
    double u = uniform01(rng);
    double acc = 0;
    std::size_t last = 0;
    for (std::size_t o = 0; o < row.size(); ++o) {
        if (row[o] <= 0) {
            continue;
        }
        acc += row[o];
        last = o;
        if (u < acc) {
            return o;
        }
    }
    return last;
}

DeviceAudit audit_device(const DeviceModel &device, std::size_t w, std::size_t samples_per_input, std::uint64_t seed) {
    require(samples_per_input >= 1, "audit needs samples");
    const ConditionalDist &box = device.declared(w);
    const std::size_t inputs = box.inputs().count();
    const std::size_t outputs = box.outputs().count();
    Rng rng = make_stream(seed, 0);
    DeviceAudit audit;
    for (std::size_t i = 0; i < inputs; ++i) {
        auto in = box.inputs().labels_of(i);
        std::vector<double> counts(outputs, 0.0);
        for (std::size_t s = 0; s < samples_per_input; ++s) {
            auto [x, y] = device.respond(w, s, in[0], in[1], rng);
            const Label out[2] = {x, y};
            counts[box.outputs().index_of(out)] += 1;
        }
        double n = static_cast<double>(samples_per_input);
        for (std::size_t o = 0; o < outputs; ++o) {
            double p = box.at(i, o);
            double expected = n * p;
            if (p <= 0) {
                if (counts[o] > 0) {
                    audit.flagged = true;
                }
                continue;
            }
            if (p < 1) {
                double z = (counts[o] - expected) / std::sqrt(n * p * (1 - p));
                audit.max_abs_z = std::max(audit.max_abs_z, std::abs(z));
            }
            audit.chi_square += (counts[o] - expected) * (counts[o] - expected) / expected;
            audit.dof += 1;
        }
        audit.dof -= 1;
    }
    audit.samples = samples_per_input * inputs;
    double dof = static_cast<double>(audit.dof);
    if (audit.max_abs_z > 4 || (audit.dof > 0 && audit.chi_square > dof + 4 * std::sqrt(2 * dof))) {
        audit.flagged = true;
    }
    return audit;
}

}  // namespace randamp
