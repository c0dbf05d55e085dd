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

#ifndef RANDAMP_UTIL_ERRORS_H
#define RANDAMP_UTIL_ERRORS_H

#include <stdexcept>
#include <string>

namespace randamp {

/// A caller passed arguments outside an operation's preconditions.
class PreconditionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A pluggable component (bias rule, device) broke the contract it was registered under.
class ContractViolation : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string &message) {
    if (!condition) {
        throw PreconditionError(message);
    }
}

}  // namespace randamp

#endif
