// Copyright 2026 The Symment Authors
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

#ifndef SYMMENT_ERRORS_H
#define SYMMENT_ERRORS_H

#include <stdexcept>
#include <string>

namespace symment {

/// Raised when caller-supplied arguments violate a precondition.
struct InputError : std::invalid_argument {
    explicit InputError(const std::string &msg) : std::invalid_argument(msg) {
    }
};

/// Raised when a computation fails to converge or produces values outside
/// their mathematically guaranteed range by more than round-off.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string &msg) : std::runtime_error(msg) {
    }
};

}  // namespace symment

#endif
