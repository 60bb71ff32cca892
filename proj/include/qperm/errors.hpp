// Copyright 2026 The qperm Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qperm {

/// Bad sizes, non-prime moduli, out-of-range digits and similar caller errors.
class InvalidArgument : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed permutation, bank or Cayley-table input.
class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A measured candidate failed its classical check, or a simulation produced
/// amplitudes that disagree with the analytic prediction.
class VerificationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace qperm
