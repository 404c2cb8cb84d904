// Copyright 2026 The entcap Authors
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

namespace entcap {

/// Input violates an operation's precondition (shape, Hermiticity, range).
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Second/fourth moment pair that no matrix can realize.
class InvalidMoments : public InvalidInput {
  public:
    using InvalidInput::InvalidInput;
};

/// Too few usable rows for a fit.
class InsufficientData : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Capability curve never leaves its plateau.
class NoThreshold : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace entcap
