// Copyright 2026 The cvhbt Authors
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

namespace cvhbt {

/// A numeric argument is out of its admissible domain (negative photon
/// number, non-positive coherence time, empty grid, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// |mc| exceeds sqrt(nbar (nbar + 1)); no density operator has these moments.
class UnphysicalParameters : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// nbar = mc = 0: the visibility ratio is 0/0.
class DegenerateState : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A truncated Fock basis is too small for the requested accuracy or word.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The fringe fit has a singular design or no signal.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller broke a documented precondition (e.g. word not normal ordered).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cvhbt
