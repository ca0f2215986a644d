// Copyright 2026 The pexsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace pexsim {

/// Malformed user input: files, flags, dimension mismatches.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Numerical failure during a run: empty state after truncation, enumeration
/// budget exceeded, non-real residue where a Hermitian result is required.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The state lost all entries after cutoff truncation. Carries the 1-based
/// ordinal of the offending gate when raised from a circuit (0 = unknown).
class EmptyStateError : public NumericalError {
  public:
    explicit EmptyStateError(std::size_t gate_ordinal = 0)
        : NumericalError(gate_ordinal == 0
                             ? std::string("state became empty after cutoff truncation")
                             : "state became empty after cutoff truncation at gate " +
                                   std::to_string(gate_ordinal)),
          gate_ordinal_(gate_ordinal) {}

    std::size_t gate_ordinal() const noexcept { return gate_ordinal_; }

  private:
    std::size_t gate_ordinal_;
};

}  // namespace pexsim
