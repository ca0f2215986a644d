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

#include <string>

#include "pexsim/bits.hpp"

namespace pexsim {

/// Entry point behind the pexsim binary. Exit codes: 0 success, 1 input
/// error, 2 numerical failure (empty state, enumeration budget, ...).
int run_cli(int argc, const char* const* argv);

/// Reference-state grammar: "bits:<01...>" (ket order, rightmost char is
/// qubit 0), "occ:<i,j,...>" (occupied qubit indices), or a bare 0/1 string.
u128 parse_reference(const std::string& spec);

/// Number of qubits a reference spec pins down, or -1 (occ form).
int reference_qubit_count(const std::string& spec);

}  // namespace pexsim
