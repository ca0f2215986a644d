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

// Internal helpers for the shared `<number> <pauli>` line grammar used by
// Hamiltonian and ansatz files. Not part of the public API.

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "pexsim/pauli.hpp"

namespace pexsim::detail {

struct TermLine {
    double coefficient = 0.0;
    std::vector<std::pair<char, int>> factors;  // empty means identity
    std::size_t line_number = 0;
};

struct TermFile {
    std::vector<TermLine> terms;
    std::string convention;  // empty when the file has no convention header
    int max_qubit_index = -1;
};

/// Reads a term file. A leading `convention: <word>` line is accepted only
/// when allow_convention is set; comments (#) and blank lines are skipped.
/// Throws InputError with file:line context on malformed lines.
TermFile read_term_file(const std::filesystem::path& path, bool allow_convention);

inline std::vector<TermLine> read_term_lines(const std::filesystem::path& path) {
    return read_term_file(path, /*allow_convention=*/false).terms;
}

/// Builds a phase-0 PauliString from parsed factors, enforcing distinct
/// in-range qubit indices.
PauliString make_pauli(const std::vector<std::pair<char, int>>& factors, int n_qubits);

}  // namespace pexsim::detail
