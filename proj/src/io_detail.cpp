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

#include "pexsim/io_detail.hpp"

#include <charconv>
#include <fstream>

#include "pexsim/errors.hpp"

namespace pexsim::detail {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line_number,
                       const std::string& message) {
    throw InputError(path.string() + ":" + std::to_string(line_number) + ": " + message);
}

std::vector<std::string_view> split_ws(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos >= text.size()) break;
        std::size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
        tokens.push_back(text.substr(pos, end - pos));
        pos = end;
    }
    return tokens;
}

}  // namespace

TermFile read_term_file(const std::filesystem::path& path, bool allow_convention) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");

    TermFile file;
    std::string line;
    std::size_t line_number = 0;

    while (std::getline(in, line)) {
        ++line_number;
        const auto hash = line.find('#');
        const std::string_view content =
            std::string_view(line).substr(0, hash == std::string::npos ? line.size() : hash);
        const auto tokens = split_ws(content);
        if (tokens.empty()) continue;

        if (tokens[0] == "convention:") {
            if (!allow_convention) {
                fail(path, line_number, "convention header is not valid in this file type");
            }
            if (!file.terms.empty() || !file.convention.empty()) {
                fail(path, line_number, "convention header must appear once, before any term");
            }
            if (tokens.size() != 2) {
                fail(path, line_number, "expected 'convention: theta' or 'convention: beta'");
            }
            file.convention = std::string(tokens[1]);
            continue;
        }

        TermLine term;
        term.line_number = line_number;
        const std::string_view coeff_token = tokens[0];
        const auto [ptr, ec] = std::from_chars(
            coeff_token.data(), coeff_token.data() + coeff_token.size(), term.coefficient);
        if (ec != std::errc{} || ptr != coeff_token.data() + coeff_token.size()) {
            fail(path, line_number,
                 "expected a decimal coefficient, got '" + std::string(coeff_token) + "'");
        }
        if (tokens.size() < 2) {
            fail(path, line_number, "missing Pauli string after coefficient");
        }

        bool identity_token = false;
        for (std::size_t t = 1; t < tokens.size(); ++t) {
            const std::string_view token = tokens[t];
            if (token == "I") {
                identity_token = true;
                continue;
            }
            const char letter = token[0];
            if (letter != 'X' && letter != 'Y' && letter != 'Z') {
                fail(path, line_number, "unknown Pauli factor '" + std::string(token) + "'");
            }
            int index = -1;
            const auto [iptr, iec] =
                std::from_chars(token.data() + 1, token.data() + token.size(), index);
            if (iec != std::errc{} || iptr != token.data() + token.size() || index < 0) {
                fail(path, line_number, "malformed Pauli factor '" + std::string(token) + "'");
            }
            term.factors.emplace_back(letter, index);
            file.max_qubit_index = std::max(file.max_qubit_index, index);
        }
        if (identity_token && !term.factors.empty()) {
            fail(path, line_number, "\"I\" cannot be mixed with X/Y/Z factors");
        }
        file.terms.push_back(std::move(term));
    }
    return file;
}

PauliString make_pauli(const std::vector<std::pair<char, int>>& factors, int n_qubits) {
    u128 x_mask = 0, z_mask = 0, seen = 0;
    for (const auto& [letter, index] : factors) {
        if (index >= n_qubits) {
            throw InputError("qubit index " + std::to_string(index) + " out of range for " +
                             std::to_string(n_qubits) + " qubits");
        }
        const u128 bit = u128{1} << index;
        if (seen & bit) {
            throw InputError("duplicate qubit index " + std::to_string(index));
        }
        seen |= bit;
        if (letter == 'X' || letter == 'Y') x_mask |= bit;
        if (letter == 'Z' || letter == 'Y') z_mask |= bit;
    }
    return PauliString(n_qubits, x_mask, z_mask, 0);
}

}  // namespace pexsim::detail
