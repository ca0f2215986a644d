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

#include "pexsim/pauli.hpp"

#include <charconv>

#include "pexsim/errors.hpp"

namespace pexsim {

namespace {

void check_qubit_count(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw InputError("qubit count must be in 1..=" + std::to_string(kMaxQubits) +
                         ", got " + std::to_string(n_qubits));
    }
}

}  // namespace

PauliString::PauliString(int n_qubits)
    : n_qubits_(n_qubits), x_mask_(0), z_mask_(0), phase_exponent_(0) {
    check_qubit_count(n_qubits);
}

PauliString::PauliString(int n_qubits, u128 x_mask, u128 z_mask, std::uint8_t phase_exponent)
    : n_qubits_(n_qubits),
      x_mask_(x_mask),
      z_mask_(z_mask),
      phase_exponent_(static_cast<std::uint8_t>(phase_exponent & 3u)) {
    check_qubit_count(n_qubits);
    const u128 valid = low_mask128(n_qubits);
    if ((x_mask & ~valid) != 0 || (z_mask & ~valid) != 0) {
        throw InputError("Pauli mask has bits set above qubit " + std::to_string(n_qubits - 1));
    }
}

std::string PauliString::str() const {
    if (is_identity()) return "I";
    std::string out;
    for (int j = 0; j < n_qubits_; ++j) {
        const bool x = (x_mask_ >> j) & 1;
        const bool z = (z_mask_ >> j) & 1;
        if (!x && !z) continue;
        if (!out.empty()) out += ' ';
        out += x ? (z ? 'Y' : 'X') : 'Z';
        out += std::to_string(j);
    }
    return out;
}

PauliString parse_pauli(std::string_view text, int n_qubits) {
    check_qubit_count(n_qubits);
    u128 x_mask = 0;
    u128 z_mask = 0;
    u128 seen = 0;
    bool any_factor = false;
    bool identity_token = false;

    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos >= text.size()) break;
        std::size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
        const std::string_view token = text.substr(pos, end - pos);
        pos = end;

        if (token == "I") {
            identity_token = true;
            continue;
        }
        const char letter = token[0];
        if (letter != 'X' && letter != 'Y' && letter != 'Z') {
            throw InputError("unknown Pauli factor '" + std::string(token) + "'");
        }
        int index = -1;
        const auto [ptr, ec] =
            std::from_chars(token.data() + 1, token.data() + token.size(), index);
        if (ec != std::errc{} || ptr != token.data() + token.size() || index < 0) {
            throw InputError("malformed Pauli factor '" + std::string(token) + "'");
        }
        if (index >= n_qubits) {
            throw InputError("qubit index " + std::to_string(index) + " out of range for " +
                             std::to_string(n_qubits) + " qubits");
        }
        const u128 bit = u128{1} << index;
        if (seen & bit) {
            throw InputError("duplicate qubit index " + std::to_string(index) +
                             " in Pauli string");
        }
        seen |= bit;
        any_factor = true;
        if (letter == 'X' || letter == 'Y') x_mask |= bit;
        if (letter == 'Z' || letter == 'Y') z_mask |= bit;
    }

    if (!any_factor && !identity_token) {
        throw InputError("empty Pauli string (use \"I\" for the identity)");
    }
    if (identity_token && any_factor) {
        throw InputError("\"I\" cannot be mixed with X/Y/Z factors");
    }
    return PauliString(n_qubits, x_mask, z_mask, 0);
}

namespace {

// i-exponent of single-factor products: F1 * F2 = i^e F3 with F3 the XOR of
// the masks. Factors indexed as x_bit | z_bit<<1: I=0, X=1, Z=2, Y=3.
constexpr std::uint8_t kProductPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 3, 1},
    {0, 1, 0, 3},
    {0, 3, 1, 0},
};

}  // namespace

PauliString multiply(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw InputError("Pauli product on mismatched qubit counts (" +
                         std::to_string(a.n_qubits()) + " vs " + std::to_string(b.n_qubits()) +
                         ")");
    }
    unsigned phase = static_cast<unsigned>(a.phase_exponent() + b.phase_exponent());
    u128 support = (a.x_mask() | a.z_mask()) & (b.x_mask() | b.z_mask());
    while (support != 0) {
        const int j = countr_zero128(support);
        support &= support - 1;
        const unsigned fa = static_cast<unsigned>((a.x_mask() >> j) & 1) |
                            (static_cast<unsigned>((a.z_mask() >> j) & 1) << 1);
        const unsigned fb = static_cast<unsigned>((b.x_mask() >> j) & 1) |
                            (static_cast<unsigned>((b.z_mask() >> j) & 1) << 1);
        phase += kProductPhase[fa][fb];
    }
    return PauliString(a.n_qubits(), a.x_mask() ^ b.x_mask(), a.z_mask() ^ b.z_mask(),
                       static_cast<std::uint8_t>(phase & 3u));
}

bool commutes(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw InputError("commutation check on mismatched qubit counts (" +
                         std::to_string(a.n_qubits()) + " vs " + std::to_string(b.n_qubits()) +
                         ")");
    }
    return parity128(a.x_mask() & b.z_mask()) == parity128(a.z_mask() & b.x_mask());
}

}  // namespace pexsim
