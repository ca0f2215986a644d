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

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "pexsim/bits.hpp"

namespace pexsim {

/// i^k for k mod 4, without trigonometry.
inline std::complex<double> i_power(unsigned k) noexcept {
    switch (k & 3u) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

/// v * i^k, exact (component swap and negation only).
inline std::complex<double> mul_i_power(std::complex<double> v, unsigned k) noexcept {
    switch (k & 3u) {
        case 0: return v;
        case 1: return {-v.imag(), v.real()};
        case 2: return {-v.real(), -v.imag()};
        default: return {v.imag(), -v.real()};
    }
}

/// Result of applying a Pauli string to a computational basis state:
/// P|x> = i^{phase} |index>.
struct PhasedIndex {
    u128 index;
    std::uint8_t phase;  // exponent of i; coeff is one of {1, i, -1, -i}

    std::complex<double> coeff() const noexcept { return i_power(phase); }
};

struct WeightProfile {
    int weight;  // total non-identity factors
    int n_x;
    int n_y;
    int n_z;
};

/// An n-qubit Pauli operator i^{phase_exponent} * (X/Y/Z/I tensor factors),
/// stored as symplectic bit masks: bit j of x_mask is set iff factor j is X
/// or Y, bit j of z_mask iff factor j is Z or Y. Immutable value type.
class PauliString {
  public:
    /// Identity on n qubits.
    explicit PauliString(int n_qubits);

    /// From masks; bits above n_qubits-1 must be clear.
    PauliString(int n_qubits, u128 x_mask, u128 z_mask, std::uint8_t phase_exponent = 0);

    int n_qubits() const noexcept { return n_qubits_; }
    u128 x_mask() const noexcept { return x_mask_; }
    u128 z_mask() const noexcept { return z_mask_; }
    int phase_exponent() const noexcept { return phase_exponent_; }

    bool is_identity() const noexcept { return x_mask_ == 0 && z_mask_ == 0; }

    /// True iff every factor is I or Z; such strings act one-sparse.
    bool is_diagonal() const noexcept { return x_mask_ == 0; }

    /// P|x> = i^k |x XOR x_mask| with k accumulated exactly: the global
    /// phase, one i per Y factor, and (-1)^{x_j} per Y or Z factor.
    PhasedIndex apply(u128 basis) const noexcept {
        const unsigned k = static_cast<unsigned>(phase_exponent_) +
                           static_cast<unsigned>(popcount128(x_mask_ & z_mask_)) +
                           2u * static_cast<unsigned>(popcount128(basis & z_mask_));
        return PhasedIndex{basis ^ x_mask_, static_cast<std::uint8_t>(k & 3u)};
    }

    WeightProfile weight_profile() const noexcept {
        const int ny = popcount128(x_mask_ & z_mask_);
        const int nx = popcount128(x_mask_ & ~z_mask_);
        const int nz = popcount128(z_mask_ & ~x_mask_);
        return WeightProfile{nx + ny + nz, nx, ny, nz};
    }

    /// Canonical rendering: factors sorted by qubit index ascending, single
    /// spaces, "I" for the identity. The phase exponent is not rendered;
    /// only phase-0 strings round-trip through parse_pauli.
    std::string str() const;

    bool operator==(const PauliString&) const = default;

  private:
    int n_qubits_;
    u128 x_mask_;
    u128 z_mask_;
    std::uint8_t phase_exponent_;
};

/// Parses "I" or whitespace-separated factors "X<k>"/"Y<k>"/"Z<k>" with
/// distinct k < n_qubits. Throws InputError on duplicate or out-of-range
/// indices, unknown letters, or n_qubits outside 1..=128.
PauliString parse_pauli(std::string_view text, int n_qubits);

/// Matrix-faithful product: matrix(result) = matrix(a) * matrix(b), with the
/// i-power phase accumulated exactly.
PauliString multiply(const PauliString& a, const PauliString& b);

/// True iff the matrices commute: symplectic form <a.x,b.z> XOR <a.z,b.x> = 0.
bool commutes(const PauliString& a, const PauliString& b);

}  // namespace pexsim
