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

#include <cstdint>
#include <string>
#include <string_view>

namespace pexsim {

/// 128-bit computational basis index; qubit j maps to bit j (bit 0 = qubit 0
/// = least significant).
using u128 = unsigned __int128;

/// Hard qubit cap implied by the fixed-width masks.
inline constexpr int kMaxQubits = 128;

inline int popcount128(u128 v) noexcept {
    return __builtin_popcountll(static_cast<std::uint64_t>(v)) +
           __builtin_popcountll(static_cast<std::uint64_t>(v >> 64));
}

inline bool parity128(u128 v) noexcept { return popcount128(v) & 1; }

/// Index of the lowest set bit; undefined for v == 0.
inline int countr_zero128(u128 v) noexcept {
    const auto lo = static_cast<std::uint64_t>(v);
    if (lo != 0) return __builtin_ctzll(lo);
    return 64 + __builtin_ctzll(static_cast<std::uint64_t>(v >> 64));
}

/// Index of the highest set bit; undefined for v == 0.
inline int top_bit128(u128 v) noexcept {
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    if (hi != 0) return 127 - __builtin_clzll(hi);
    return 63 - __builtin_clzll(static_cast<std::uint64_t>(v));
}

/// All-ones mask over the low n bits (n in 0..=128).
inline u128 low_mask128(int n) noexcept {
    if (n <= 0) return 0;
    if (n >= 128) return ~u128{0};
    return (u128{1} << n) - 1;
}

/// Hash functor for basis indices, suitable for flat hash maps.
struct BasisHash {
    std::size_t operator()(u128 v) const noexcept {
        auto mix = [](std::uint64_t x) noexcept {
            x ^= x >> 33;
            x *= 0xff51afd7ed558ccdULL;
            x ^= x >> 33;
            x *= 0xc4ceb9fe1a85ec53ULL;
            x ^= x >> 33;
            return x;
        };
        return mix(static_cast<std::uint64_t>(v)) ^
               (mix(static_cast<std::uint64_t>(v >> 64)) * 0x9e3779b97f4a7c15ULL);
    }
};

/// Renders v as a ket-ordered bitstring of length n (leftmost char = qubit
/// n-1, rightmost = qubit 0).
std::string to_bitstring(u128 v, int n_qubits);

/// Parses a ket-ordered bitstring ("0011" -> qubits 0 and 1 set).
/// Throws InputError on characters other than 0/1 or length > 128.
u128 parse_bitstring(std::string_view bits);

/// Decimal rendering of a 128-bit value (for messages and reports).
std::string to_decimal(u128 v);

}  // namespace pexsim
