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
#include <filesystem>
#include <span>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "pexsim/pauli.hpp"

namespace pexsim {

/// One circuit element: exp(i * theta * P) for a bare (phase-0) Pauli P.
struct ExponentialGate {
    PauliString pauli;
    double theta;

    ExponentialGate(PauliString p, double theta);
};

/// Sparse n-qubit wavefunction: nonzero amplitudes keyed by basis index in a
/// flat hash map, with squared-magnitude cutoff truncation after each gate.
///
/// Invariants maintained by every mutating operation:
///  - no stored |amplitude|^2 is below the cutoff,
///  - no exact-zero amplitudes are stored,
///  - the state has unit norm within 1e-12.
class SparseState {
  public:
    using AmplitudeMap = absl::flat_hash_map<u128, std::complex<double>, BasisHash>;

    /// Computational basis state |occupied> on n qubits. Throws InputError
    /// for cutoff outside [0, 1) or occupied >= 2^n.
    static SparseState from_reference(int n_qubits, u128 occupied, double cutoff);

    int n_qubits() const noexcept { return n_qubits_; }
    double cutoff() const noexcept { return cutoff_; }
    std::size_t size() const noexcept { return entries_.size(); }
    const AmplitudeMap& entries() const noexcept { return entries_; }

    /// Stored amplitude, or exact zero when the index is absent.
    std::complex<double> amplitude(u128 basis) const {
        const auto it = entries_.find(basis);
        return it == entries_.end() ? std::complex<double>{} : it->second;
    }

    double norm_sq() const;

    /// Applies exp(i theta P) as the two-sparse update
    /// cos(theta)|Psi> + i sin(theta) P|Psi>, pairing each index x with
    /// x XOR P|_XY, then prunes amplitudes with |a|^2 < cutoff and rescales
    /// to unit norm. Diagonal P (x_mask = 0) is an in-place phase update
    /// that touches neither the element count nor the norm.
    /// Throws EmptyStateError if truncation removes every entry.
    void apply(const ExponentialGate& gate);

  private:
    SparseState(int n_qubits, double cutoff) : n_qubits_(n_qubits), cutoff_(cutoff) {}

    friend SparseState load_state(const std::filesystem::path& path, double cutoff);

    int n_qubits_;
    double cutoff_;
    AmplitudeMap entries_;
};

/// Per-gate element counts and gate-application wall time.
struct CircuitTrace {
    std::vector<std::size_t> elements_after;
    double seconds = 0.0;
};

/// Applies gates in sequence order (index 1 first). EmptyStateError is
/// rethrown carrying the 1-based ordinal of the offending gate.
CircuitTrace apply_circuit(SparseState& state, std::span<const ExponentialGate> gates);

/// <a|b> over the shared support. Throws InputError on dimension mismatch.
std::complex<double> inner_product(const SparseState& a, const SparseState& b);

/// Binary checkpoint: 24-byte header (magic "PEXSTATE", u32 version, u32
/// n_qubits, u64 entry count) followed by one 32-byte record per entry
/// (16-byte little-endian index, two IEEE-754 doubles re/im).
void save_state(const SparseState& state, const std::filesystem::path& path);
SparseState load_state(const std::filesystem::path& path, double cutoff = 0.0);

/// Memory model for the amplitude map: 16-byte key + 16-byte amplitude +
/// 1 byte overhead per slot, max load factor 0.9375, capacity doubling from
/// 10 entries.
std::uint64_t hash_map_model_bytes(std::size_t entry_count);

}  // namespace pexsim
