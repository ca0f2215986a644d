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
#include <span>
#include <vector>

#include "pexsim/state.hpp"

namespace pexsim {

/// Gate tally for a compiled circuit; additive under concatenation.
struct GateCounts {
    std::uint64_t cnot = 0;
    std::uint64_t x = 0;
    std::uint64_t h = 0;
    std::uint64_t rx = 0;
    std::uint64_t rz = 0;
    int n_qubits = 0;

    GateCounts& operator+=(const GateCounts& other) noexcept {
        cnot += other.cnot;
        x += other.x;
        h += other.h;
        rx += other.rx;
        rz += other.rz;
        if (other.n_qubits > n_qubits) n_qubits = other.n_qubits;
        return *this;
    }

    bool operator==(const GateCounts&) const = default;
};

/// One- or two-qubit gate in the target set {H, X, Rx, Rz, CNOT}.
struct PrimitiveGate {
    enum class Kind { H, X, Rx, Rz, Cnot };

    Kind kind;
    int target;
    int control = -1;    // CNOT only
    double angle = 0.0;  // Rx/Rz only
};

/// Closed-form cost of one Pauli exponential: a basis change per X (H pair)
/// and per Y (Rx pair), a CNOT parity ladder over the support, and a single
/// Rz. Throws InputError on the identity (a pure global phase).
GateCounts entangler_resources(const PauliString& p);

/// The explicit gate sequence realizing exp(i theta P): basis changes
/// (H for X, Rx(pi/2) for Y), a CNOT chain onto the highest support qubit,
/// Rz(-2 theta) there, then the mirrored uncomputation.
std::vector<PrimitiveGate> entangler_circuit(const PauliString& p, double theta);

/// Reference preparation: one X per occupied qubit.
GateCounts reference_resources(u128 occupied);

/// Full circuit: X gates for the reference, then one block per entangler
/// (identity entanglers are skipped). With optimize set, a peephole pass
/// cancels adjacent inverse pairs (H H, Rx(a) Rx(-a), back-to-back CNOT),
/// merges adjacent same-qubit rotations, and drops zero-angle rotations.
std::vector<PrimitiveGate> compile_circuit(std::span<const ExponentialGate> gates, u128 occupied,
                                           int n_qubits, bool optimize);

/// Repeated cancellation/merging until a fixed point.
void peephole_optimize(std::vector<PrimitiveGate>& circuit);

GateCounts tally(std::span<const PrimitiveGate> circuit, int n_qubits);

/// Naive counts (optimize = false) are the exact closed-form sums; optimized
/// counts never exceed them and leave the circuit's unitary unchanged.
GateCounts circuit_resources(std::span<const ExponentialGate> gates, u128 occupied, int n_qubits,
                             bool optimize);

}  // namespace pexsim
