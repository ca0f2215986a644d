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

#include "pexsim/resources.hpp"

#include <cmath>
#include <numbers>

#include "pexsim/errors.hpp"

namespace pexsim {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kZeroAngle = 1e-12;

bool is_rotation(const PrimitiveGate& g) {
    return g.kind == PrimitiveGate::Kind::Rx || g.kind == PrimitiveGate::Kind::Rz;
}

bool self_inverse_pair(const PrimitiveGate& a, const PrimitiveGate& b) {
    return a.kind == b.kind && a.target == b.target && a.control == b.control && !is_rotation(a);
}

bool mergeable_rotation(const PrimitiveGate& a, const PrimitiveGate& b) {
    return a.kind == b.kind && a.target == b.target && is_rotation(a);
}

}  // namespace

GateCounts entangler_resources(const PauliString& p) {
    if (p.is_identity()) {
        throw InputError("identity entangler contributes only a global phase");
    }
    const auto profile = p.weight_profile();
    GateCounts counts;
    counts.n_qubits = p.n_qubits();
    counts.h = 2u * static_cast<std::uint64_t>(profile.n_x);
    counts.rx = 2u * static_cast<std::uint64_t>(profile.n_y);
    counts.cnot = 2u * static_cast<std::uint64_t>(profile.weight - 1);
    counts.rz = 1;
    return counts;
}

std::vector<PrimitiveGate> entangler_circuit(const PauliString& p, double theta) {
    if (p.is_identity()) {
        throw InputError("identity entangler contributes only a global phase");
    }
    std::vector<PrimitiveGate> circuit;
    std::vector<int> support;
    for (int j = 0; j < p.n_qubits(); ++j) {
        const bool x = (p.x_mask() >> j) & 1;
        const bool z = (p.z_mask() >> j) & 1;
        if (!x && !z) continue;
        support.push_back(j);
        if (x && z) {
            circuit.push_back({PrimitiveGate::Kind::Rx, j, -1, kHalfPi});
        } else if (x) {
            circuit.push_back({PrimitiveGate::Kind::H, j});
        }
    }
    for (std::size_t i = 0; i + 1 < support.size(); ++i) {
        circuit.push_back({PrimitiveGate::Kind::Cnot, support[i + 1], support[i]});
    }
    // exp(i theta Z...Z) on the accumulated parity qubit: Rz(-2 theta).
    circuit.push_back({PrimitiveGate::Kind::Rz, support.back(), -1, -2.0 * theta});
    for (std::size_t i = support.size() - 1; i-- > 0;) {
        circuit.push_back({PrimitiveGate::Kind::Cnot, support[i + 1], support[i]});
    }
    for (auto it = support.rbegin(); it != support.rend(); ++it) {
        const int j = *it;
        const bool x = (p.x_mask() >> j) & 1;
        const bool z = (p.z_mask() >> j) & 1;
        if (x && z) {
            circuit.push_back({PrimitiveGate::Kind::Rx, j, -1, -kHalfPi});
        } else if (x) {
            circuit.push_back({PrimitiveGate::Kind::H, j});
        }
    }
    return circuit;
}

GateCounts reference_resources(u128 occupied) {
    GateCounts counts;
    counts.x = static_cast<std::uint64_t>(popcount128(occupied));
    return counts;
}

std::vector<PrimitiveGate> compile_circuit(std::span<const ExponentialGate> gates, u128 occupied,
                                           int n_qubits, bool optimize) {
    std::vector<PrimitiveGate> circuit;
    for (int j = 0; j < n_qubits; ++j) {
        if ((occupied >> j) & 1) circuit.push_back({PrimitiveGate::Kind::X, j});
    }
    for (const auto& gate : gates) {
        if (gate.pauli.is_identity()) continue;
        const auto block = entangler_circuit(gate.pauli, gate.theta);
        circuit.insert(circuit.end(), block.begin(), block.end());
    }
    if (optimize) peephole_optimize(circuit);
    return circuit;
}

void peephole_optimize(std::vector<PrimitiveGate>& circuit) {
    // Single linear pass. Per-qubit stacks of surviving gate indices let an
    // incoming gate see its nearest predecessor on each of its qubits; a
    // cancellation or merge happens only when that predecessor is identical
    // on every touched qubit, i.e. nothing non-commuting sits in between.
    int max_qubit = -1;
    for (const auto& g : circuit) max_qubit = std::max({max_qubit, g.target, g.control});

    std::vector<PrimitiveGate> out;
    out.reserve(circuit.size());
    std::vector<bool> alive;
    alive.reserve(circuit.size());
    std::vector<std::vector<std::size_t>> top(static_cast<std::size_t>(max_qubit + 1));

    const auto qubits_of = [](const PrimitiveGate& g, int (&q)[2]) {
        q[0] = g.target;
        q[1] = g.control;
        return g.control >= 0 ? 2 : 1;
    };

    for (const auto& incoming : circuit) {
        PrimitiveGate g = incoming;
        if (is_rotation(g) && std::abs(g.angle) < kZeroAngle) continue;

        int qs[2];
        const int nq = qubits_of(g, qs);

        // Nearest survivor must be the same gate index on all touched qubits.
        std::size_t prev_index = 0;
        bool has_prev = true;
        for (int i = 0; i < nq; ++i) {
            const auto& stack = top[static_cast<std::size_t>(qs[i])];
            if (stack.empty() || (i > 0 && stack.back() != prev_index)) {
                has_prev = false;
                break;
            }
            prev_index = stack.back();
        }

        if (has_prev) {
            PrimitiveGate& prev = out[prev_index];
            if (self_inverse_pair(prev, g)) {
                alive[prev_index] = false;
                int pq[2];
                const int pn = qubits_of(prev, pq);
                for (int i = 0; i < pn; ++i) top[static_cast<std::size_t>(pq[i])].pop_back();
                continue;
            }
            if (mergeable_rotation(prev, g)) {
                prev.angle += g.angle;
                if (std::abs(prev.angle) < kZeroAngle) {
                    alive[prev_index] = false;
                    top[static_cast<std::size_t>(prev.target)].pop_back();
                }
                continue;
            }
        }

        const std::size_t index = out.size();
        out.push_back(g);
        alive.push_back(true);
        for (int i = 0; i < nq; ++i) top[static_cast<std::size_t>(qs[i])].push_back(index);
    }

    std::vector<PrimitiveGate> compacted;
    compacted.reserve(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (alive[i]) compacted.push_back(out[i]);
    }
    circuit = std::move(compacted);
}

GateCounts tally(std::span<const PrimitiveGate> circuit, int n_qubits) {
    GateCounts counts;
    counts.n_qubits = n_qubits;
    for (const auto& g : circuit) {
        switch (g.kind) {
            case PrimitiveGate::Kind::H: ++counts.h; break;
            case PrimitiveGate::Kind::X: ++counts.x; break;
            case PrimitiveGate::Kind::Rx: ++counts.rx; break;
            case PrimitiveGate::Kind::Rz: ++counts.rz; break;
            case PrimitiveGate::Kind::Cnot: ++counts.cnot; break;
        }
    }
    return counts;
}

GateCounts circuit_resources(std::span<const ExponentialGate> gates, u128 occupied, int n_qubits,
                             bool optimize) {
    if (optimize) {
        return tally(compile_circuit(gates, occupied, n_qubits, true), n_qubits);
    }
    GateCounts counts = reference_resources(occupied);
    counts.n_qubits = n_qubits;
    for (const auto& gate : gates) {
        if (gate.pauli.is_identity()) continue;
        counts += entangler_resources(gate.pauli);
    }
    counts.n_qubits = n_qubits;
    return counts;
}

}  // namespace pexsim
