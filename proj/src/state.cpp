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

#include "pexsim/state.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>

#include "pexsim/errors.hpp"

namespace pexsim {

ExponentialGate::ExponentialGate(PauliString p, double theta) : pauli(std::move(p)), theta(theta) {
    if (pauli.phase_exponent() != 0) {
        throw InputError("exponential gates are defined by bare Paulis (phase exponent 0)");
    }
}

SparseState SparseState::from_reference(int n_qubits, u128 occupied, double cutoff) {
    if (!(cutoff >= 0.0) || cutoff >= 1.0) {
        throw InputError("cutoff must lie in [0, 1); the reference amplitude would be pruned");
    }
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw InputError("qubit count must be in 1..=" + std::to_string(kMaxQubits));
    }
    if ((occupied & ~low_mask128(n_qubits)) != 0) {
        throw InputError("reference index has bits set above qubit " +
                         std::to_string(n_qubits - 1));
    }
    SparseState state(n_qubits, cutoff);
    state.entries_.emplace(occupied, std::complex<double>{1.0, 0.0});
    return state;
}

double SparseState::norm_sq() const {
    double total = 0.0;
    for (const auto& [index, amp] : entries_) total += std::norm(amp);
    return total;
}

void SparseState::apply(const ExponentialGate& gate) {
    if (gate.pauli.n_qubits() != n_qubits_) {
        throw InputError("gate acts on " + std::to_string(gate.pauli.n_qubits()) +
                         " qubits but the state has " + std::to_string(n_qubits_));
    }
    const double c = std::cos(gate.theta);
    const double s = std::sin(gate.theta);
    const u128 flip = gate.pauli.x_mask();

    if (flip == 0) {
        // One-sparse case: every factor is I or Z, so each entry just picks
        // up the unit phase cos(theta) + i*sign*sin(theta).
        const std::complex<double> plus{c, s};
        const std::complex<double> minus{c, -s};
        for (auto& [index, amp] : entries_) {
            amp *= (gate.pauli.apply(index).phase == 0) ? plus : minus;
        }
        return;
    }

    AmplitudeMap next;
    next.reserve(2 * entries_.size());
    double kept = 0.0;
    const auto emit = [&](u128 index, std::complex<double> amp) {
        const double weight = std::norm(amp);
        if (weight < cutoff_ || weight == 0.0) return;
        next.emplace(index, amp);
        kept += weight;
    };

    // Each index x pairs with y = x ^ flip; the pair is visited once, at its
    // smaller member. Unpaired entries emit both of their images.
    for (const auto& [x, ax] : entries_) {
        const u128 y = x ^ flip;
        const auto partner = entries_.find(y);
        if (partner != entries_.end()) {
            if (y < x) continue;
            const std::complex<double> ay = partner->second;
            // i*sin(theta) * <x|P|y> and <y|P|x>, phases kept as exact i-powers.
            const auto to_x = gate.pauli.apply(y);
            const auto to_y = gate.pauli.apply(x);
            emit(x, c * ax + mul_i_power(s * ay, to_x.phase + 1u));
            emit(y, c * ay + mul_i_power(s * ax, to_y.phase + 1u));
        } else {
            const auto to_y = gate.pauli.apply(x);
            emit(x, c * ax);
            emit(y, mul_i_power(s * ax, to_y.phase + 1u));
        }
    }

    if (next.empty()) throw EmptyStateError();

    const double scale = 1.0 / std::sqrt(kept);
    for (auto& [index, amp] : next) amp *= scale;
    entries_ = std::move(next);
}

CircuitTrace apply_circuit(SparseState& state, std::span<const ExponentialGate> gates) {
    CircuitTrace trace;
    trace.elements_after.reserve(gates.size());
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < gates.size(); ++k) {
        try {
            state.apply(gates[k]);
        } catch (const EmptyStateError&) {
            throw EmptyStateError(k + 1);
        }
        trace.elements_after.push_back(state.size());
    }
    trace.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return trace;
}

std::complex<double> inner_product(const SparseState& a, const SparseState& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw InputError("inner product on mismatched qubit counts");
    }
    const bool a_smaller = a.size() <= b.size();
    const auto& outer = a_smaller ? a.entries() : b.entries();
    const auto& other = a_smaller ? b.entries() : a.entries();
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [index, amp] : outer) {
        const auto it = other.find(index);
        if (it == other.end()) continue;
        acc += a_smaller ? std::conj(amp) * it->second : std::conj(it->second) * amp;
    }
    return acc;
}

namespace {

constexpr char kMagic[8] = {'P', 'E', 'X', 'S', 'T', 'A', 'T', 'E'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

void write_u128(std::ostream& out, u128 v) {
    write_u64(out, static_cast<std::uint64_t>(v));
    write_u64(out, static_cast<std::uint64_t>(v >> 64));
}

void write_double(std::ostream& out, double v) { write_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint32_t read_u32(std::istream& in) {
    unsigned char buf[4];
    in.read(reinterpret_cast<char*>(buf), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
    return v;
}

std::uint64_t read_u64(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

u128 read_u128(std::istream& in) {
    const std::uint64_t lo = read_u64(in);
    const std::uint64_t hi = read_u64(in);
    return (static_cast<u128>(hi) << 64) | lo;
}

double read_double(std::istream& in) { return std::bit_cast<double>(read_u64(in)); }

}  // namespace

void save_state(const SparseState& state, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    out.write(kMagic, sizeof(kMagic));
    write_u32(out, kVersion);
    write_u32(out, static_cast<std::uint32_t>(state.n_qubits()));
    write_u64(out, state.size());
    for (const auto& [index, amp] : state.entries()) {
        write_u128(out, index);
        write_double(out, amp.real());
        write_double(out, amp.imag());
    }
    if (!out) throw InputError("write failed for '" + path.string() + "'");
}

SparseState load_state(const std::filesystem::path& path, double cutoff) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw InputError("'" + path.string() + "' is not a pexsim state dump");
    }
    const std::uint32_t version = read_u32(in);
    if (version != kVersion) {
        throw InputError("unsupported state dump version " + std::to_string(version));
    }
    const auto n_qubits = static_cast<int>(read_u32(in));
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw InputError("state dump has invalid qubit count " + std::to_string(n_qubits));
    }
    if (!(cutoff >= 0.0) || cutoff >= 1.0) throw InputError("cutoff must lie in [0, 1)");
    const std::uint64_t count = read_u64(in);
    SparseState state(n_qubits, cutoff);
    state.entries_.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const u128 index = read_u128(in);
        const double re = read_double(in);
        const double im = read_double(in);
        state.entries_.emplace(index, std::complex<double>{re, im});
    }
    if (!in) throw InputError("truncated state dump '" + path.string() + "'");
    return state;
}

std::uint64_t hash_map_model_bytes(std::size_t entry_count) {
    std::uint64_t capacity = 10;
    while (static_cast<double>(entry_count) > 0.9375 * static_cast<double>(capacity)) {
        capacity *= 2;
    }
    return capacity * 33u;  // 16-byte key + 16-byte amplitude + 1 byte overhead
}

}  // namespace pexsim
