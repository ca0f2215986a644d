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

#include "pexsim/hamiltonian.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "pexsim/errors.hpp"
#include "pexsim/io_detail.hpp"

namespace pexsim {

PauliSumBuilder::PauliSumBuilder(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw InputError("qubit count must be in 1..=" + std::to_string(kMaxQubits));
    }
}

void PauliSumBuilder::add(std::complex<double> coefficient, const PauliString& pauli) {
    if (pauli.n_qubits() != n_qubits_) {
        throw InputError("term qubit count mismatch");
    }
    const std::complex<double> folded =
        mul_i_power(coefficient, static_cast<unsigned>(pauli.phase_exponent()));
    const MaskKey key{pauli.x_mask(), pauli.z_mask()};
    const auto [it, inserted] = index_.try_emplace(key, slots_.size());
    if (inserted) {
        slots_.emplace_back(key, folded);
    } else {
        slots_[it->second].second += folded;
    }
}

PauliSumOperator PauliSumBuilder::finalize(double imag_tolerance) {
    PauliSumOperator op(n_qubits_);
    op.terms_.reserve(slots_.size());
    for (const auto& [key, coeff] : slots_) {
        if (std::abs(coeff.imag()) > imag_tolerance) {
            throw NumericalError("non-Hermitian accumulated coefficient (imaginary residue " +
                                 std::to_string(coeff.imag()) + ")");
        }
        if (coeff.real() == 0.0) continue;
        op.terms_.push_back({coeff.real(), PauliString(n_qubits_, key.x, key.z, 0)});
    }
    return op;
}

PauliSumOperator load_hamiltonian(const std::filesystem::path& path, int n_qubits) {
    const auto lines = detail::read_term_lines(path);
    if (n_qubits < 1) {
        int max_index = -1;
        for (const auto& line : lines) {
            for (const auto& [letter, index] : line.factors) max_index = std::max(max_index, index);
        }
        n_qubits = max_index + 1;
        if (n_qubits < 1) n_qubits = 1;  // identity-only file
    }
    PauliSumBuilder builder(n_qubits);
    for (const auto& line : lines) {
        try {
            builder.add(line.coefficient, detail::make_pauli(line.factors, n_qubits));
        } catch (const InputError& e) {
            throw InputError(path.string() + ":" + std::to_string(line.line_number) + ": " +
                             e.what());
        }
    }
    return builder.finalize();
}

double pauli_expectation(const SparseState& state, const PauliString& p) {
    if (p.n_qubits() != state.n_qubits()) {
        throw InputError("observable qubit count mismatch");
    }
    const auto& entries = state.entries();
    std::complex<double> acc{0.0, 0.0};
    if (p.is_diagonal()) {
        for (const auto& [x, ax] : entries) {
            const double w = std::norm(ax);
            acc += (p.apply(x).phase == 0) ? w : -w;
        }
    } else {
        for (const auto& [x, ax] : entries) {
            const auto px = p.apply(x);
            const auto it = entries.find(px.index);
            if (it == entries.end()) continue;
            acc += std::conj(it->second) * mul_i_power(ax, px.phase);
        }
    }
    if (std::abs(acc.imag()) > 1e-8) {
        throw NumericalError("Pauli expectation has imaginary residue " +
                             std::to_string(acc.imag()));
    }
    return acc.real();
}

EnergyResult energy(const SparseState& state, const PauliSumOperator& h, int workers) {
    if (h.n_qubits() != state.n_qubits()) {
        throw InputError("Hamiltonian qubit count mismatch");
    }
    if (workers < 1) throw InputError("worker count must be >= 1");

    const auto& terms = h.terms();
    const std::size_t n = terms.size();
    const std::size_t used = std::min<std::size_t>(static_cast<std::size_t>(workers),
                                                   std::max<std::size_t>(n, 1));
    const auto start = std::chrono::steady_clock::now();

    std::vector<double> partial(used, 0.0);
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto run_chunk = [&](std::size_t worker) {
        const std::size_t begin = n * worker / used;
        const std::size_t end = n * (worker + 1) / used;
        try {
            double sum = 0.0;
            for (std::size_t i = begin; i < end; ++i) {
                sum += terms[i].coefficient * pauli_expectation(state, terms[i].pauli);
            }
            partial[worker] = sum;
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    if (used == 1) {
        run_chunk(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(used);
        for (std::size_t w = 0; w < used; ++w) pool.emplace_back(run_chunk, w);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    double total = 0.0;
    for (const double p : partial) total += p;
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return EnergyResult{total, seconds};
}

PruneResult prune(const PauliSumOperator& h, double threshold) {
    if (threshold < 0.0) throw InputError("prune threshold must be >= 0");
    PauliSumBuilder builder(h.n_qubits());
    PruneResult result{PauliSumOperator(h.n_qubits()), 0.0, 0};
    for (const auto& term : h.terms()) {
        if (std::abs(term.coefficient) < threshold) {
            result.removed_weight += std::abs(term.coefficient);
            ++result.removed_count;
        } else {
            builder.add(term.coefficient, term.pauli);
        }
    }
    result.op = builder.finalize();
    return result;
}

PauliSumOperator similarity_transform(const PauliSumOperator& h, const PauliString& p,
                                      double beta) {
    if (p.n_qubits() != h.n_qubits()) {
        throw InputError("entangler qubit count mismatch");
    }
    if (p.phase_exponent() != 0) {
        throw InputError("entangler must be a bare Pauli (phase exponent 0)");
    }
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    PauliSumBuilder builder(h.n_qubits());
    for (const auto& term : h.terms()) {
        if (commutes(term.pauli, p)) {
            builder.add(term.coefficient, term.pauli);
        } else {
            builder.add(term.coefficient * c, term.pauli);
            // -i sin(beta) h_i (P_i P); the product's own i-power makes the
            // coefficient real again (P_i P is anti-Hermitian here).
            builder.add(std::complex<double>{0.0, -term.coefficient * s},
                        multiply(term.pauli, p));
        }
    }
    return builder.finalize();
}

}  // namespace pexsim
