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
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "pexsim/pauli.hpp"
#include "pexsim/state.hpp"

namespace pexsim {

/// Hermitian observable H = sum_i h_i P_i with real coefficients and
/// phase-0, deduplicated Pauli keys. Immutable after construction.
class PauliSumOperator {
  public:
    struct Term {
        double coefficient;
        PauliString pauli;
    };

    explicit PauliSumOperator(int n_qubits) : n_qubits_(n_qubits) {}

    int n_qubits() const noexcept { return n_qubits_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }

    /// Storage model: two 128-bit masks plus a double per term.
    std::uint64_t memory_estimate_bytes() const noexcept { return 40u * terms_.size(); }

  private:
    friend class PauliSumBuilder;

    int n_qubits_;
    std::vector<Term> terms_;
};

/// Accumulates (complex coefficient, Pauli) contributions, folding each
/// Pauli's i^{phase} into its coefficient and summing duplicates. finalize()
/// enforces Hermiticity: any imaginary residue above the tolerance is an
/// error; exact-zero coefficients are dropped. Term order is first-insertion
/// order.
class PauliSumBuilder {
  public:
    explicit PauliSumBuilder(int n_qubits);

    void add(std::complex<double> coefficient, const PauliString& pauli);

    PauliSumOperator finalize(double imag_tolerance = 1e-12);

  private:
    struct MaskKey {
        u128 x;
        u128 z;
        bool operator==(const MaskKey&) const = default;
    };
    struct MaskKeyHash {
        std::size_t operator()(const MaskKey& k) const noexcept {
            return BasisHash{}(k.x) ^ (BasisHash{}(k.z) * 0x9e3779b97f4a7c15ULL);
        }
    };

    int n_qubits_;
    std::vector<std::pair<MaskKey, std::complex<double>>> slots_;
    absl::flat_hash_map<MaskKey, std::size_t, MaskKeyHash> index_;
};

/// Loads `<coefficient> <pauli>` lines; '#' comments and blank lines are
/// ignored, repeated Paulis have their coefficients summed. n_qubits < 1
/// infers the count from the largest qubit index in the file.
/// Throws InputError with the offending line number on malformed input.
PauliSumOperator load_hamiltonian(const std::filesystem::path& path, int n_qubits = -1);

/// <Psi|P|Psi> for a normalized state. The imaginary part must vanish within
/// 1e-8 (NumericalError otherwise) and is discarded.
double pauli_expectation(const SparseState& state, const PauliString& p);

struct EnergyResult {
    double energy;   // Hartree
    double seconds;  // measurement wall time
};

/// E = sum_i h_i <P_i>, with terms partitioned across `workers` threads and
/// the partial sums combined by the caller thread. The result is independent
/// of the worker count within 1e-10 relative tolerance.
EnergyResult energy(const SparseState& state, const PauliSumOperator& h, int workers);

struct PruneResult {
    PauliSumOperator op;
    double removed_weight = 0.0;  // sum of |h| over removed terms
    std::size_t removed_count = 0;
};

/// Removes terms with |h_i| < threshold (strict).
PruneResult prune(const PauliSumOperator& h, double threshold);

/// U^dag H U for U = exp(-i beta P / 2):
///   H' = H - i sin(beta)/2 [H, P] + (1 - cos(beta))/2 (P H P - H).
/// Terms commuting with P pass through unchanged; a term h_i P_i that
/// anticommutes contributes h_i cos(beta) P_i - i h_i sin(beta) P_i P, with
/// the Pauli-product phase resolved exactly. Spectrum-preserving.
PauliSumOperator similarity_transform(const PauliSumOperator& h, const PauliString& p,
                                      double beta);

}  // namespace pexsim
