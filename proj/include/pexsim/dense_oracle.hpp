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

// Brute-force full state-vector simulation and exact diagonalization for
// small qubit counts. Test oracle only; never on the production path except
// behind the CLI --verify flag.

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "pexsim/hamiltonian.hpp"
#include "pexsim/resources.hpp"
#include "pexsim/state.hpp"

namespace pexsim {

/// Full 2^n state vector, n <= 24.
class DenseState {
  public:
    static constexpr int kMaxOracleQubits = 24;

    static DenseState from_reference(int n_qubits, u128 occupied);
    static DenseState from_sparse(const SparseState& state);

    int n_qubits() const noexcept { return n_qubits_; }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }

    std::complex<double> amplitude(u128 basis) const {
        return amplitudes_[static_cast<Eigen::Index>(static_cast<std::uint64_t>(basis))];
    }

    double norm_sq() const { return amplitudes_.squaredNorm(); }

    /// cos(theta)|Psi> + i sin(theta) P|Psi>, evaluated on every index.
    void apply(const ExponentialGate& gate);

    /// One primitive gate from the compiled set {H, X, Rx, Rz, CNOT}.
    void apply(const PrimitiveGate& gate);

  private:
    DenseState(int n_qubits, Eigen::VectorXcd amplitudes)
        : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

    int n_qubits_;
    Eigen::VectorXcd amplitudes_;
};

void dense_apply_circuit(DenseState& state, std::span<const ExponentialGate> gates);

double dense_energy(const DenseState& state, const PauliSumOperator& h);

/// Smallest eigenvalue of the dense Hermitian matrix of h (n <= 10), with
/// the residual ||Hv - lambda v|| certified below 1e-9 * max(1, ||H||).
double ground_energy(const PauliSumOperator& h);

/// Dense matrix by literal Kronecker products of the 2x2 factors times
/// i^{phase}; independent of the bit-mask apply path it is used to check.
Eigen::MatrixXcd pauli_matrix(const PauliString& p);

Eigen::MatrixXcd operator_matrix(const PauliSumOperator& h);

}  // namespace pexsim
