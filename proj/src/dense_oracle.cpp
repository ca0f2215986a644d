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

#include "pexsim/dense_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "pexsim/errors.hpp"

namespace pexsim {

namespace {

using Complex = std::complex<double>;

Eigen::Index dim_of(int n_qubits) { return Eigen::Index{1} << n_qubits; }

void check_oracle_size(int n_qubits) {
    if (n_qubits < 1 || n_qubits > DenseState::kMaxOracleQubits) {
        throw InputError("dense oracle supports 1..=" +
                         std::to_string(DenseState::kMaxOracleQubits) + " qubits");
    }
}

}  // namespace

DenseState DenseState::from_reference(int n_qubits, u128 occupied) {
    check_oracle_size(n_qubits);
    if ((occupied & ~low_mask128(n_qubits)) != 0) {
        throw InputError("reference index out of range");
    }
    Eigen::VectorXcd amplitudes = Eigen::VectorXcd::Zero(dim_of(n_qubits));
    amplitudes[static_cast<Eigen::Index>(static_cast<std::uint64_t>(occupied))] = Complex{1.0, 0.0};
    return DenseState(n_qubits, std::move(amplitudes));
}

DenseState DenseState::from_sparse(const SparseState& state) {
    check_oracle_size(state.n_qubits());
    Eigen::VectorXcd amplitudes = Eigen::VectorXcd::Zero(dim_of(state.n_qubits()));
    for (const auto& [index, amp] : state.entries()) {
        amplitudes[static_cast<Eigen::Index>(static_cast<std::uint64_t>(index))] = amp;
    }
    return DenseState(state.n_qubits(), std::move(amplitudes));
}

void DenseState::apply(const ExponentialGate& gate) {
    if (gate.pauli.n_qubits() != n_qubits_) throw InputError("gate qubit count mismatch");
    const double c = std::cos(gate.theta);
    const double s = std::sin(gate.theta);
    const Eigen::Index dim = amplitudes_.size();
    Eigen::VectorXcd next = c * amplitudes_;
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto image = gate.pauli.apply(static_cast<u128>(static_cast<std::uint64_t>(i)));
        const auto j = static_cast<Eigen::Index>(static_cast<std::uint64_t>(image.index));
        next[j] += mul_i_power(s * amplitudes_[i], image.phase + 1u);
    }
    amplitudes_ = std::move(next);
}

void DenseState::apply(const PrimitiveGate& gate) {
    const Eigen::Index dim = amplitudes_.size();
    const std::uint64_t t = std::uint64_t{1} << gate.target;
    switch (gate.kind) {
        case PrimitiveGate::Kind::X:
            for (Eigen::Index i = 0; i < dim; ++i) {
                const auto iu = static_cast<std::uint64_t>(i);
                if (iu & t) continue;
                std::swap(amplitudes_[i], amplitudes_[static_cast<Eigen::Index>(iu | t)]);
            }
            break;
        case PrimitiveGate::Kind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            for (Eigen::Index i = 0; i < dim; ++i) {
                const auto iu = static_cast<std::uint64_t>(i);
                if (iu & t) continue;
                const auto j = static_cast<Eigen::Index>(iu | t);
                const Complex a0 = amplitudes_[i];
                const Complex a1 = amplitudes_[j];
                amplitudes_[i] = r * (a0 + a1);
                amplitudes_[j] = r * (a0 - a1);
            }
            break;
        }
        case PrimitiveGate::Kind::Rx: {
            const double c = std::cos(gate.angle / 2.0);
            const Complex ms{0.0, -std::sin(gate.angle / 2.0)};
            for (Eigen::Index i = 0; i < dim; ++i) {
                const auto iu = static_cast<std::uint64_t>(i);
                if (iu & t) continue;
                const auto j = static_cast<Eigen::Index>(iu | t);
                const Complex a0 = amplitudes_[i];
                const Complex a1 = amplitudes_[j];
                amplitudes_[i] = c * a0 + ms * a1;
                amplitudes_[j] = ms * a0 + c * a1;
            }
            break;
        }
        case PrimitiveGate::Kind::Rz: {
            const Complex lo{std::cos(gate.angle / 2.0), -std::sin(gate.angle / 2.0)};
            const Complex hi = std::conj(lo);
            for (Eigen::Index i = 0; i < dim; ++i) {
                amplitudes_[i] *= (static_cast<std::uint64_t>(i) & t) ? hi : lo;
            }
            break;
        }
        case PrimitiveGate::Kind::Cnot: {
            const std::uint64_t ctrl = std::uint64_t{1} << gate.control;
            for (Eigen::Index i = 0; i < dim; ++i) {
                const auto iu = static_cast<std::uint64_t>(i);
                if ((iu & ctrl) && !(iu & t)) {
                    std::swap(amplitudes_[i], amplitudes_[static_cast<Eigen::Index>(iu | t)]);
                }
            }
            break;
        }
    }
}

void dense_apply_circuit(DenseState& state, std::span<const ExponentialGate> gates) {
    for (const auto& gate : gates) state.apply(gate);
}

double dense_energy(const DenseState& state, const PauliSumOperator& h) {
    if (h.n_qubits() != state.n_qubits()) throw InputError("Hamiltonian qubit count mismatch");
    const auto& amps = state.amplitudes();
    Complex acc{0.0, 0.0};
    for (const auto& term : h.terms()) {
        Complex expectation{0.0, 0.0};
        for (Eigen::Index i = 0; i < amps.size(); ++i) {
            const auto image = term.pauli.apply(static_cast<u128>(static_cast<std::uint64_t>(i)));
            const auto j = static_cast<Eigen::Index>(static_cast<std::uint64_t>(image.index));
            expectation += std::conj(amps[j]) * mul_i_power(amps[i], image.phase);
        }
        acc += term.coefficient * expectation;
    }
    return acc.real();
}

double ground_energy(const PauliSumOperator& h) {
    if (h.n_qubits() > 10) {
        throw InputError("ground_energy supports at most 10 qubits");
    }
    const Eigen::MatrixXcd matrix = operator_matrix(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigensolver failed to converge");
    }
    const double lambda = solver.eigenvalues()(0);
    const Eigen::VectorXcd v = solver.eigenvectors().col(0);
    const double residual = (matrix * v - lambda * v).norm();
    const double scale = std::max(1.0, matrix.norm());
    if (residual > 1e-9 * scale) {
        throw NumericalError("eigenpair residual " + std::to_string(residual) +
                             " exceeds certification tolerance");
    }
    return lambda;
}

Eigen::MatrixXcd pauli_matrix(const PauliString& p) {
    if (p.n_qubits() > 12) {
        throw InputError("pauli_matrix supports at most 12 qubits");
    }
    static const Eigen::Matrix2cd kFactor[4] = {
        (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),                            // I
        (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),                            // X
        (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),                           // Z
        (Eigen::Matrix2cd() << 0, Complex{0, -1}, Complex{0, 1}, 0).finished(),   // Y
    };
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Constant(1, 1, i_power(p.phase_exponent()));
    for (int j = 0; j < p.n_qubits(); ++j) {
        const unsigned f = static_cast<unsigned>((p.x_mask() >> j) & 1) |
                           (static_cast<unsigned>((p.z_mask() >> j) & 1) << 1);
        const Eigen::Matrix2cd& factor = kFactor[f];
        // Qubit j owns bit j, so it becomes the left Kronecker factor over
        // everything built so far.
        Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
        next.topLeftCorner(m.rows(), m.cols()) = factor(0, 0) * m;
        next.topRightCorner(m.rows(), m.cols()) = factor(0, 1) * m;
        next.bottomLeftCorner(m.rows(), m.cols()) = factor(1, 0) * m;
        next.bottomRightCorner(m.rows(), m.cols()) = factor(1, 1) * m;
        m = std::move(next);
    }
    return m;
}

Eigen::MatrixXcd operator_matrix(const PauliSumOperator& h) {
    const Eigen::Index dim = dim_of(h.n_qubits());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& term : h.terms()) {
        m += term.coefficient * pauli_matrix(term.pauli);
    }
    return m;
}

}  // namespace pexsim
