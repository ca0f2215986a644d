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

#include "pexsim/sparsity.hpp"

#include <array>
#include <cmath>

#include "pexsim/errors.hpp"

namespace pexsim {

namespace {

// Column echelon form with combination tracking. Each pivot stores a reduced
// column (distinct top bit) plus the XOR-combination of original columns
// that produced it; columns that reduce to zero yield kernel vectors.
class Eliminator {
  public:
    explicit Eliminator(const XYMatrix& m) : n_columns_(m.columns.size()) {
        pivot_slot_.fill(-1);
        for (std::size_t j = 0; j < m.columns.size(); ++j) {
            u128 v = m.columns[j];
            BitVec combo(n_columns_);
            combo.set(j);
            reduce(v, combo);
            if (v == 0) {
                kernel_.push_back(std::move(combo));
            } else {
                pivot_slot_[static_cast<std::size_t>(top_bit128(v))] =
                    static_cast<int>(pivots_.size());
                pivots_.push_back({v, std::move(combo)});
            }
        }
    }

    int rank() const noexcept { return static_cast<int>(pivots_.size()); }
    const std::vector<BitVec>& kernel() const noexcept { return kernel_; }

    // Reduces v against the pivots, XOR-ing their combinations into combo.
    // On return v == 0 iff the original v was in the column span.
    void reduce(u128& v, BitVec& combo) const {
        while (v != 0) {
            const int slot = pivot_slot_[static_cast<std::size_t>(top_bit128(v))];
            if (slot < 0) return;
            v ^= pivots_[static_cast<std::size_t>(slot)].column;
            combo ^= pivots_[static_cast<std::size_t>(slot)].combo;
        }
    }

    bool in_span(u128 v) const {
        BitVec combo(n_columns_);
        reduce(v, combo);
        return v == 0;
    }

  private:
    struct Pivot {
        u128 column;
        BitVec combo;
    };

    std::size_t n_columns_;
    std::vector<Pivot> pivots_;
    std::vector<BitVec> kernel_;
    std::array<int, 128> pivot_slot_{};
};

}  // namespace

XYMatrix xy_matrix(std::span<const ExponentialGate> gates) {
    if (gates.empty()) throw InputError("xy_matrix requires at least one gate");
    XYMatrix m;
    m.n_qubits = gates.front().pauli.n_qubits();
    m.columns.reserve(gates.size());
    for (const auto& gate : gates) {
        if (gate.pauli.n_qubits() != m.n_qubits) {
            throw InputError("gate qubit counts are inconsistent");
        }
        m.columns.push_back(gate.pauli.x_mask());
    }
    return m;
}

int gf2_rank(const XYMatrix& m) { return Eliminator(m).rank(); }

bool mask_in_span(const XYMatrix& m, u128 candidate) {
    return Eliminator(m).in_span(candidate);
}

NonzeroBound upper_bound_nonzeros(std::span<const ExponentialGate> gates) {
    const int rank = gf2_rank(xy_matrix(gates));
    NonzeroBound bound;
    bound.rank = rank;
    if (rank >= 128) {
        bound.saturated = true;
    } else {
        bound.count = u128{1} << rank;
    }
    return bound;
}

std::optional<GF2Solution> solve_gf2(const XYMatrix& m, u128 target) {
    const Eliminator elim(m);
    BitVec combo(m.columns.size());
    u128 v = target;
    elim.reduce(v, combo);
    if (v != 0) return std::nullopt;
    return GF2Solution{std::move(combo), elim.kernel()};
}

std::complex<double> single_amplitude(std::span<const ExponentialGate> gates, u128 x, u128 y,
                                      std::uint64_t enumeration_budget) {
    if (gates.empty()) throw InputError("single_amplitude requires at least one gate");
    const XYMatrix m = xy_matrix(gates);
    const auto solution = solve_gf2(m, x ^ y);
    if (!solution) return {0.0, 0.0};

    const std::size_t nullity = solution->nullspace_basis.size();
    if (nullity >= 63 || (std::uint64_t{1} << nullity) > enumeration_budget) {
        throw NumericalError("solution enumeration 2^" + std::to_string(nullity) +
                             " exceeds the budget of " + std::to_string(enumeration_budget));
    }

    const std::size_t n_gates = gates.size();
    std::vector<double> cosines(n_gates), sines(n_gates);
    for (std::size_t k = 0; k < n_gates; ++k) {
        cosines[k] = std::cos(gates[k].theta);
        sines[k] = std::sin(gates[k].theta);
    }

    std::complex<double> total{0.0, 0.0};
    const std::uint64_t n_solutions = std::uint64_t{1} << nullity;
    for (std::uint64_t s = 0; s < n_solutions; ++s) {
        BitVec pick = solution->particular;
        for (std::size_t b = 0; b < nullity; ++b) {
            if ((s >> b) & 1) pick ^= solution->nullspace_basis[b];
        }
        double magnitude = 1.0;
        unsigned phase = 0;
        u128 index = x;
        for (std::size_t k = 0; k < n_gates; ++k) {
            if (pick.get(k)) {
                magnitude *= sines[k];
                phase += 1;  // the i in i*sin(theta)*P
                const auto step = gates[k].pauli.apply(index);
                index = step.index;
                phase += step.phase;
            } else {
                magnitude *= cosines[k];
            }
        }
        total += mul_i_power(std::complex<double>{magnitude, 0.0}, phase);
    }
    return total;
}

}  // namespace pexsim
