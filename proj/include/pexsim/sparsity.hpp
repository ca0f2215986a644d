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
#include <optional>
#include <span>
#include <vector>

#include "pexsim/state.hpp"

namespace pexsim {

/// GF(2) vector of fixed length, packed into 64-bit words.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t size) : words_((size + 63) / 64, 0), size_(size) {}

    std::size_t size() const noexcept { return size_; }
    bool get(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1; }
    void set(std::size_t i) noexcept { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

    BitVec& operator^=(const BitVec& other) noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
        return *this;
    }

    bool any() const noexcept {
        for (const auto w : words_) {
            if (w != 0) return true;
        }
        return false;
    }

    bool operator==(const BitVec&) const = default;

  private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

/// Column matrix over GF(2): column i is the XY-mask of entangler i.
struct XYMatrix {
    int n_qubits = 0;
    std::vector<u128> columns;
};

/// Columns in gate order.
XYMatrix xy_matrix(std::span<const ExponentialGate> gates);

/// Rank over GF(2), by elimination on the 128-bit columns.
int gf2_rank(const XYMatrix& m);

/// True iff candidate lies in the span of the columns.
bool mask_in_span(const XYMatrix& m, u128 candidate);

/// Upper bound 2^rank on the nonzero-element count of the final state.
/// `count` is valid only when !saturated (rank <= 127).
struct NonzeroBound {
    int rank = 0;
    bool saturated = false;
    u128 count = 0;
};

NonzeroBound upper_bound_nonzeros(std::span<const ExponentialGate> gates);

/// Solution set of `columns * p = target` over GF(2): every solution is
/// particular XOR a subset-sum of the nullspace basis.
struct GF2Solution {
    BitVec particular;
    std::vector<BitVec> nullspace_basis;
};

/// Empty optional means the system is infeasible.
std::optional<GF2Solution> solve_gf2(const XYMatrix& m, u128 target);

/// <y| U_m ... U_1 |x> by enumerating the solutions of the mask system:
/// each solution picks, per gate, the cos(theta) branch or the
/// i sin(theta) P branch, with the selected Paulis applied in circuit order
/// and their i-power phases accumulated exactly. An infeasible system gives
/// exact 0. Throws NumericalError when 2^nullity exceeds the budget.
std::complex<double> single_amplitude(std::span<const ExponentialGate> gates, u128 x, u128 y,
                                      std::uint64_t enumeration_budget = std::uint64_t{1} << 24);

}  // namespace pexsim
