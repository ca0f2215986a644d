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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <absl/container/flat_hash_set.h>
#include <algorithm>

#include "pexsim/errors.hpp"
#include "pexsim/sparsity.hpp"
#include "test_helpers.hpp"

using namespace pexsim;
using testing::Rng;

namespace {

ExponentialGate gate_of(const std::string& text, int n, double theta) {
    return {parse_pauli(text, n), theta};
}

// Brute-force span: all distinct XORs of column subsets. Exponential in the
// column count; the independent oracle for rank and membership.
absl::flat_hash_set<u128, BasisHash> span_of(const std::vector<u128>& columns) {
    absl::flat_hash_set<u128, BasisHash> span{u128{0}};
    for (const u128 column : columns) {
        absl::flat_hash_set<u128, BasisHash> next = span;
        for (const u128 v : span) next.insert(v ^ column);
        span = std::move(next);
    }
    return span;
}

// Random ansatz whose XY-masks are linearly independent, with generic angles.
std::vector<ExponentialGate> independent_mask_ansatz(Rng& rng, int n, int r) {
    std::vector<ExponentialGate> gates;
    std::vector<u128> masks;
    while (static_cast<int>(gates.size()) < r) {
        const PauliString p = testing::random_pauli(rng, n);
        if (p.x_mask() == 0) continue;
        masks.push_back(p.x_mask());
        XYMatrix m{n, masks};
        if (gf2_rank(m) != static_cast<int>(masks.size())) {
            masks.pop_back();
            continue;
        }
        gates.emplace_back(p, testing::generic_angle(rng));
    }
    return gates;
}

}  // namespace

TEST_CASE("xy_matrix encodes gate masks in order") {
    const int n = 3;
    const auto m1 = xy_matrix(std::vector<ExponentialGate>{gate_of("Z0 Z1", n, 0.3)});
    REQUIRE(m1.columns.size() == 1);
    CHECK(m1.columns[0] == 0);

    const auto m2 = xy_matrix(
        std::vector<ExponentialGate>{gate_of("X0", n, 0.1), gate_of("Y0", n, 0.2)});
    CHECK(m2.columns[0] == u128{0b1});
    CHECK(m2.columns[1] == u128{0b1});

    const auto m3 = xy_matrix(std::vector<ExponentialGate>{gate_of("X0 X1", n, 0.1),
                                                           gate_of("X1 X2", n, 0.2),
                                                           gate_of("X0 X2", n, 0.3)});
    CHECK(m3.columns[0] == u128{0b011});
    CHECK(m3.columns[1] == u128{0b110});
    CHECK(m3.columns[2] == u128{0b101});

    CHECK_THROWS_AS(xy_matrix({}), InputError);
}

TEST_CASE("gf2_rank fixed cases") {
    CHECK(gf2_rank(XYMatrix{4, {0, 0, 0}}) == 0);
    CHECK(gf2_rank(XYMatrix{3, {0b011, 0b110, 0b101}}) == 2);  // third = first ^ second
    CHECK(gf2_rank(XYMatrix{128, {u128{1} << 127, u128{1}}}) == 2);
}

TEST_CASE("gf2_rank against the brute-force span oracle") {
    Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 10);
        const int m = 1 + static_cast<int>(rng() % 12);
        std::vector<u128> columns;
        for (int j = 0; j < m; ++j) {
            columns.push_back(testing::random_reference(rng, n));
        }
        const XYMatrix matrix{n, columns};
        const auto span = span_of(columns);
        // |span| = 2^rank.
        CHECK((std::size_t{1} << gf2_rank(matrix)) == span.size());

        // Rank is invariant under permutation and duplication.
        std::vector<u128> shuffled = columns;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        shuffled.push_back(columns[static_cast<std::size_t>(rng() % columns.size())]);
        CHECK(gf2_rank(XYMatrix{n, shuffled}) == gf2_rank(matrix));

        // Membership agrees with the span.
        const u128 probe = testing::random_reference(rng, n);
        CHECK(mask_in_span(matrix, probe) == span.contains(probe));
    }
}

TEST_CASE("upper_bound_nonzeros") {
    const int n = 4;
    const auto all_z = std::vector<ExponentialGate>{gate_of("Z0 Z1", n, 0.4),
                                                    gate_of("Z2", n, 0.2)};
    const NonzeroBound b1 = upper_bound_nonzeros(all_z);
    CHECK(b1.rank == 0);
    CHECK_FALSE(b1.saturated);
    CHECK(b1.count == 1);

    const auto twin = std::vector<ExponentialGate>{gate_of("X0 Y1", n, 0.4),
                                                   gate_of("Y0 X1", n, 0.2)};
    const NonzeroBound b2 = upper_bound_nonzeros(twin);  // identical XY masks
    CHECK(b2.rank == 1);
    CHECK(b2.count == 2);
}

TEST_CASE("solve_gf2 enumerates exactly the solution set") {
    // Parity pair: two columns 0b1, target 0b1 -> solutions {10, 01}.
    const XYMatrix pair{1, {u128{1}, u128{1}}};
    const auto solution = solve_gf2(pair, u128{1});
    REQUIRE(solution.has_value());
    CHECK(solution->nullspace_basis.size() == 1);

    const auto column_xor = [](const XYMatrix& m, const BitVec& pick) {
        u128 acc = 0;
        for (std::size_t j = 0; j < m.columns.size(); ++j) {
            if (pick.get(j)) acc ^= m.columns[j];
        }
        return acc;
    };
    CHECK(column_xor(pair, solution->particular) == u128{1});
    BitVec other = solution->particular;
    other ^= solution->nullspace_basis[0];
    CHECK(column_xor(pair, other) == u128{1});
    CHECK(other != solution->particular);

    // Infeasible: the single column 0b01 cannot reach 0b10.
    CHECK_FALSE(solve_gf2(XYMatrix{2, {u128{0b01}}}, u128{0b10}).has_value());

    // Target zero: particular is the zero vector.
    const auto trivial = solve_gf2(pair, 0);
    REQUIRE(trivial.has_value());
    CHECK_FALSE(trivial->particular.any());
}

TEST_CASE("solve_gf2 randomized: every enumerated solution solves the system") {
    Rng rng(103);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 8);
        const int m = 1 + static_cast<int>(rng() % 10);
        std::vector<u128> columns;
        for (int j = 0; j < m; ++j) columns.push_back(testing::random_reference(rng, n));
        const XYMatrix matrix{n, columns};
        const u128 target = testing::random_reference(rng, n);

        const auto solution = solve_gf2(matrix, target);
        const auto span = span_of(columns);
        CHECK(solution.has_value() == span.contains(target));
        if (!solution) continue;

        const std::size_t nullity = solution->nullspace_basis.size();
        REQUIRE(nullity <= 12);
        absl::flat_hash_set<std::uint64_t> seen;
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << nullity); ++s) {
            BitVec pick = solution->particular;
            for (std::size_t b = 0; b < nullity; ++b) {
                if ((s >> b) & 1) pick ^= solution->nullspace_basis[b];
            }
            u128 acc = 0;
            std::uint64_t fingerprint = 0;
            for (std::size_t j = 0; j < columns.size(); ++j) {
                if (pick.get(j)) {
                    acc ^= columns[j];
                    fingerprint |= std::uint64_t{1} << j;
                }
            }
            CHECK(acc == target);
            CHECK(seen.insert(fingerprint).second);  // solutions are distinct
        }
        // Solution count is 2^(m - rank).
        CHECK(nullity == static_cast<std::size_t>(m - gf2_rank(matrix)));
    }
}

TEST_CASE("single_amplitude fixed cases") {
    const int n = 2;
    // Unreachable target: X0 cannot flip qubit 1.
    const std::vector<ExponentialGate> flip0{gate_of("X0", n, 0.7)};
    CHECK(single_amplitude(flip0, 0b00, 0b10) == std::complex<double>{0.0, 0.0});

    // Two X0 rotations: <0|U|0> = cos(t1 + t2).
    const double t1 = 0.35, t2 = 0.85;
    const std::vector<ExponentialGate> two{gate_of("X0", n, t1), gate_of("X0", n, t2)};
    const auto amp = single_amplitude(two, 0, 0);
    CHECK(std::abs(amp - std::complex<double>{std::cos(t1 + t2), 0.0}) < 1e-14);
}

TEST_CASE("single_amplitude matches the cutoff-0 simulation and the dense oracle") {
    Rng rng(107);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const int m = 1 + static_cast<int>(rng() % 12);
        const auto gates = testing::random_circuit(rng, n, m);
        const u128 x = testing::random_reference(rng, n);

        SparseState state = SparseState::from_reference(n, x, 0.0);
        apply_circuit(state, gates);
        DenseState dense = DenseState::from_reference(n, x);
        dense_apply_circuit(dense, gates);

        // Probe a stored index, plus a random (often absent) one.
        u128 probe = state.entries().begin()->first;
        CHECK(std::abs(single_amplitude(gates, x, probe) - state.amplitude(probe)) < 1e-10);
        CHECK(std::abs(single_amplitude(gates, x, probe) - dense.amplitude(probe)) < 1e-10);
        probe = testing::random_reference(rng, n);
        CHECK(std::abs(single_amplitude(gates, x, probe) - state.amplitude(probe)) < 1e-10);
        CHECK(std::abs(single_amplitude(gates, x, probe) - dense.amplitude(probe)) < 1e-10);
    }
}

TEST_CASE("single_amplitude budget guard") {
    const int n = 2;
    std::vector<ExponentialGate> gates;
    for (int k = 0; k < 6; ++k) gates.push_back(gate_of("X0", n, 0.1 * (k + 1)));
    // rank 1, nullity 5: 32 solutions > budget 16.
    CHECK_THROWS_AS(single_amplitude(gates, 0, 1, 16), NumericalError);
    CHECK_NOTHROW(single_amplitude(gates, 0, 1, 32));
}

TEST_CASE("element count obeys the 2^rank bound; tight for independent generic ansatze") {
    Rng rng(109);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 9);
        const int m = 1 + static_cast<int>(rng() % 15);
        const auto gates = testing::random_circuit(rng, n, m);
        SparseState state =
            SparseState::from_reference(n, testing::random_reference(rng, n), 0.0);
        apply_circuit(state, gates);
        const int rank = gf2_rank(xy_matrix(gates));
        CHECK(state.size() <= (std::size_t{1} << rank));
    }

    for (int trial = 0; trial < 15; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 8);
        const int r = 1 + static_cast<int>(rng() % std::min(n, 8));
        const auto gates = independent_mask_ansatz(rng, n, r);
        SparseState state =
            SparseState::from_reference(n, testing::random_reference(rng, n), 0.0);
        apply_circuit(state, gates);
        CHECK(state.size() == (std::size_t{1} << r));
    }
}
