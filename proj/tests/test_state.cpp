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

#include <cmath>
#include <numbers>

#include "pexsim/errors.hpp"
#include "pexsim/state.hpp"
#include "test_helpers.hpp"

using namespace pexsim;
using testing::Rng;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("from_reference") {
    const SparseState s4 = SparseState::from_reference(4, 0b0011, 1e-11);
    CHECK(s4.size() == 1);
    CHECK(s4.amplitude(0b0011) == std::complex<double>{1.0, 0.0});
    CHECK(s4.norm_sq() == doctest::Approx(1.0).epsilon(1e-14));

    // 80-qubit Hartree-Fock-style reference with the 40 low bits set.
    const u128 hf80 = low_mask128(40);
    const SparseState s80 = SparseState::from_reference(80, hf80, 1e-12);
    CHECK(s80.size() == 1);
    CHECK(s80.amplitude(hf80) == std::complex<double>{1.0, 0.0});

    const SparseState s1 = SparseState::from_reference(1, 0, 0.0);
    CHECK(s1.size() == 1);

    CHECK_THROWS_AS(SparseState::from_reference(4, 0, 1.0), InputError);
    CHECK_THROWS_AS(SparseState::from_reference(4, 0, 1.5), InputError);
    CHECK_THROWS_AS(SparseState::from_reference(4, 0, -0.25), InputError);
    CHECK_THROWS_AS(SparseState::from_reference(4, u128{1} << 4, 0.0), InputError);
    CHECK_THROWS_AS(SparseState::from_reference(0, 0, 0.0), InputError);
}

TEST_CASE("gates must be bare Paulis") {
    const PauliString phased(1, 1, 0, 1);
    CHECK_THROWS_AS(ExponentialGate(phased, 0.1), InputError);
}

TEST_CASE("single X rotation splits the reference") {
    SparseState state = SparseState::from_reference(1, 0, 0.0);
    state.apply({parse_pauli("X0", 1), 0.3});
    CHECK(state.size() == 2);
    CHECK(std::abs(state.amplitude(0) - std::complex<double>{std::cos(0.3), 0.0}) < 1e-15);
    CHECK(std::abs(state.amplitude(1) - std::complex<double>{0.0, std::sin(0.3)}) < 1e-15);
}

TEST_CASE("diagonal gates are in-place phase updates") {
    SparseState state = SparseState::from_reference(1, 0, 0.0);
    const double theta = 0.7;
    state.apply({parse_pauli("Z0", 1), theta});
    CHECK(state.size() == 1);
    CHECK(std::abs(state.amplitude(0) - std::complex<double>{std::cos(theta), std::sin(theta)}) <
          1e-15);

    // Element count and Z-diagonal energies are untouched by diagonal gates.
    Rng rng(5);
    const int n = 6;
    SparseState random_state = SparseState::from_reference(n, 0b010101, 0.0);
    apply_circuit(random_state, testing::random_circuit(rng, n, 8));
    const std::size_t before = random_state.size();

    PauliSumBuilder builder(n);
    for (int t = 0; t < 5; ++t) {
        const PauliString p = testing::random_pauli(rng, n);
        builder.add(0.3 * static_cast<double>(t + 1), PauliString(n, 0, p.z_mask(), 0));
    }
    const PauliSumOperator diag_h = builder.finalize();
    const double energy_before = energy(random_state, diag_h, 1).energy;

    const PauliString zz = testing::random_pauli(rng, n);
    random_state.apply({PauliString(n, 0, zz.z_mask() | 1, 0), 1.1});
    CHECK(random_state.size() == before);
    CHECK(energy(random_state, diag_h, 1).energy ==
          doctest::Approx(energy_before).epsilon(1e-12));
}

TEST_CASE("theta = 0 leaves the state unchanged") {
    Rng rng(7);
    SparseState state = SparseState::from_reference(4, 0b1010, 0.0);
    apply_circuit(state, testing::random_circuit(rng, 4, 6));
    const auto snapshot = state.entries();
    state.apply({testing::random_pauli(rng, 4), 0.0});
    CHECK(state.size() == snapshot.size());
    for (const auto& [index, amp] : snapshot) {
        CHECK(std::abs(state.amplitude(index) - amp) < 1e-14);
    }
}

TEST_CASE("pi/2 rotation prunes the cosine branch") {
    SparseState state = SparseState::from_reference(1, 0, 1e-12);
    state.apply({parse_pauli("X0", 1), kPi / 2.0});
    CHECK(state.size() == 1);
    CHECK(std::abs(state.amplitude(1) - std::complex<double>{0.0, 1.0}) < 1e-15);
}

TEST_CASE("aggressive cutoff empties the state with the gate ordinal") {
    SparseState state = SparseState::from_reference(1, 0, 0.6);
    const std::vector<ExponentialGate> gates = {{parse_pauli("Z0", 1), 0.4},
                                                {parse_pauli("X0", 1), kPi / 4.0}};
    try {
        apply_circuit(state, gates);
        FAIL("expected EmptyStateError");
    } catch (const EmptyStateError& e) {
        CHECK(e.gate_ordinal() == 2);
    }
}

TEST_CASE("apply_circuit basics") {
    SparseState state = SparseState::from_reference(2, 0, 0.0);
    const auto trace = apply_circuit(state, {});
    CHECK(trace.elements_after.empty());
    CHECK(state.size() == 1);

    // Two X0 rotations compose their angles.
    const double t1 = 0.4, t2 = 0.9;
    const std::vector<ExponentialGate> gates = {{parse_pauli("X0", 2), t1},
                                                {parse_pauli("X0", 2), t2}};
    const auto trace2 = apply_circuit(state, gates);
    CHECK(trace2.elements_after.size() == 2);
    CHECK(std::abs(state.amplitude(0) - std::complex<double>{std::cos(t1 + t2), 0.0}) < 1e-12);
}

TEST_CASE("two-sparsity and unit norm after every gate") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 9);
        SparseState state =
            SparseState::from_reference(n, testing::random_reference(rng, n), 0.0);
        for (const auto& gate : testing::random_circuit(rng, n, 15)) {
            const std::size_t before = state.size();
            state.apply(gate);
            CHECK(state.size() <= 2 * before);
            CHECK(state.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("cutoff 0 matches the dense oracle per amplitude") {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 11);
        const u128 reference = testing::random_reference(rng, n);
        const auto gates = testing::random_circuit(rng, n, 1 + static_cast<int>(rng() % 30));

        SparseState sparse = SparseState::from_reference(n, reference, 0.0);
        apply_circuit(sparse, gates);
        DenseState dense = DenseState::from_reference(n, reference);
        dense_apply_circuit(dense, gates);

        const std::uint64_t dim = std::uint64_t{1} << n;
        for (std::uint64_t i = 0; i < dim; ++i) {
            CHECK(std::abs(sparse.amplitude(i) - dense.amplitude(i)) < 1e-10);
        }
    }
}

TEST_CASE("element counts weakly decrease with growing cutoff") {
    Rng rng(19);
    const int n = 8;
    const u128 reference = 0b00001111;
    const auto gates = testing::random_circuit(rng, n, 20);

    std::size_t previous = 0;
    bool first = true;
    for (const double cutoff : {1e-2, 1e-4, 1e-8, 0.0}) {
        SparseState state = SparseState::from_reference(n, reference, cutoff);
        apply_circuit(state, gates);
        if (!first) CHECK(previous <= state.size());
        previous = state.size();
        first = false;
    }
}

TEST_CASE("inner_product") {
    const SparseState zero = SparseState::from_reference(1, 0, 0.0);
    const SparseState one = SparseState::from_reference(1, 1, 0.0);
    CHECK(inner_product(zero, zero) == std::complex<double>{1.0, 0.0});
    CHECK(inner_product(zero, one) == std::complex<double>{0.0, 0.0});

    Rng rng(29);
    const int n = 8;
    SparseState a = SparseState::from_reference(n, testing::random_reference(rng, n), 0.0);
    SparseState b = SparseState::from_reference(n, testing::random_reference(rng, n), 0.0);
    apply_circuit(a, testing::random_circuit(rng, n, 12));
    apply_circuit(b, testing::random_circuit(rng, n, 12));

    const DenseState da = DenseState::from_sparse(a);
    const DenseState db = DenseState::from_sparse(b);
    const std::complex<double> expected = da.amplitudes().dot(db.amplitudes());
    CHECK(std::abs(inner_product(a, b) - expected) < 1e-12);

    CHECK_THROWS_AS(inner_product(zero, SparseState::from_reference(2, 0, 0.0)), InputError);
}

TEST_CASE("state dump round trip") {
    Rng rng(31);
    const auto dir = testing::scratch_dir("state_dump");
    const auto path = dir / "state.bin";

    SparseState state = SparseState::from_reference(40, low_mask128(20), 0.0);
    apply_circuit(state, testing::random_circuit(rng, 40, 10));
    save_state(state, path);

    const SparseState loaded = load_state(path, state.cutoff());
    CHECK(loaded.n_qubits() == state.n_qubits());
    CHECK(loaded.size() == state.size());
    for (const auto& [index, amp] : state.entries()) {
        CHECK(loaded.amplitude(index) == amp);  // bit-exact
    }

    const auto bogus = dir / "bogus.bin";
    std::ofstream(bogus) << "not a dump";
    CHECK_THROWS_AS(load_state(bogus), InputError);
}

TEST_CASE("hash map memory model") {
    CHECK(hash_map_model_bytes(0) == 330);    // capacity stays at 10
    CHECK(hash_map_model_bytes(9) == 330);    // 9 <= 0.9375 * 10
    CHECK(hash_map_model_bytes(10) == 660);   // one doubling
    // 20629402 elements need capacity 10 * 2^22; 33 bytes per slot.
    CHECK(hash_map_model_bytes(20629402) == 1384120320);
}
