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

#include "pexsim/errors.hpp"
#include "pexsim/pauli.hpp"
#include "test_helpers.hpp"

using namespace pexsim;
using testing::Rng;

namespace {

// All 4^n Pauli strings on n qubits, phase 0.
std::vector<PauliString> all_paulis(int n) {
    std::vector<PauliString> out;
    const std::uint64_t count = std::uint64_t{1} << (2 * n);
    out.reserve(count);
    for (std::uint64_t code = 0; code < count; ++code) {
        u128 x = 0, z = 0;
        for (int j = 0; j < n; ++j) {
            const unsigned f = (code >> (2 * j)) & 3u;
            if (f & 1u) x |= u128{1} << j;
            if (f & 2u) z |= u128{1} << j;
        }
        out.emplace_back(n, x, z, 0);
    }
    return out;
}

}  // namespace

TEST_CASE("parse_pauli basic forms") {
    const PauliString identity = parse_pauli("I", 4);
    CHECK(identity.is_identity());
    CHECK(identity.x_mask() == 0);
    CHECK(identity.z_mask() == 0);
    CHECK(identity.phase_exponent() == 0);

    const PauliString xz = parse_pauli("X0 Z2", 4);
    CHECK(xz.x_mask() == u128{0b0001});
    CHECK(xz.z_mask() == u128{0b0100});

    const PauliString y = parse_pauli("Y1", 2);
    CHECK(y.x_mask() == u128{0b10});
    CHECK(y.z_mask() == u128{0b10});

    // Canonical rendering sorts by qubit index.
    CHECK(parse_pauli("Z2 X0", 4).str() == "X0 Z2");
    CHECK(parse_pauli("I", 7).str() == "I");
}

TEST_CASE("parse_pauli rejects malformed input") {
    CHECK_THROWS_AS(parse_pauli("X0 Y0", 4), InputError);   // duplicate qubit
    CHECK_THROWS_AS(parse_pauli("X5", 4), InputError);      // out of range
    CHECK_THROWS_AS(parse_pauli("A0", 4), InputError);      // unknown letter
    CHECK_THROWS_AS(parse_pauli("X", 4), InputError);       // missing index
    CHECK_THROWS_AS(parse_pauli("X-1", 4), InputError);
    CHECK_THROWS_AS(parse_pauli("", 4), InputError);
    CHECK_THROWS_AS(parse_pauli("I X0", 4), InputError);
    CHECK_THROWS_AS(parse_pauli("X0", 0), InputError);
    CHECK_THROWS_AS(parse_pauli("X0", 129), InputError);
}

TEST_CASE("parse/str round trip") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const PauliString p = testing::random_pauli(rng, 1 + static_cast<int>(rng() % 120), 0);
        CHECK(parse_pauli(p.str(), p.n_qubits()) == p);
    }
}

TEST_CASE("apply matches single-qubit definitions") {
    const PauliString x0 = parse_pauli("X0", 1);
    auto r = x0.apply(0);
    CHECK(r.index == 1);
    CHECK(r.coeff() == std::complex<double>{1.0, 0.0});

    const PauliString y0 = parse_pauli("Y0", 1);
    r = y0.apply(0);
    CHECK(r.index == 1);
    CHECK(r.coeff() == std::complex<double>{0.0, 1.0});
    r = y0.apply(1);
    CHECK(r.index == 0);
    CHECK(r.coeff() == std::complex<double>{0.0, -1.0});

    const PauliString zz = parse_pauli("Z0 Z1", 2);
    r = zz.apply(0b01);  // bit 0 set
    CHECK(r.index == 0b01);
    CHECK(r.coeff() == std::complex<double>{-1.0, 0.0});
}

TEST_CASE("apply agrees with the Kronecker matrix exhaustively up to n = 6") {
    for (int n = 1; n <= 6; ++n) {
        // Exhaustive for small n, sampled above to keep the suite quick.
        std::vector<PauliString> paulis;
        if (n <= 4) {
            paulis = all_paulis(n);
        } else {
            Rng rng(static_cast<std::uint64_t>(n));
            for (int t = 0; t < 300; ++t) paulis.push_back(testing::random_pauli(rng, n, 0));
        }
        const std::uint64_t dim = std::uint64_t{1} << n;
        for (const auto& p : paulis) {
            const Eigen::MatrixXcd m = pauli_matrix(p);
            for (std::uint64_t basis = 0; basis < dim; ++basis) {
                const auto image = p.apply(basis);
                for (std::uint64_t row = 0; row < dim; ++row) {
                    const std::complex<double> expected =
                        (row == static_cast<std::uint64_t>(image.index))
                            ? image.coeff()
                            : std::complex<double>{0.0, 0.0};
                    CHECK(std::abs(m(static_cast<Eigen::Index>(row),
                                     static_cast<Eigen::Index>(basis)) -
                                   expected) < 1e-15);
                }
            }
        }
    }
}

TEST_CASE("multiply fixed cases") {
    const PauliString x = parse_pauli("X0", 1);
    const PauliString y = parse_pauli("Y0", 1);

    const PauliString xx = multiply(x, x);
    CHECK(xx.is_identity());
    CHECK(xx.phase_exponent() == 0);

    const PauliString xy = multiply(x, y);  // X*Y = iZ
    CHECK(xy.x_mask() == 0);
    CHECK(xy.z_mask() == 1);
    CHECK(xy.phase_exponent() == 1);

    // (X0 Z1) * (Z0 Z1) = (XZ) (x) I = -i Y0
    const PauliString a = parse_pauli("X0 Z1", 2);
    const PauliString b = parse_pauli("Z0 Z1", 2);
    const PauliString ab = multiply(a, b);
    CHECK(ab.x_mask() == u128{0b01});
    CHECK(ab.z_mask() == u128{0b01});
    CHECK(ab.phase_exponent() == 3);
    CHECK((pauli_matrix(ab) - pauli_matrix(a) * pauli_matrix(b)).norm() < 1e-14);

    CHECK_THROWS_AS(multiply(parse_pauli("X0", 1), parse_pauli("X0", 2)), InputError);
}

TEST_CASE("multiply is matrix-faithful and associative on n <= 4") {
    Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const auto with_phase = [&](PauliString p) {
            return PauliString(n, p.x_mask(), p.z_mask(), static_cast<std::uint8_t>(rng() % 4));
        };
        const PauliString a = with_phase(testing::random_pauli(rng, n, 0));
        const PauliString b = with_phase(testing::random_pauli(rng, n, 0));
        const PauliString c = with_phase(testing::random_pauli(rng, n, 0));

        CHECK((pauli_matrix(multiply(a, b)) - pauli_matrix(a) * pauli_matrix(b)).norm() < 1e-13);
        CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    }
}

TEST_CASE("phase-0 Paulis square to the bare identity") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 6);
        const PauliString a = testing::random_pauli(rng, n, 0);
        const PauliString sq = multiply(a, a);
        CHECK(sq.is_identity());
        CHECK(sq.phase_exponent() == 0);
    }
}

TEST_CASE("commutes fixed cases and matrix oracle") {
    const PauliString x0 = parse_pauli("X0", 1);
    const PauliString z0 = parse_pauli("Z0", 1);
    CHECK(commutes(x0, x0));
    CHECK_FALSE(commutes(x0, z0));
    CHECK(commutes(parse_pauli("X0 Z1", 2), parse_pauli("Z0 X1", 2)));

    Rng rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const PauliString a = testing::random_pauli(rng, n, 0);
        const PauliString b = testing::random_pauli(rng, n, 0);
        const Eigen::MatrixXcd ma = pauli_matrix(a);
        const Eigen::MatrixXcd mb = pauli_matrix(b);
        const bool matrix_commutes = (ma * mb - mb * ma).norm() < 1e-12;
        CHECK(commutes(a, b) == matrix_commutes);
    }
    CHECK_THROWS_AS(commutes(parse_pauli("X0", 1), parse_pauli("X0", 2)), InputError);
}

TEST_CASE("weight_profile") {
    const auto identity = parse_pauli("I", 4).weight_profile();
    CHECK(identity.weight == 0);
    CHECK(identity.n_x == 0);
    CHECK(identity.n_y == 0);
    CHECK(identity.n_z == 0);

    const auto xyz = parse_pauli("X0 Y1 Z2", 4).weight_profile();
    CHECK(xyz.weight == 3);
    CHECK(xyz.n_x == 1);
    CHECK(xyz.n_y == 1);
    CHECK(xyz.n_z == 1);

    const auto zz = parse_pauli("Z0 Z5", 8).weight_profile();
    CHECK(zz.weight == 2);
    CHECK(zz.n_z == 2);
    CHECK(zz.n_x == 0);
    CHECK(zz.n_y == 0);
}

TEST_CASE("diagonal strings never move the basis index") {
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 16);
        PauliString p = testing::random_pauli(rng, n, 0);
        p = PauliString(n, 0, p.z_mask(), 0);  // strip the XY part
        const u128 basis = testing::random_reference(rng, n);
        CHECK(p.apply(basis).index == basis);
    }
}
