// Copyright 2026 The dimwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include "doctest.h"
#include "dimwit/error.hpp"
#include "dimwit/qcore.hpp"
#include "random_protocols.hpp"

using namespace dimwit;

TEST_CASE("density matrices are validated") {
    CHECK(DensityMatrix::basis(3, 1).is_pure());
    CHECK_FALSE(DensityMatrix::maximally_mixed(2).is_pure());
    CHECK_THROWS_AS(DensityMatrix{identity(2)}, DomainError);  // trace 2
    CHECK_THROWS_AS(DensityMatrix{pauli_x()}, DomainError);  // trace 0
    CMatrix neg = basis_projector(2, 0) * 1.5 - basis_projector(2, 1) * 0.5;
    CHECK_THROWS_AS(DensityMatrix{neg}, DomainError);  // eigenvalue -0.5
    CHECK_THROWS_AS(DensityMatrix(CMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("effects live between 0 and 1") {
    CHECK_THROWS_AS(Effect(identity(2) * 1.1), DomainError);
    CHECK_THROWS_AS(Effect(-basis_projector(2, 0)), DomainError);
    const Effect e(basis_projector(3, 2));
    CHECK((e.complement().matrix() - basis_projector(3, 0) - basis_projector(3, 1)).norm() < 1e-15);
}

TEST_CASE("instruments must be complete") {
    const KrausMap k0({basis_projector(2, 0)});
    const KrausMap k1({basis_projector(2, 1)});
    CHECK_NOTHROW(Instrument({k0, k1}));
    CHECK_THROWS_AS(Instrument({k0, k0}), DomainError);
    CHECK_THROWS_AS(Instrument({k0}), DomainError);
    CHECK_THROWS_AS(KrausMap({identity(2) * 1.01}), DomainError);
}

TEST_CASE("trace of the updated state equals the outcome probability") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 2 + trial % 3;
        const Instrument inst = testing::random_instrument(dim, 2 + trial % 2, rng);
        const DensityMatrix rho = testing::random_state(dim, rng);
        CHECK(completeness_defect(inst) < 1e-9);
        double total = 0.0;
        for (std::size_t o = 0; o < inst.outcome_count(); ++o) {
            const double p = probability(effect_of(inst, static_cast<int>(o)), rho);
            CHECK(apply_map(inst.map(o), rho).trace().real() == doctest::Approx(p).epsilon(1e-10));
            total += p;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("pulse unitaries") {
    const Complex mi(0, -1);
    const Unitary u = Unitary::pi01();
    CHECK(u.matrix()(0, 1) == mi);
    CHECK(u.matrix()(1, 0) == mi);
    CHECK(u.matrix()(2, 2) == Complex(1, 0));
    const Unitary v = Unitary::pi02(0.3);
    CHECK(std::abs(v.matrix()(1, 1) - std::polar(1.0, 0.3)) < 1e-15);
    CHECK_THROWS_AS(Unitary(identity(3) * 2.0), DomainError);
    CHECK((Unitary::idle().matrix() - identity(3)).norm() < 1e-15);
}

TEST_CASE("Bloch round trip") {
    const BlochVector a{0.3, -0.4, 0.5};
    const BlochVector b = state_to_bloch(bloch_to_state(a));
    for (int i = 0; i < 3; ++i) CHECK(b[i] == doctest::Approx(a[i]));
    CHECK_THROWS_AS(bloch_to_state({1.0, 1.0, 0.0}), DomainError);
}

TEST_CASE("bloch_effect parameter domain") {
    CHECK_NOTHROW(bloch_effect(0.5, 1.0, {1, 0, 0}));
    CHECK_THROWS_AS(bloch_effect(0.6, 1.0, {1, 0, 0}), DomainError);
    CHECK_THROWS_AS(bloch_effect(0.5, 1.2, {1, 0, 0}), DomainError);
    CHECK_THROWS_AS(bloch_effect(0.5, 0.5, {1, 1, 0}), DomainError);
}

TEST_CASE("measure-and-prepare realizes tr(E rho) sigma") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const DensityMatrix rho = testing::random_state(3, rng);
        const DensityMatrix s0 = testing::random_state(3, rng);
        const DensityMatrix s1 = testing::random_state(3, rng);
        const CMatrix g = testing::random_complex(3, 3, rng);
        CMatrix e = g * g.adjoint();
        e /= max_eigenvalue(e) * 1.01;
        const Effect e0(e);
        const Instrument inst = measure_and_prepare({e0, e0.complement()}, {s0, s1});
        const double p0 = probability(e0, rho);
        CHECK((apply_map(inst.map(0), rho) - p0 * s0.matrix()).norm() < 1e-9);
        CHECK((apply_map(inst.map(1), rho) - (1 - p0) * s1.matrix()).norm() < 1e-9);
    }
}

TEST_CASE("outcome labels") {
    CHECK(outcome_label(0, 2) == '+');
    CHECK(outcome_label(1, 2) == '-');
    CHECK(outcome_label(2, 3) == '2');
    CHECK(outcome_from_label('-', 2) == 1);
    CHECK_THROWS_AS(outcome_from_label('3', 3), DomainError);
    CHECK_THROWS_AS(outcome_label(2, 2), DomainError);
}
