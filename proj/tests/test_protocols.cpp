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
#include "dimwit/protocols.hpp"
#include "dimwit/simulator.hpp"
#include "dimwit/witness.hpp"

using namespace dimwit;

namespace {

// Hand-built bright/dark effects of a block: bright = U^dagger (|1><1| + |2><2|) U.
CMatrix bright_effect(const CMatrix& u) {
    return u.adjoint() * (basis_projector(3, 1) + basis_projector(3, 2)) * u;
}

}  // namespace

TEST_CASE("pulse names round trip") {
    for (Pulse p : {Pulse::P0, Pulse::Pi01, Pulse::Pi02, Pulse::Idle, Pulse::Detect, Pulse::Cool}) {
        CHECK(pulse_from_name(pulse_name(p)) == p);
    }
    CHECK_THROWS_AS(pulse_from_name("X"), ParseError);
}

TEST_CASE("block grammar is enforced") {
    CHECK_NOTHROW(validate_block({Pulse::Pi02, Pulse::Detect, Pulse::Cool, Pulse::P0, Pulse::Pi01}));
    CHECK_THROWS(validate_block({Pulse::Pi02, Pulse::Cool, Pulse::P0, Pulse::Pi01}));
    CHECK_THROWS(validate_block({Pulse::Pi02, Pulse::Detect, Pulse::P0, Pulse::Pi01}));
    CHECK_THROWS(validate_block({Pulse::Detect, Pulse::Pi02, Pulse::Cool, Pulse::P0, Pulse::Pi01}));
}

TEST_CASE("block reduces to measure-and-prepare with the expected effects") {
    const MeasurementBlock b{{Pulse::Pi02, Pulse::Detect, Pulse::Cool, Pulse::P0, Pulse::Pi01}, 0};
    const MeasureAndPrepare mp = measure_and_prepare_from_pulses(b);
    const CMatrix want = bright_effect(Unitary::pi02().matrix());
    CHECK((mp.effect_bright.matrix() - want).norm() < 1e-12);
    CHECK((mp.effect_bright.matrix() + mp.effect_dark.matrix() - identity(3)).norm() < 1e-12);
    // P0 then Pi01 prepares |1>.
    CHECK((mp.prepared_state.matrix() - basis_projector(3, 1)).norm() < 1e-12);
}

TEST_CASE("bright outcome label selects which effect is '+'") {
    const MeasurementBlock plus{{Pulse::Idle, Pulse::Detect, Pulse::Cool, Pulse::P0, Pulse::Pi01}, 0};
    MeasurementBlock minus = plus;
    minus.bright_outcome = 1;
    const Instrument a = instrument_from_pulses(plus);
    const Instrument b = instrument_from_pulses(minus);
    CHECK((effect_of(a, '+').matrix() - effect_of(b, '-').matrix()).norm() < 1e-12);
}

TEST_CASE("random phases leave every probability unchanged") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> phase(-3.2, 3.2);
    for (const Witness& w : witness_registry()) {
        const WitnessId id = *witness_from_name(w.id);
        const CorrelationTable reference = sequence_probabilities(optimal_protocol(id), w.scenario.length);
        for (int trial = 0; trial < 10; ++trial) {
            ProtocolSpec spec = optimal_protocol_spec(id);
            spec.phases = {phase(rng), phase(rng), phase(rng), phase(rng)};
            const CorrelationTable t = sequence_probabilities(protocol_from_spec(spec), w.scenario.length);
            for (std::size_t i = 0; i < t.flat().size(); ++i) {
                CHECK(t.flat()[i] == doctest::Approx(reference.flat()[i]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("detection kinds of the optimal protocols") {
    const Protocol p = optimal_protocol(WitnessId::B3);
    REQUIRE(p.detection.has_value());
    // Setting 0 records '-' on bright.
    CHECK((*p.detection)[0][1] == DetectionKind::Bright);
    CHECK((*p.detection)[0][0] == DetectionKind::Dark);
    CHECK((*p.detection)[1][0] == DetectionKind::Bright);
}

TEST_CASE("extremal qubit effects") {
    const auto [i0, i1] = extremal_qubit_effects(1.0, 1.0, 0.0);
    // p = 1 gives a rank-one projector.
    CHECK(max_eigenvalue(effect_of(i0, 0).matrix()) == doctest::Approx(1.0));
    CHECK(completeness_defect(i1) < 1e-12);
    CHECK_THROWS_AS(extremal_qubit_effects(1.5, 1.0, 0.0), DomainError);
}

TEST_CASE("protocol validation") {
    Protocol p = optimal_protocol(WitnessId::B1);
    CHECK_NOTHROW(p.validate());
    p.initial_state = DensityMatrix::maximally_mixed(2);
    CHECK_THROWS_AS(p.validate(), DimensionError);
}
