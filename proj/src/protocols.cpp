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

#include "dimwit/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dimwit/error.hpp"

namespace dimwit {
namespace {

bool is_unitary_pulse(Pulse p) { return p == Pulse::Pi01 || p == Pulse::Pi02 || p == Pulse::Idle; }

Unitary unitary_of(Pulse p, const PulsePhases& ph) {
    switch (p) {
        case Pulse::Pi01:
            return Unitary::pi01(ph.phi2);
        case Pulse::Pi02:
            return Unitary::pi02(ph.phi1);
        case Pulse::Idle:
            return Unitary::idle(ph.phi1_idle, ph.phi2_idle);
        default:
            throw DomainError("pulse " + std::string(pulse_name(p)) + " is not a unitary");
    }
}

// Fluorescing levels |1>, |2>.
CMatrix bright_projector() { return basis_projector(3, 1) + basis_projector(3, 2); }

MeasurementBlock block(Pulse pre, Pulse post, int bright) {
    return {{pre, Pulse::Detect, Pulse::Cool, Pulse::P0, post}, bright};
}

}  // namespace

std::string_view pulse_name(Pulse p) {
    switch (p) {
        case Pulse::P0:
            return "P0";
        case Pulse::Pi01:
            return "Pi01";
        case Pulse::Pi02:
            return "Pi02";
        case Pulse::Idle:
            return "I";
        case Pulse::Detect:
            return "D";
        case Pulse::Cool:
            return "C";
    }
    return "?";
}

Pulse pulse_from_name(std::string_view name) {
    for (Pulse p : {Pulse::P0, Pulse::Pi01, Pulse::Pi02, Pulse::Idle, Pulse::Detect, Pulse::Cool}) {
        if (pulse_name(p) == name) return p;
    }
    throw ParseError("unknown pulse '" + std::string(name) + "'");
}

std::string_view witness_name(WitnessId id) {
    switch (id) {
        case WitnessId::B1:
            return "B1";
        case WitnessId::B2:
            return "B2";
        case WitnessId::B3:
            return "B3";
        case WitnessId::B4:
            return "B4";
        case WitnessId::T:
            return "T";
    }
    return "?";
}

std::optional<WitnessId> witness_from_name(std::string_view name) {
    for (WitnessId id : {WitnessId::B1, WitnessId::B2, WitnessId::B3, WitnessId::B4, WitnessId::T}) {
        if (witness_name(id) == name) return id;
    }
    return std::nullopt;
}

void validate_block(const std::vector<Pulse>& pulses) {
    const bool ok = pulses.size() == 5 && is_unitary_pulse(pulses[0]) && pulses[1] == Pulse::Detect &&
                    pulses[2] == Pulse::Cool && pulses[3] == Pulse::P0 && is_unitary_pulse(pulses[4]);
    if (!ok) {
        std::string got;
        for (Pulse p : pulses) got += std::string(got.empty() ? "" : " ") + std::string(pulse_name(p));
        throw DomainError("malformed measurement block '" + got + "': expected U D C P0 U'");
    }
}

MeasureAndPrepare measure_and_prepare_from_pulses(const MeasurementBlock& block,
                                                  const PulsePhases& phases) {
    validate_block(block.pulses);
    if (block.bright_outcome != 0 && block.bright_outcome != 1) {
        throw DomainError("bright outcome must be '+' or '-'");
    }
    const CMatrix u = unitary_of(block.pulses.front(), phases).matrix();
    const CMatrix u_post = unitary_of(block.pulses.back(), phases).matrix();
    const CMatrix bright = u.adjoint() * bright_projector() * u;
    const CMatrix dark = u.adjoint() * basis_projector(3, 0) * u;
    return {Effect(bright), Effect(dark), DensityMatrix::pure(u_post * basis_ket(3, 0)),
            block.bright_outcome};
}

Instrument instrument_from_pulses(const MeasurementBlock& block, const PulsePhases& phases) {
    validate_block(block.pulses);
    if (block.bright_outcome != 0 && block.bright_outcome != 1) {
        throw DomainError("bright outcome must be '+' or '-'");
    }
    const CMatrix u = unitary_of(block.pulses.front(), phases).matrix();
    const CMatrix u_post = unitary_of(block.pulses.back(), phases).matrix();
    const CVector prepared = u_post * basis_ket(3, 0);

    std::vector<CMatrix> bright_ops;
    for (int k : {1, 2}) bright_ops.push_back(prepared * basis_ket(3, k).adjoint() * u);
    std::vector<CMatrix> dark_ops{prepared * basis_ket(3, 0).adjoint() * u};

    std::vector<KrausMap> maps(2, KrausMap::zero(3));
    maps[static_cast<std::size_t>(block.bright_outcome)] = KrausMap(std::move(bright_ops));
    maps[static_cast<std::size_t>(1 - block.bright_outcome)] = KrausMap(std::move(dark_ops));
    return Instrument(std::move(maps));
}

int Protocol::outcome_count() const {
    return instruments.empty() ? 0 : static_cast<int>(instruments.front().outcome_count());
}

void Protocol::validate() const {
    if (instruments.empty()) throw DomainError("Protocol: needs at least one instrument");
    for (const Instrument& in : instruments) {
        if (in.dim() != dim()) throw DimensionError("Protocol: instrument dimension mismatch");
        if (static_cast<int>(in.outcome_count()) != outcome_count()) {
            throw DimensionError("Protocol: instruments disagree on the outcome count");
        }
    }
    if (detection) {
        if (detection->size() != instruments.size()) {
            throw DimensionError("Protocol: detection table does not match the settings");
        }
        for (const auto& row : *detection) {
            if (static_cast<int>(row.size()) != outcome_count()) {
                throw DimensionError("Protocol: detection table does not match the outcomes");
            }
        }
    }
}

Protocol protocol_from_spec(const ProtocolSpec& spec) {
    if (spec.dim != 3) throw DomainError("pulse protocols are defined on a qutrit (dim = 3)");
    if (spec.settings.empty()) throw DomainError("protocol needs at least one setting");
    Protocol proto{DensityMatrix::basis(spec.dim, spec.initial_level), {}, std::vector<std::vector<DetectionKind>>{}};
    const CMatrix bright_ref = bright_projector();
    for (const MeasurementBlock& b : spec.settings) {
        Instrument in = instrument_from_pulses(b, spec.phases);
        const CMatrix u = unitary_of(b.pulses.front(), spec.phases).matrix();
        const CMatrix conj_bright = u.adjoint() * bright_ref * u;
        std::vector<DetectionKind> kinds;
        for (std::size_t a = 0; a < in.outcome_count(); ++a) {
            const double gap = (in.map(a).effect_matrix() - conj_bright).cwiseAbs().maxCoeff();
            kinds.push_back(gap <= 1e-9 ? DetectionKind::Bright : DetectionKind::Dark);
        }
        proto.detection->push_back(std::move(kinds));
        proto.instruments.push_back(std::move(in));
    }
    proto.validate();
    return proto;
}

ProtocolSpec optimal_protocol_spec(WitnessId id) {
    constexpr int plus = 0;
    constexpr int minus = 1;
    ProtocolSpec spec;
    switch (id) {
        case WitnessId::B1:
        case WitnessId::T:
            spec.settings = {block(Pulse::Pi02, Pulse::Pi01, plus), block(Pulse::Pi01, Pulse::Pi02, plus)};
            break;
        case WitnessId::B2:
            spec.settings = {block(Pulse::Pi01, Pulse::Pi01, plus), block(Pulse::Pi02, Pulse::Pi02, plus)};
            break;
        case WitnessId::B3:
            spec.settings = {block(Pulse::Idle, Pulse::Pi01, minus), block(Pulse::Pi01, Pulse::Pi02, plus)};
            break;
        case WitnessId::B4:
            spec.settings = {block(Pulse::Pi01, Pulse::Pi01, plus), block(Pulse::Idle, Pulse::Pi02, minus)};
            break;
    }
    return spec;
}

Protocol optimal_protocol(WitnessId id) { return protocol_from_spec(optimal_protocol_spec(id)); }

std::pair<BlochVector, BlochVector> qubit_axes(double cos_gamma) {
    if (!(cos_gamma >= -1.0 && cos_gamma <= 1.0)) throw DomainError("cos_gamma outside [-1, 1]");
    const double sin_gamma = std::sqrt(std::max(0.0, 1.0 - cos_gamma * cos_gamma));
    return {BlochVector{1.0, 0.0, 0.0}, BlochVector{cos_gamma, sin_gamma, 0.0}};
}

std::pair<Instrument, Instrument> extremal_qubit_effects(double p, double q, double cos_gamma,
                                                         const DensityMatrix& prepared0,
                                                         const DensityMatrix& prepared1) {
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
        throw DomainError("extremal_qubit_effects: p and q must lie in [0, 1]");
    }
    const auto [c, d] = qubit_axes(cos_gamma);
    auto dot_sigma = [](const BlochVector& n) {
        return CMatrix(n[0] * pauli_x() + n[1] * pauli_y() + n[2] * pauli_z());
    };
    const CMatrix one = identity(2);
    const Effect plus0(0.5 * ((2.0 - p) * one + p * dot_sigma(c)));
    const Effect minus0(0.5 * p * (one - dot_sigma(c)));
    const Effect plus1(0.5 * ((2.0 - q) * one + q * dot_sigma(d)));
    const Effect minus1(0.5 * q * (one - dot_sigma(d)));
    return {measure_and_prepare({plus0, minus0}, {prepared0, prepared0}),
            measure_and_prepare({plus1, minus1}, {prepared1, prepared1})};
}

}  // namespace dimwit
