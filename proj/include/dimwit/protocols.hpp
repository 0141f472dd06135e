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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dimwit/qcore.hpp"

namespace dimwit {

/// Building blocks of a measurement pulse sequence on the qutrit.
enum class Pulse { P0, Pi01, Pi02, Idle, Detect, Cool };

std::string_view pulse_name(Pulse p);
/// Accepts the canonical names (P0, Pi01, Pi02, I, D, C) case-sensitively.
Pulse pulse_from_name(std::string_view name);

/// Whether the detection step sees fluorescence for a given outcome.
enum class DetectionKind { Bright, Dark };

/// Registry identifiers of the built-in temporal witnesses.
enum class WitnessId { B1, B2, B3, B4, T };

std::string_view witness_name(WitnessId id);
std::optional<WitnessId> witness_from_name(std::string_view name);

/// One measurement block, read left to right: U . D . C . P0 . U'.
struct MeasurementBlock {
    std::vector<Pulse> pulses;
    /// Outcome (0 = '+', 1 = '-') recorded when fluorescence is observed.
    int bright_outcome = 0;

    friend bool operator==(const MeasurementBlock&, const MeasurementBlock&) = default;
};

/// Measure-and-prepare view of a block: bright/dark effects and the state
/// prepared after detection.
struct MeasureAndPrepare {
    Effect effect_bright;
    Effect effect_dark;
    DensityMatrix prepared_state;
    int bright_outcome;
};

/// Throws DomainError unless `pulses` is exactly [unitary, Detect, Cool, P0, unitary].
void validate_block(const std::vector<Pulse>& pulses);

MeasureAndPrepare measure_and_prepare_from_pulses(const MeasurementBlock& block,
                                                  const PulsePhases& phases = {});

/// Kraus instrument of a block: outcome `bright_outcome` has Kraus operators
/// U'|0><k|U for k in {1, 2}; the other outcome has U'|0><0|U.
Instrument instrument_from_pulses(const MeasurementBlock& block, const PulsePhases& phases = {});

/// Text-level description of a qutrit protocol.
struct ProtocolSpec {
    int dim = 3;
    int initial_level = 0;
    PulsePhases phases{};
    std::vector<MeasurementBlock> settings;
};

/// A time-independent set of instruments acting on a fixed initial state.
struct Protocol {
    DensityMatrix initial_state;
    std::vector<Instrument> instruments;
    /// detection[setting][outcome] when the protocol comes from pulse blocks.
    std::optional<std::vector<std::vector<DetectionKind>>> detection;

    int dim() const { return initial_state.dim(); }
    int setting_count() const { return static_cast<int>(instruments.size()); }
    int outcome_count() const;

    /// Throws DimensionError if instruments disagree with each other or the state.
    void validate() const;
};

Protocol protocol_from_spec(const ProtocolSpec& spec);

/// Pulse blocks of the optimal measurements for a registry witness.
ProtocolSpec optimal_protocol_spec(WitnessId id);
Protocol optimal_protocol(WitnessId id);

/// Qubit measurements on the extremal boundary a_s = 1/(1 + b_s):
///   E(+|0) = ((2-p) 1 + p c.sigma)/2,  E(-|0) = p(1 - c.sigma)/2
/// and likewise with q and d. c is the x axis, d lies in the x-y plane at
/// angle gamma. Both outcomes then prepare the given state.
std::pair<Instrument, Instrument> extremal_qubit_effects(
    double p, double q, double cos_gamma,
    const DensityMatrix& prepared0 = DensityMatrix::maximally_mixed(2),
    const DensityMatrix& prepared1 = DensityMatrix::maximally_mixed(2));

/// Unit vectors (c, d) of the gauge used by the qubit families.
std::pair<BlochVector, BlochVector> qubit_axes(double cos_gamma);

}  // namespace dimwit
