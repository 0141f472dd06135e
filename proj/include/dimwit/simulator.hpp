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

#include <functional>
#include <span>

#include "dimwit/protocols.hpp"
#include "dimwit/table.hpp"
#include "dimwit/witness.hpp"

namespace dimwit {

/// Exact p(a_1..a_L | x_1..x_L) = tr[I_{a_L|x_L} o ... o I_{a_1|x_1}(rho_in)].
CorrelationTable sequence_probabilities(const Protocol& protocol, int length);

/// Probability that the detector records the true outcome, per detection kind.
struct ReadoutNoise {
    double p_bright_correct = 0.96;
    double p_dark_correct = 0.98;

    void validate() const;
};

/// Detection kind of the true outcome `outcome` of `setting`, given the true
/// history that preceded it.
using DetectionResolver = std::function<DetectionKind(
    std::span<const int> setting_history, std::span<const int> outcome_history, int setting, int outcome)>;

/// Resolver backed by Protocol::detection; throws DomainError if the protocol has none.
DetectionResolver protocol_resolver(const Protocol& protocol);

/// Classical relabeling of recorded two-valued outcomes:
///   p(r|x) = sum_a p(a|x) prod_t C(r_t | a_t)
/// where C keeps a_t with the correct-detection probability of its kind and
/// flips it otherwise.
CorrelationTable apply_readout_noise(const CorrelationTable& table, const DetectionResolver& resolver,
                                     const ReadoutNoise& noise);

/// Marginal over the final time step (length L -> L - 1), taking the last
/// setting to be `final_setting`.
CorrelationTable drop_last_step(const CorrelationTable& table, int final_setting = 0);

}  // namespace dimwit
