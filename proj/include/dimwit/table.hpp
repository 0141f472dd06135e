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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dimwit {

/// Sequential-measurement scenario: `length` time steps, `settings` choices and
/// `outcomes` results per step.
struct Scenario {
    int length = 1;
    int settings = 2;
    int outcomes = 2;

    /// Upper limit on settings^L * outcomes^L for dense tables.
    static constexpr std::uint64_t kTableGuard = 10'000'000;

    /// Throws DomainError for L < 1, m < 1, d < 2 and GuardExceeded for oversized tables.
    void validate() const;

    std::size_t setting_sequences() const;
    std::size_t outcome_sequences() const;
    std::size_t cells() const { return setting_sequences() * outcome_sequences(); }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Sequences are stored as base-m / base-d integers with the first time step
/// as the most significant digit, so integer order is lexicographic order.
std::size_t encode_sequence(std::span<const int> digits, int base);
std::vector<int> decode_sequence(std::size_t index, int base, int length);

/// "01" / "+-" style rendering of setting and outcome sequences.
std::string format_settings(std::span<const int> settings);
std::string format_outcomes(std::span<const int> outcomes, int outcome_count);
std::vector<int> parse_settings(const std::string& text, int settings);
std::vector<int> parse_outcomes(const std::string& text, int outcomes);

/// Dense table p(a_1..a_L | x_1..x_L).
class CorrelationTable {
   public:
    explicit CorrelationTable(Scenario scenario);
    CorrelationTable(Scenario scenario, std::vector<double> probs);

    const Scenario& scenario() const { return scenario_; }

    double at(std::size_t setting_index, std::size_t outcome_index) const;
    double& at(std::size_t setting_index, std::size_t outcome_index);
    double at(std::span<const int> settings, std::span<const int> outcomes) const;

    std::size_t flat_index(std::size_t setting_index, std::size_t outcome_index) const;
    const std::vector<double>& flat() const { return probs_; }

    /// Largest |sum_a p(a|x) - 1| over setting sequences.
    double normalization_defect() const;

    /// Throws DomainError unless entries lie in [0, 1] and rows sum to 1 within `eps`.
    void validate(double eps = 1e-9) const;

   private:
    Scenario scenario_;
    std::vector<double> probs_;
};

/// lambda * t1 + (1 - lambda) * t2.
CorrelationTable mix(const CorrelationTable& t1, const CorrelationTable& t2, double lambda);

}  // namespace dimwit
