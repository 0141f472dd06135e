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

#include "dimwit/table.hpp"

#include <algorithm>
#include <cmath>

#include "dimwit/error.hpp"
#include "dimwit/qcore.hpp"

namespace dimwit {
namespace {

std::uint64_t checked_pow(int base, int exp, std::uint64_t guard) {
    std::uint64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        v *= static_cast<std::uint64_t>(base);
        if (v > guard) throw GuardExceeded("scenario exceeds the dense table size guard");
    }
    return v;
}

std::size_t ipow(int base, int exp) {
    std::size_t v = 1;
    for (int i = 0; i < exp; ++i) v *= static_cast<std::size_t>(base);
    return v;
}

}  // namespace

void Scenario::validate() const {
    if (length < 1) throw DomainError("scenario length must be >= 1");
    if (settings < 1) throw DomainError("scenario needs at least one setting");
    if (outcomes < 2) throw DomainError("scenario needs at least two outcomes");
    if (settings > 10 || outcomes > 10) throw DomainError("at most 10 settings and outcomes");
    const std::uint64_t xs = checked_pow(settings, length, kTableGuard);
    const std::uint64_t as = checked_pow(outcomes, length, kTableGuard);
    if (xs * as > kTableGuard) throw GuardExceeded("scenario exceeds the dense table size guard");
}

std::size_t Scenario::setting_sequences() const { return ipow(settings, length); }
std::size_t Scenario::outcome_sequences() const { return ipow(outcomes, length); }

std::size_t encode_sequence(std::span<const int> digits, int base) {
    std::size_t idx = 0;
    for (int d : digits) {
        if (d < 0 || d >= base) throw DomainError("sequence digit out of range");
        idx = idx * static_cast<std::size_t>(base) + static_cast<std::size_t>(d);
    }
    return idx;
}

std::vector<int> decode_sequence(std::size_t index, int base, int length) {
    std::vector<int> digits(static_cast<std::size_t>(length));
    for (int t = length - 1; t >= 0; --t) {
        digits[static_cast<std::size_t>(t)] = static_cast<int>(index % static_cast<std::size_t>(base));
        index /= static_cast<std::size_t>(base);
    }
    return digits;
}

std::string format_settings(std::span<const int> settings) {
    std::string s;
    for (int x : settings) s.push_back(static_cast<char>('0' + x));
    return s;
}

std::string format_outcomes(std::span<const int> outcomes, int outcome_count) {
    std::string s;
    for (int a : outcomes) s.push_back(outcome_label(a, outcome_count));
    return s;
}

std::vector<int> parse_settings(const std::string& text, int settings) {
    std::vector<int> out;
    for (char c : text) {
        if (c < '0' || c - '0' >= settings) {
            throw ParseError("invalid setting sequence '" + text + "'");
        }
        out.push_back(c - '0');
    }
    return out;
}

std::vector<int> parse_outcomes(const std::string& text, int outcomes) {
    std::vector<int> out;
    try {
        for (char c : text) out.push_back(outcome_from_label(c, outcomes));
    } catch (const DomainError&) {
        throw ParseError("invalid outcome sequence '" + text + "'");
    }
    return out;
}

CorrelationTable::CorrelationTable(Scenario scenario) : scenario_(scenario) {
    scenario_.validate();
    probs_.assign(scenario_.cells(), 0.0);
}

CorrelationTable::CorrelationTable(Scenario scenario, std::vector<double> probs)
    : scenario_(scenario), probs_(std::move(probs)) {
    scenario_.validate();
    if (probs_.size() != scenario_.cells()) throw DimensionError("CorrelationTable: wrong number of entries");
}

std::size_t CorrelationTable::flat_index(std::size_t setting_index, std::size_t outcome_index) const {
    if (setting_index >= scenario_.setting_sequences() || outcome_index >= scenario_.outcome_sequences()) {
        throw DomainError("CorrelationTable: sequence index out of range");
    }
    return setting_index * scenario_.outcome_sequences() + outcome_index;
}

double CorrelationTable::at(std::size_t setting_index, std::size_t outcome_index) const {
    return probs_[flat_index(setting_index, outcome_index)];
}

double& CorrelationTable::at(std::size_t setting_index, std::size_t outcome_index) {
    return probs_[flat_index(setting_index, outcome_index)];
}

double CorrelationTable::at(std::span<const int> settings, std::span<const int> outcomes) const {
    if (static_cast<int>(settings.size()) != scenario_.length ||
        static_cast<int>(outcomes.size()) != scenario_.length) {
        throw DimensionError("CorrelationTable: sequence length mismatch");
    }
    return at(encode_sequence(settings, scenario_.settings), encode_sequence(outcomes, scenario_.outcomes));
}

double CorrelationTable::normalization_defect() const {
    double worst = 0.0;
    const std::size_t na = scenario_.outcome_sequences();
    for (std::size_t x = 0; x < scenario_.setting_sequences(); ++x) {
        double s = 0.0;
        for (std::size_t a = 0; a < na; ++a) s += probs_[x * na + a];
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

void CorrelationTable::validate(double eps) const {
    for (double p : probs_) {
        if (!(p >= -eps && p <= 1.0 + eps)) throw DomainError("CorrelationTable: entry outside [0, 1]");
    }
    if (normalization_defect() > eps) throw DomainError("CorrelationTable: rows are not normalized");
}

CorrelationTable mix(const CorrelationTable& t1, const CorrelationTable& t2, double lambda) {
    if (!(t1.scenario() == t2.scenario())) throw DimensionError("mix: scenario mismatch");
    std::vector<double> out(t1.flat().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = lambda * t1.flat()[i] + (1.0 - lambda) * t2.flat()[i];
    }
    return CorrelationTable(t1.scenario(), std::move(out));
}

}  // namespace dimwit
