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

#include "dimwit/witness.hpp"

#include <algorithm>

#include "dimwit/error.hpp"

namespace dimwit {

void Witness::validate() const {
    scenario.validate();
    for (const WitnessTerm& t : terms) {
        if (static_cast<int>(t.settings.size()) != scenario.length ||
            static_cast<int>(t.outcomes.size()) != scenario.length) {
            throw DimensionError("witness " + id + ": term length does not match the scenario");
        }
        for (int x : t.settings) {
            if (x < 0 || x >= scenario.settings) throw DimensionError("witness " + id + ": setting out of range");
        }
        for (int a : t.outcomes) {
            if (a < 0 || a >= scenario.outcomes) throw DimensionError("witness " + id + ": outcome out of range");
        }
    }
}

std::vector<std::vector<int>> Witness::setting_sequences() const {
    std::vector<std::vector<int>> out;
    for (const WitnessTerm& t : terms) {
        if (std::find(out.begin(), out.end(), t.settings) == out.end()) out.push_back(t.settings);
    }
    return out;
}

Witness make_witness(std::string id, Scenario scenario, const std::vector<std::string>& terms,
                     double qubit_bound, double algebraic_max) {
    Witness w{std::move(id), scenario, {}, qubit_bound, algebraic_max};
    for (const std::string& t : terms) {
        const auto colon = t.find(':');
        if (colon == std::string::npos) throw ParseError("witness term '" + t + "' lacks ':'");
        w.terms.push_back({parse_settings(t.substr(0, colon), scenario.settings),
                           parse_outcomes(t.substr(colon + 1), scenario.outcomes), 1.0});
    }
    w.validate();
    return w;
}

const std::vector<Witness>& witness_registry() {
    static const std::vector<Witness> registry = [] {
        const Scenario two{2, 2, 2};
        const Scenario three{3, 2, 2};
        std::vector<Witness> r;
        r.push_back(make_witness("B1", two, {"00:++", "11:++", "01:+-", "10:+-"}, 3.0, 4.0));
        r.push_back(make_witness("B2", two, {"00:+-", "11:+-", "01:++", "10:++"}, 3.0, 4.0));
        r.push_back(make_witness("B3", two, {"00:+-", "11:++", "01:+-", "10:+-"}, 3.186, 4.0));
        r.push_back(make_witness("B4", two, {"00:+-", "11:+-", "01:+-", "10:++"}, 3.186, 4.0));
        r.push_back(make_witness("T", three,
                                 {"000:+++", "001:++-", "010:+--", "011:+-+", "100:+-+", "101:+--",
                                  "110:++-", "111:+++"},
                                 5.226, 8.0));
        return r;
    }();
    return registry;
}

const Witness& registry_witness(WitnessId id) {
    return witness_registry()[static_cast<std::size_t>(id)];
}

const Witness& registry_witness(const std::string& name) {
    const auto id = witness_from_name(name);
    if (!id) throw DomainError("unknown witness '" + name + "' (expected B1, B2, B3, B4 or T)");
    return registry_witness(*id);
}

double evaluate_witness(const Witness& w, const CorrelationTable& table) {
    if (!(w.scenario == table.scenario())) throw DimensionError("evaluate_witness: scenario mismatch");
    double total = 0.0;
    for (const WitnessTerm& t : w.terms) total += t.coefficient * table.at(t.settings, t.outcomes);
    return total;
}

}  // namespace dimwit
