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

#include <string>
#include <vector>

#include "dimwit/protocols.hpp"
#include "dimwit/table.hpp"

namespace dimwit {

struct WitnessTerm {
    std::vector<int> settings;
    std::vector<int> outcomes;
    double coefficient = 1.0;
};

/// Linear functional sum_k c_k p(a^k | x^k) on correlation tables.
struct Witness {
    std::string id;
    Scenario scenario;
    std::vector<WitnessTerm> terms;
    double qubit_bound = 0.0;
    double algebraic_max = 0.0;

    /// Throws DimensionError if any term does not fit the scenario.
    void validate() const;

    /// Distinct setting sequences appearing in the terms, in first-seen order.
    std::vector<std::vector<int>> setting_sequences() const;
};

/// Builds a witness from "xy:ab" strings, e.g. {"00:++", "11:++"}; every coefficient is 1.
Witness make_witness(std::string id, Scenario scenario, const std::vector<std::string>& terms,
                     double qubit_bound, double algebraic_max);

/// Built-in witnesses: B1..B4 (length 2) and T (length 3).
const Witness& registry_witness(WitnessId id);
const std::vector<Witness>& witness_registry();
/// Throws DomainError for unknown names.
const Witness& registry_witness(const std::string& name);

double evaluate_witness(const Witness& w, const CorrelationTable& table);

}  // namespace dimwit
