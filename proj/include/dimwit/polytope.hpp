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
#include <iterator>
#include <span>
#include <utility>
#include <vector>

#include "dimwit/table.hpp"
#include "dimwit/witness.hpp"

namespace dimwit {

/// Arrow-of-time equality: the marginal of the first k outcomes under setting
/// prefix x_1..x_k does not depend on the future settings, i.e.
///   sum_{rest} p(a_<=k, rest | x_<=k, u) - sum_{rest} p(a_<=k, rest | x_<=k, v) = 0
/// for two future-setting completions u < v.
struct AoTConstraint {
    int prefix_length = 0;
    std::vector<int> setting_prefix;
    std::vector<int> outcome_prefix;
    std::vector<int> completion_a;
    std::vector<int> completion_b;
    /// (flat table index, +1 or -1).
    std::vector<std::pair<std::size_t, int>> coefficients;
    /// Member of a maximal subset independent modulo row normalization.
    bool independent = false;

    double evaluate(const CorrelationTable& table) const;
};

/// Every prefix-marginal equality of the scenario, ordered by prefix length,
/// setting prefix, outcome prefix and completion pair. The independent flags
/// follow a structural rule, so the cost is linear in the constraint count.
std::vector<AoTConstraint> aot_constraints(const Scenario& scenario);

/// Dense integer row of a constraint over the flat table cells.
std::vector<int> constraint_row(const AoTConstraint& c, std::size_t cells);

std::size_t independent_constraint_count(std::span<const AoTConstraint> constraints);

/// Exact rank over the rationals of the given integer row vectors.
std::size_t rational_rank(const std::vector<std::vector<int>>& rows);

struct AoTViolation {
    std::size_t constraint;  // index into aot_constraints(scenario)
    double magnitude;        // |lhs - rhs|
};

/// Checks the independent constraints; together with normalization they
/// imply every other equality. Empty iff the largest violation is <= tol.
std::vector<AoTViolation> check_aot(const CorrelationTable& table, double tol);
std::vector<AoTViolation> check_aot(const CorrelationTable& table, std::span<const AoTConstraint> constraints,
                                    double tol);

/// Outcome table f_t(x_1..x_t) for every step t and every setting prefix.
/// Outcomes never depend on earlier outcomes: those are themselves fixed by
/// the earlier settings.
class DeterministicStrategy {
   public:
    DeterministicStrategy(Scenario scenario, std::vector<int> assignment);

    const Scenario& scenario() const { return scenario_; }
    /// Outcomes for all prefixes, step 1 first, each step in lexicographic order.
    const std::vector<int>& assignment() const { return assignment_; }

    int outcome(std::span<const int> setting_prefix) const;
    /// Outcome sequence the strategy produces for a full setting sequence.
    std::vector<int> respond(std::span<const int> settings) const;

    friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;

   private:
    Scenario scenario_;
    std::vector<int> assignment_;
};

/// Enumeration guard on outcomes^(sum_t settings^t).
inline constexpr std::uint64_t kStrategyGuard = 10'000'000;

/// Number of deterministic strategies; throws GuardExceeded above kStrategyGuard.
std::uint64_t strategy_count(const Scenario& scenario);

/// Lexicographic enumeration (first prefix slot most significant).
class StrategyRange {
   public:
    class iterator {
       public:
        using value_type = DeterministicStrategy;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(const Scenario* scenario, std::size_t slots, bool done);

        const DeterministicStrategy& operator*() const { return current_; }
        const DeterministicStrategy* operator->() const { return &current_; }
        iterator& operator++();
        iterator operator++(int) {
            iterator tmp = *this;
            ++*this;
            return tmp;
        }
        bool operator==(std::default_sentinel_t) const { return done_; }

       private:
        const Scenario* scenario_ = nullptr;
        bool done_ = true;
        std::vector<int> digits_;
        DeterministicStrategy current_{Scenario{}, std::vector<int>(2, 0)};
    };

    explicit StrategyRange(Scenario scenario);

    iterator begin() const { return iterator(&scenario_, slots_, false); }
    std::default_sentinel_t end() const { return {}; }
    std::uint64_t size() const { return count_; }

   private:
    Scenario scenario_;
    std::size_t slots_;
    std::uint64_t count_;
};

StrategyRange enumerate_deterministic_strategies(const Scenario& scenario);

CorrelationTable strategy_to_table(const DeterministicStrategy& strategy, const Scenario& scenario);

double evaluate_strategy(const Witness& w, const DeterministicStrategy& strategy);

struct AlgebraicMax {
    double value = 0.0;
    /// All maximizers in enumeration order, so front() is the lexicographically first.
    std::vector<DeterministicStrategy> maximizers;
    std::uint64_t strategies_scanned = 0;
};

AlgebraicMax algebraic_max(const Witness& w);

}  // namespace dimwit
