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

#include "dimwit/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "dimwit/error.hpp"

namespace dimwit {
namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr std::uint64_t kConstraintGuard = 1'000'000;

std::size_t ipow(int base, int exp) {
    std::size_t v = 1;
    for (int i = 0; i < exp; ++i) v *= static_cast<std::size_t>(base);
    return v;
}

// Incremental row echelon form over Q.
class EchelonBasis {
   public:
    explicit EchelonBasis(std::size_t columns) : columns_(columns) {}

    // Adds the row if it is independent of the rows seen so far.
    bool insert(const std::vector<int>& row) {
        std::vector<Rational> v(row.begin(), row.end());
        for (const auto& [pivot, basis_row] : rows_) {
            if (v[pivot] == 0) continue;
            const Rational factor = v[pivot];
            for (std::size_t j = pivot; j < columns_; ++j) {
                if (basis_row[j] != 0) v[j] -= factor * basis_row[j];
            }
        }
        std::optional<std::size_t> pivot;
        for (std::size_t j = 0; j < columns_; ++j) {
            if (v[j] != 0) {
                pivot = j;
                break;
            }
        }
        if (!pivot) return false;
        const Rational lead = v[*pivot];
        for (std::size_t j = *pivot; j < columns_; ++j) v[j] /= lead;
        // Keep the basis fully reduced so each pivot column is zero elsewhere.
        for (auto& [p, r] : rows_) {
            if (r[*pivot] == 0) continue;
            const Rational factor = r[*pivot];
            for (std::size_t j = *pivot; j < columns_; ++j) {
                if (v[j] != 0) r[j] -= factor * v[j];
            }
        }
        rows_.emplace_back(*pivot, std::move(v));
        return true;
    }

    std::size_t rank() const { return rows_.size(); }

   private:
    std::size_t columns_;
    std::vector<std::pair<std::size_t, std::vector<Rational>>> rows_;
};

}  // namespace

double AoTConstraint::evaluate(const CorrelationTable& table) const {
    double s = 0.0;
    for (const auto& [idx, coef] : coefficients) s += coef * table.flat()[idx];
    return s;
}

std::vector<AoTConstraint> aot_constraints(const Scenario& scenario) {
    scenario.validate();
    const int len = scenario.length;
    const int m = scenario.settings;
    const int d = scenario.outcomes;
    const std::size_t na = scenario.outcome_sequences();

    std::uint64_t expected = 0;
    for (int k = 1; k < len; ++k) {
        const std::uint64_t futures = ipow(m, len - k);
        expected += ipow(m, k) * ipow(d, k - 1) * static_cast<std::uint64_t>(d) * futures * (futures - 1) / 2;
        if (expected > kConstraintGuard) throw GuardExceeded("too many AoT constraints for this scenario");
    }

    std::vector<AoTConstraint> out;
    out.reserve(static_cast<std::size_t>(expected));
    for (int k = 1; k < len; ++k) {
        const std::size_t futures = ipow(m, len - k);
        const std::size_t rests = ipow(d, len - k);
        for (std::size_t xp = 0; xp < ipow(m, k); ++xp) {
            const std::vector<int> x_prefix = decode_sequence(xp, m, k);
            for (std::size_t ap = 0; ap < ipow(d, k); ++ap) {
                const std::vector<int> a_prefix = decode_sequence(ap, d, k);
                for (std::size_t u = 0; u < futures; ++u) {
                    for (std::size_t v = u + 1; v < futures; ++v) {
                        AoTConstraint c;
                        c.prefix_length = k;
                        c.setting_prefix = x_prefix;
                        c.outcome_prefix = a_prefix;
                        c.completion_a = decode_sequence(u, m, len - k);
                        c.completion_b = decode_sequence(v, m, len - k);
                        const std::size_t xu = xp * futures + u;
                        const std::size_t xv = xp * futures + v;
                        for (std::size_t r = 0; r < rests; ++r) {
                            const std::size_t a = ap * rests + r;
                            c.coefficients.emplace_back(xu * na + a, +1);
                            c.coefficients.emplace_back(xv * na + a, -1);
                        }
                        out.push_back(std::move(c));
                    }
                }
            }
        }
    }

    // Independent subset: compare completion 0 against every other completion,
    // and skip the last outcome at the final prefix step. Induction on the
    // prefix length shows these plus row normalization imply every equality,
    // and there are exactly rank-many of them.
    for (AoTConstraint& c : out) {
        c.independent = c.outcome_prefix.back() != d - 1 &&
                        std::all_of(c.completion_a.begin(), c.completion_a.end(), [](int x) { return x == 0; });
    }
    return out;
}

std::vector<int> constraint_row(const AoTConstraint& c, std::size_t cells) {
    std::vector<int> row(cells, 0);
    for (const auto& [idx, coef] : c.coefficients) row.at(idx) += coef;
    return row;
}

std::size_t independent_constraint_count(std::span<const AoTConstraint> constraints) {
    std::size_t n = 0;
    for (const AoTConstraint& c : constraints) n += c.independent ? 1 : 0;
    return n;
}

std::size_t rational_rank(const std::vector<std::vector<int>>& rows) {
    if (rows.empty()) return 0;
    EchelonBasis basis(rows.front().size());
    for (const auto& r : rows) {
        if (r.size() != rows.front().size()) throw DimensionError("rational_rank: ragged rows");
        basis.insert(r);
    }
    return basis.rank();
}

std::vector<AoTViolation> check_aot(const CorrelationTable& table, double tol) {
    const std::vector<AoTConstraint> constraints = aot_constraints(table.scenario());
    return check_aot(table, constraints, tol);
}

std::vector<AoTViolation> check_aot(const CorrelationTable& table, std::span<const AoTConstraint> constraints,
                                    double tol) {
    std::vector<AoTViolation> out;
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        if (!constraints[i].independent) continue;
        const double mag = std::abs(constraints[i].evaluate(table));
        if (mag > tol) out.push_back({i, mag});
    }
    return out;
}

namespace {

std::size_t strategy_slots(const Scenario& sc) {
    std::size_t slots = 0;
    for (int t = 1; t <= sc.length; ++t) slots += ipow(sc.settings, t);
    return slots;
}

}  // namespace

DeterministicStrategy::DeterministicStrategy(Scenario scenario, std::vector<int> assignment)
    : scenario_(scenario), assignment_(std::move(assignment)) {
    scenario_.validate();
    if (assignment_.size() != strategy_slots(scenario_)) {
        throw DimensionError("DeterministicStrategy: assignment has the wrong size");
    }
    for (int a : assignment_) {
        if (a < 0 || a >= scenario_.outcomes) throw DomainError("DeterministicStrategy: outcome out of range");
    }
}

int DeterministicStrategy::outcome(std::span<const int> setting_prefix) const {
    const int t = static_cast<int>(setting_prefix.size());
    if (t < 1 || t > scenario_.length) throw DomainError("DeterministicStrategy: bad prefix length");
    std::size_t offset = 0;
    for (int s = 1; s < t; ++s) offset += ipow(scenario_.settings, s);
    return assignment_[offset + encode_sequence(setting_prefix, scenario_.settings)];
}

std::vector<int> DeterministicStrategy::respond(std::span<const int> settings) const {
    std::vector<int> out;
    out.reserve(settings.size());
    for (std::size_t t = 1; t <= settings.size(); ++t) out.push_back(outcome(settings.first(t)));
    return out;
}

std::uint64_t strategy_count(const Scenario& scenario) {
    scenario.validate();
    const std::size_t slots = strategy_slots(scenario);
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < slots; ++i) {
        n *= static_cast<std::uint64_t>(scenario.outcomes);
        if (n > kStrategyGuard) throw GuardExceeded("deterministic strategy enumeration exceeds the guard");
    }
    return n;
}

StrategyRange::StrategyRange(Scenario scenario)
    : scenario_(scenario), slots_(0), count_(strategy_count(scenario)) {
    slots_ = strategy_slots(scenario_);
}

StrategyRange::iterator::iterator(const Scenario* scenario, std::size_t slots, bool done)
    : scenario_(scenario), done_(done), digits_(slots, 0), current_(*scenario, std::vector<int>(slots, 0)) {}

StrategyRange::iterator& StrategyRange::iterator::operator++() {
    // Odometer increment, last slot fastest.
    std::size_t i = digits_.size();
    while (i > 0) {
        --i;
        if (++digits_[i] < scenario_->outcomes) {
            current_ = DeterministicStrategy(*scenario_, digits_);
            return *this;
        }
        digits_[i] = 0;
    }
    done_ = true;
    return *this;
}

StrategyRange enumerate_deterministic_strategies(const Scenario& scenario) { return StrategyRange(scenario); }

CorrelationTable strategy_to_table(const DeterministicStrategy& strategy, const Scenario& scenario) {
    if (!(strategy.scenario() == scenario)) throw DimensionError("strategy_to_table: scenario mismatch");
    CorrelationTable table(scenario);
    for (std::size_t xi = 0; xi < scenario.setting_sequences(); ++xi) {
        const std::vector<int> xs = decode_sequence(xi, scenario.settings, scenario.length);
        table.at(xi, encode_sequence(strategy.respond(xs), scenario.outcomes)) = 1.0;
    }
    return table;
}

double evaluate_strategy(const Witness& w, const DeterministicStrategy& strategy) {
    if (!(w.scenario == strategy.scenario())) throw DimensionError("evaluate_strategy: scenario mismatch");
    double total = 0.0;
    for (const WitnessTerm& t : w.terms) {
        if (strategy.respond(t.settings) == t.outcomes) total += t.coefficient;
    }
    return total;
}

AlgebraicMax algebraic_max(const Witness& w) {
    w.validate();
    AlgebraicMax best;
    best.value = -std::numeric_limits<double>::infinity();
    constexpr double tie_tol = 1e-12;
    for (const DeterministicStrategy& s : enumerate_deterministic_strategies(w.scenario)) {
        ++best.strategies_scanned;
        const double v = evaluate_strategy(w, s);
        if (v > best.value + tie_tol) {
            best.value = v;
            best.maximizers.clear();
            best.maximizers.push_back(s);
        } else if (std::abs(v - best.value) <= tie_tol) {
            best.maximizers.push_back(s);
        }
    }
    return best;
}

}  // namespace dimwit
