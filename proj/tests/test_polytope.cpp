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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "dimwit/error.hpp"
#include "dimwit/polytope.hpp"
#include "dimwit/witness.hpp"

using namespace dimwit;

namespace {

std::vector<std::vector<int>> normalization_rows(const Scenario& sc) {
    std::vector<std::vector<int>> rows;
    const std::size_t na = sc.outcome_sequences();
    for (std::size_t x = 0; x < sc.setting_sequences(); ++x) {
        std::vector<int> r(sc.cells(), 0);
        for (std::size_t a = 0; a < na; ++a) r[x * na + a] = 1;
        rows.push_back(r);
    }
    return rows;
}

// Cells minus normalization minus the affine dimension of the AoT polytope,
// whose free parameters are the conditionals p(a_t | a_<t, x_<=t).
std::size_t expected_independent(const Scenario& sc) {
    std::size_t free = 0, mt = 1, dt = 1;
    for (int t = 1; t <= sc.length; ++t) {
        mt *= static_cast<std::size_t>(sc.settings);
        free += mt * static_cast<std::size_t>(sc.outcomes - 1) * dt;
        dt *= static_cast<std::size_t>(sc.outcomes);
    }
    return sc.setting_sequences() * (sc.outcome_sequences() - 1) - free;
}

}  // namespace

TEST_CASE("independent constraint counts") {
    CHECK(aot_constraints({1, 2, 2}).empty());
    CHECK(aot_constraints({1, 3, 3}).empty());
    CHECK(independent_constraint_count(aot_constraints({2, 2, 2})) == 2);
    CHECK(independent_constraint_count(aot_constraints({3, 2, 2})) == 14);
    CHECK(aot_constraints({2, 2, 2}).size() == 4);
}

TEST_CASE("flagged subset is a basis modulo normalization (exact rank oracle)") {
    for (const Scenario sc : {Scenario{2, 2, 2}, Scenario{3, 2, 2}, Scenario{2, 3, 2}, Scenario{2, 2, 3},
                              Scenario{2, 3, 3}, Scenario{3, 2, 3}, Scenario{4, 2, 2}, Scenario{3, 3, 2}}) {
        CAPTURE(sc.length);
        CAPTURE(sc.settings);
        CAPTURE(sc.outcomes);
        const auto cs = aot_constraints(sc);
        const auto norm = normalization_rows(sc);
        auto all = norm;
        auto flagged = norm;
        for (const AoTConstraint& c : cs) {
            all.push_back(constraint_row(c, sc.cells()));
            if (c.independent) flagged.push_back(all.back());
        }
        const std::size_t base = rational_rank(norm);
        const std::size_t n = independent_constraint_count(cs);
        CHECK(base == sc.setting_sequences());
        CHECK(rational_rank(all) - base == n);
        CHECK(rational_rank(flagged) == base + n);
        CHECK(n == expected_independent(sc));
    }
}

TEST_CASE("constraint count at an unenumerable size stays cheap") {
    const Scenario sc{5, 3, 3};
    CHECK(independent_constraint_count(aot_constraints(sc)) == expected_independent(sc));
}

TEST_CASE("check_aot on a constructed signalling table") {
    const Scenario sc{2, 2, 2};
    CorrelationTable t(sc, std::vector<double>(sc.cells(), 0.25));
    // p(+.|00) = 0.6 against p(+.|01) = 0.5.
    t.at(0, 0) = 0.3;
    t.at(0, 1) = 0.3;
    t.at(0, 2) = 0.2;
    t.at(0, 3) = 0.2;
    const auto v = check_aot(t, 1e-10);
    REQUIRE(v.size() == 1);
    CHECK(v[0].magnitude == doctest::Approx(0.1));
    const auto cs = aot_constraints(sc);
    const AoTConstraint& c = cs[v[0].constraint];
    CHECK(c.setting_prefix == std::vector<int>{0});
    CHECK(c.outcome_prefix == std::vector<int>{0});
    CHECK(check_aot(t, 0.11).empty());
}

TEST_CASE("strategy counts and enumeration order") {
    CHECK(strategy_count({2, 2, 2}) == 64);
    CHECK(strategy_count({3, 2, 2}) == 16384);
    CHECK(strategy_count({1, 1, 2}) == 2);
    CHECK_THROWS_AS(strategy_count({5, 3, 3}), GuardExceeded);

    for (const Scenario sc : {Scenario{2, 2, 2}, Scenario{1, 1, 2}, Scenario{2, 2, 3}}) {
        std::set<std::vector<int>> seen;
        std::vector<int> previous;
        std::uint64_t n = 0;
        for (const DeterministicStrategy& s : enumerate_deterministic_strategies(sc)) {
            if (n > 0) CHECK(std::lexicographical_compare(previous.begin(), previous.end(), s.assignment().begin(),
                                                          s.assignment().end()));
            previous = s.assignment();
            seen.insert(s.assignment());
            ++n;
            const CorrelationTable t = strategy_to_table(s, sc);
            CHECK(check_aot(t, 1e-12).empty());
            CHECK(t.normalization_defect() == 0.0);
        }
        CHECK(n == strategy_count(sc));
        CHECK(seen.size() == n);
    }
}

TEST_CASE("strategies respond through their prefix functions") {
    // f1(0)=+, f1(1)=-, f2(x1 x2) = '+' iff x1 == x2.
    const DeterministicStrategy s({2, 2, 2}, {0, 1, 0, 1, 1, 0});
    CHECK(s.respond(std::vector<int>{0, 0}) == std::vector<int>{0, 0});
    CHECK(s.respond(std::vector<int>{1, 0}) == std::vector<int>{1, 1});
    CHECK(s.outcome(std::vector<int>{0, 1}) == 1);
    CHECK_THROWS(DeterministicStrategy({2, 2, 2}, {0, 1, 0}));
}

TEST_CASE("algebraic maxima against a direct brute force") {
    for (const Witness& w : witness_registry()) {
        const AlgebraicMax a = algebraic_max(w);
        CHECK(a.value == w.algebraic_max);
        CHECK(a.strategies_scanned == strategy_count(w.scenario));
        CHECK(evaluate_strategy(w, a.maximizers.front()) == a.value);
    }
    // Independent brute force for the length-2 witnesses.
    for (const char* id : {"B1", "B2", "B3", "B4"}) {
        const Witness& w = registry_witness(id);
        double best = -1;
        for (int f1 = 0; f1 < 4; ++f1) {
            for (int f2 = 0; f2 < 16; ++f2) {
                double v = 0;
                for (const WitnessTerm& t : w.terms) {
                    const int x1 = t.settings[0], x2 = t.settings[1];
                    const int a1 = (f1 >> (1 - x1)) & 1;
                    const int a2 = (f2 >> (3 - (2 * x1 + x2))) & 1;
                    if (a1 == t.outcomes[0] && a2 == t.outcomes[1]) v += t.coefficient;
                }
                best = std::max(best, v);
            }
        }
        CHECK(best == 4.0);
        CHECK(algebraic_max(w).value == best);
    }
}

TEST_CASE("ties keep every maximizer") {
    const Witness w = make_witness("flat", {1, 2, 2}, {"0:+", "1:+"}, 1.0, 2.0);
    const AlgebraicMax a = algebraic_max(w);
    CHECK(a.value == 2.0);
    CHECK(a.maximizers.size() == 1);
    const Witness z = make_witness("zero", {1, 2, 2}, {"0:+", "0:-"}, 0.5, 1.0);
    CHECK(algebraic_max(z).maximizers.size() == 4);
}
