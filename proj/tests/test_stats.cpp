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

#include <cmath>
#include <random>

#include "doctest.h"
#include "dimwit/error.hpp"
#include "dimwit/protocols.hpp"
#include "dimwit/simulator.hpp"
#include "dimwit/stats.hpp"

using namespace dimwit;

namespace {

CorrelationTable noisy_table(WitnessId id) {
    const Witness& w = registry_witness(id);
    const Protocol p = optimal_protocol(id);
    return apply_readout_noise(sequence_probabilities(p, w.scenario.length), protocol_resolver(p), ReadoutNoise{});
}

// Oracle for a two-step table whose only signalling is in the first-step
// marginal: G statistic of the 2 x 2 contingency (future setting, first outcome).
double marginal_g(double n, double p0, double p1) {
    const double pooled = 0.5 * (p0 + p1);
    auto term = [&](double p, double q) { return n * (p * std::log(p / q) + (1 - p) * std::log((1 - p) / (1 - q))); };
    return 2 * (term(p0, pooled) + term(p1, pooled));
}

}  // namespace

TEST_CASE("Hoeffding halfwidths") {
    CHECK(hoeffding_halfwidth(std::vector<std::uint64_t>(4, 1000)) == doctest::Approx(0.0605).epsilon(2e-3));
    CHECK(hoeffding_halfwidth(std::vector<std::uint64_t>(8, 3000)) == doctest::Approx(0.0494).epsilon(2e-3));
    CHECK(hoeffding_halfwidth(std::vector<std::uint64_t>(4, 1'000'000'000)) < 1e-3);
    CHECK_THROWS_AS(hoeffding_halfwidth(std::vector<std::uint64_t>{1000, 0}), DomainError);
    CHECK_THROWS_AS(hoeffding_halfwidth(std::vector<std::uint64_t>(4, 10), ConfidenceSpec{1.0}), DomainError);
}

TEST_CASE("Hoeffding inversion identity") {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<std::uint64_t> n(10, 100000);
    std::uniform_real_distribution<double> g(0.05, 0.999);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::uint64_t> reps(1 + trial % 8);
        double s = 0;
        for (auto& r : reps) {
            r = n(rng);
            s += 1.0 / static_cast<double>(r);
        }
        const double level = g(rng);
        const double t = hoeffding_halfwidth(reps, ConfidenceSpec{level});
        CHECK(std::abs(2 * std::exp(-2 * t * t / s) - (1 - level)) < 1e-12);
    }
}

TEST_CASE("halfwidth is monotone in n and in the confidence level") {
    const double base = hoeffding_halfwidth({1000, 1000});
    CHECK(hoeffding_halfwidth({2000, 1000}) < base);
    CHECK(hoeffding_halfwidth({1000, 1000}, ConfidenceSpec{0.95}) > base);
}

TEST_CASE("witness halfwidth refuses non-binary coefficients") {
    const Witness w = registry_witness(WitnessId::B1);
    CountsTable c = expected_counts(noisy_table(WitnessId::B1), 1000);
    CHECK(hoeffding_halfwidth(w, c) == doctest::Approx(hoeffding_halfwidth(std::vector<std::uint64_t>(4, 1000))));
    Witness scaled = w;
    scaled.terms[0].coefficient = 2.0;
    CHECK_THROWS_AS(hoeffding_halfwidth(scaled, c), DomainError);
}

TEST_CASE("qutrit fractions of the summary values") {
    CHECK(qutrit_fraction(3.65, 3.0, 4.0).value == doctest::Approx(0.65));
    CHECK(qutrit_fraction(3.66, 3.0, 4.0).value == doctest::Approx(0.66));
    CHECK(std::round(100 * qutrit_fraction(3.75, 3.186, 4.0).value) == 69);
    CHECK(std::round(100 * qutrit_fraction(7.00, 5.226, 8.0).value) == 64);
    const QutritFraction low = qutrit_fraction(2.5, 3.0, 4.0);
    CHECK(low.value == 0.0);
    CHECK(low.below_bound);
    CHECK(low.raw == doctest::Approx(-0.5));
    CHECK_THROWS_AS(qutrit_fraction(3.5, 4.0, 4.0), DomainError);
}

TEST_CASE("qutrit fraction is invariant under affine rescaling") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(0, 1), s(0.1, 10), o(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
        const double c = u(rng), a = c + s(rng), v = c + u(rng) * (a - c);
        const double k = s(rng), shift = o(rng);
        CHECK(qutrit_fraction(v, c, a).raw ==
              doctest::Approx(qutrit_fraction(k * v + shift, k * c + shift, k * a + shift).raw));
    }
}

TEST_CASE("likelihood-ratio test on exactly factorized counts") {
    const CountsTable c = expected_counts(sequence_probabilities(optimal_protocol(WitnessId::B2), 2), 1000);
    const AoTTestResult r = aot_lr_test(c);
    CHECK(r.statistic == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.sigma == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.dof == 2);
    CHECK(aot_lr_test(expected_counts(noisy_table(WitnessId::T), 3000)).dof == 14);
}

TEST_CASE("likelihood-ratio test detects a constructed marginal gap") {
    const Scenario sc{2, 2, 2};
    CorrelationTable t(sc, std::vector<double>(sc.cells(), 0.25));
    t.at(0, 0) = 0.3;
    t.at(0, 1) = 0.3;
    t.at(0, 2) = 0.2;
    t.at(0, 3) = 0.2;
    const CountsTable c = expected_counts(t, 12000);
    const AoTTestResult r = aot_lr_test(c);
    CHECK(r.statistic == doctest::Approx(marginal_g(12000, 0.6, 0.5)).epsilon(1e-9));
    CHECK(r.sigma >= 3.0);
    CHECK(r.p_value < 1e-6);
}

TEST_CASE("LR statistic is non-negative and invariant under outcome relabeling") {
    std::mt19937_64 rng(61);
    const CorrelationTable t = noisy_table(WitnessId::B3);
    const Scenario sc = t.scenario();
    for (int trial = 0; trial < 50; ++trial) {
        const CountsTable c = sample_counts(t, 500, rng);
        const double g = aot_lr_statistic(c);
        CHECK(g >= 0.0);
        // Swap '+' and '-' at every step.
        CountsTable swapped(sc);
        const std::size_t na = sc.outcome_sequences();
        for (std::size_t x = 0; x < sc.setting_sequences(); ++x) {
            for (std::size_t a = 0; a < na; ++a) swapped.set_count(x, na - 1 - a, c.count(x, a));
        }
        CHECK(aot_lr_statistic(swapped) == doctest::Approx(g).epsilon(1e-9));
    }
}

TEST_CASE("null fit obeys the constraints and is normalized") {
    std::mt19937_64 rng(67);
    const CountsTable c = sample_counts(noisy_table(WitnessId::T), 200, rng);
    const CorrelationTable f = aot_null_fit(c);
    CHECK(f.normalization_defect() < 1e-12);
}

TEST_CASE("Monte Carlo p-value is reproducible and plausible under the null") {
    std::mt19937_64 rng(71);
    const CountsTable c = sample_counts(noisy_table(WitnessId::B2), 1000, rng);
    const AoTTestResult a = aot_lr_test(c, 200, 5);
    const AoTTestResult b = aot_lr_test(c, 200, 5);
    REQUIRE(a.montecarlo_p_value.has_value());
    CHECK(*a.montecarlo_p_value == *b.montecarlo_p_value);
    CHECK(*a.montecarlo_p_value > 0.0);
    CHECK(*a.montecarlo_p_value <= 1.0);
}

TEST_CASE("sigma equivalents") {
    CHECK(sigma_equivalent(1.0) == doctest::Approx(0.0));
    CHECK(sigma_equivalent(0.3173105) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::isinf(sigma_equivalent(0.0)));
}

TEST_CASE("sampling and expected counts") {
    const CorrelationTable t = noisy_table(WitnessId::B1);
    std::mt19937_64 rng(73);
    const CountsTable c = sample_counts(t, 1000, rng);
    for (std::size_t x = 0; x < 4; ++x) CHECK(c.repetitions(x) == 1000);
    const CountsTable e = expected_counts(t, 1001);
    for (std::size_t x = 0; x < 4; ++x) CHECK(e.repetitions(x) == 1001);
    const CorrelationTable f = frequencies(e);
    for (std::size_t i = 0; i < t.flat().size(); ++i) CHECK(std::abs(f.flat()[i] - t.flat()[i]) <= 1.0 / 1001);
}

TEST_CASE("certification reports") {
    const Witness& w = registry_witness(WitnessId::B1);
    const CertificationReport r = certify(w, expected_counts(noisy_table(WitnessId::B1), 1000));
    CHECK(r.verdict == Verdict::Certified);
    CHECK(r.value == doctest::Approx(3.7248).epsilon(1e-3));
    CHECK(r.fraction_halfwidth == doctest::Approx(r.halfwidth / (w.algebraic_max - w.qubit_bound)));

    // Deterministic table exactly at the bound: '+' first, then '-' only after 01.
    const Scenario sc = w.scenario;
    CorrelationTable at(sc, std::vector<double>(sc.cells(), 0.0));
    for (std::size_t x = 0; x < 4; ++x) at.at(x, x == 1 ? 1 : 0) = 1.0;
    const CertificationReport q = certify(w, expected_counts(at, 1000));
    CHECK(q.value == doctest::Approx(3.0));
    CHECK(q.verdict == Verdict::NotCertified);
    CHECK(q.fraction.value == 0.0);
}

TEST_CASE("discard rate") {
    CountsTable c({1, 2, 2});
    c.set_count(0, 0, 90);
    c.set_count(1, 1, 100);
    c.set_discarded(0, 10);
    CHECK(c.discard_rate() == doctest::Approx(10.0 / 200));
}
