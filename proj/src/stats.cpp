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

#include "dimwit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "dimwit/error.hpp"
#include "dimwit/polytope.hpp"

namespace dimwit {
namespace {

std::size_t ipow(int base, int exp) {
    std::size_t v = 1;
    for (int i = 0; i < exp; ++i) v *= static_cast<std::size_t>(base);
    return v;
}

void require_same_scenario(const Scenario& a, const Scenario& b, const char* what) {
    if (!(a == b)) throw DimensionError(std::string(what) + ": scenario mismatch");
}

}  // namespace

CountsTable::CountsTable(Scenario scenario) : scenario_(scenario) {
    scenario_.validate();
    counts_.assign(scenario_.cells(), 0);
    discarded_.assign(scenario_.setting_sequences(), 0);
}

CountsTable::CountsTable(Scenario scenario, std::vector<std::uint64_t> counts, std::vector<std::uint64_t> discarded)
    : scenario_(scenario), counts_(std::move(counts)), discarded_(std::move(discarded)) {
    scenario_.validate();
    if (counts_.size() != scenario_.cells()) throw DimensionError("CountsTable: wrong number of cells");
    if (discarded_.empty()) discarded_.assign(scenario_.setting_sequences(), 0);
    if (discarded_.size() != scenario_.setting_sequences()) {
        throw DimensionError("CountsTable: one discard tally per setting sequence required");
    }
}

std::uint64_t CountsTable::count(std::size_t xi, std::size_t ai) const {
    if (xi >= scenario_.setting_sequences() || ai >= scenario_.outcome_sequences()) {
        throw DomainError("CountsTable: index out of range");
    }
    return counts_[xi * scenario_.outcome_sequences() + ai];
}

void CountsTable::set_count(std::size_t xi, std::size_t ai, std::uint64_t value) {
    if (xi >= scenario_.setting_sequences() || ai >= scenario_.outcome_sequences()) {
        throw DomainError("CountsTable: index out of range");
    }
    counts_[xi * scenario_.outcome_sequences() + ai] = value;
}

std::uint64_t CountsTable::repetitions(std::size_t xi) const {
    const std::size_t na = scenario_.outcome_sequences();
    if (xi >= scenario_.setting_sequences()) throw DomainError("CountsTable: index out of range");
    return std::accumulate(counts_.begin() + static_cast<std::ptrdiff_t>(xi * na),
                           counts_.begin() + static_cast<std::ptrdiff_t>((xi + 1) * na), std::uint64_t{0});
}

std::uint64_t CountsTable::discarded(std::size_t xi) const { return discarded_.at(xi); }
void CountsTable::set_discarded(std::size_t xi, std::uint64_t value) { discarded_.at(xi) = value; }

std::uint64_t CountsTable::total_valid() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t CountsTable::total_discarded() const {
    return std::accumulate(discarded_.begin(), discarded_.end(), std::uint64_t{0});
}

double CountsTable::discard_rate() const {
    const double all = static_cast<double>(total_valid() + total_discarded());
    return all > 0.0 ? static_cast<double>(total_discarded()) / all : 0.0;
}

CorrelationTable frequencies(const CountsTable& counts) {
    const Scenario& sc = counts.scenario();
    CorrelationTable t(sc);
    for (std::size_t x = 0; x < sc.setting_sequences(); ++x) {
        const std::uint64_t n = counts.repetitions(x);
        if (n == 0) {
            throw DomainError("frequencies: setting sequence " +
                              format_settings(decode_sequence(x, sc.settings, sc.length)) + " has no repetitions");
        }
        for (std::size_t a = 0; a < sc.outcome_sequences(); ++a) {
            t.at(x, a) = static_cast<double>(counts.count(x, a)) / static_cast<double>(n);
        }
    }
    return t;
}

void ConfidenceSpec::validate() const {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
}

double hoeffding_halfwidth(const std::vector<std::uint64_t>& repetitions, const ConfidenceSpec& spec) {
    spec.validate();
    if (repetitions.empty()) throw DomainError("hoeffding_halfwidth: no setting sequences");
    double inv_sum = 0.0;
    for (std::uint64_t n : repetitions) {
        if (n == 0) throw DomainError("hoeffding_halfwidth: a setting sequence has zero repetitions");
        inv_sum += 1.0 / (2.0 * static_cast<double>(n));
    }
    return std::sqrt(-std::log((1.0 - spec.level) / 2.0) * inv_sum);
}

double hoeffding_halfwidth(const Witness& w, const CountsTable& counts, const ConfidenceSpec& spec) {
    require_same_scenario(w.scenario, counts.scenario(), "hoeffding_halfwidth");
    for (const WitnessTerm& t : w.terms) {
        if (t.coefficient != 0.0 && t.coefficient != 1.0) {
            throw DomainError("hoeffding_halfwidth: witness " + w.id +
                              " has a coefficient outside {0, 1}; each shot must contribute a value in "
                              "[0, n/n_x] for this interval to hold");
        }
    }
    std::vector<std::uint64_t> reps;
    for (const auto& xs : w.setting_sequences()) {
        reps.push_back(counts.repetitions(encode_sequence(xs, w.scenario.settings)));
    }
    return hoeffding_halfwidth(reps, spec);
}

QutritFraction qutrit_fraction(double value, double qubit_bound, double algebraic_max) {
    if (!(algebraic_max > qubit_bound)) throw DomainError("qutrit_fraction: algebraic max must exceed the qubit bound");
    QutritFraction f;
    f.raw = (value - qubit_bound) / (algebraic_max - qubit_bound);
    f.below_bound = value < qubit_bound;
    f.value = std::clamp(f.raw, 0.0, 1.0);
    return f;
}

CorrelationTable aot_null_fit(const CountsTable& counts) {
    const Scenario& sc = counts.scenario();
    const int len = sc.length;
    const int m = sc.settings;
    const int d = sc.outcomes;
    const std::size_t na = sc.outcome_sequences();

    // pooled[t][(x_<=t, a_<=t)] = counts summed over future settings and outcomes.
    std::vector<std::vector<double>> pooled(static_cast<std::size_t>(len) + 1);
    for (int t = 0; t <= len; ++t) pooled[static_cast<std::size_t>(t)].assign(ipow(m, t) * ipow(d, t), 0.0);
    for (std::size_t x = 0; x < sc.setting_sequences(); ++x) {
        for (std::size_t a = 0; a < na; ++a) {
            const double c = static_cast<double>(counts.count(x, a));
            if (c == 0.0) continue;
            for (int t = 0; t <= len; ++t) {
                const std::size_t xp = x / ipow(m, len - t);
                const std::size_t ap = a / ipow(d, len - t);
                pooled[static_cast<std::size_t>(t)][xp * ipow(d, t) + ap] += c;
            }
        }
    }

    CorrelationTable out(sc);
    for (std::size_t x = 0; x < sc.setting_sequences(); ++x) {
        for (std::size_t a = 0; a < na; ++a) {
            double p = 1.0;
            for (int t = 1; t <= len && p > 0.0; ++t) {
                const std::size_t xp = x / ipow(m, len - t);
                const std::size_t ap = a / ipow(d, len - t);
                const std::size_t a_prev = ap / static_cast<std::size_t>(d);
                const auto& level = pooled[static_cast<std::size_t>(t)];
                const std::size_t dt = ipow(d, t);
                double denom = 0.0;
                for (int b = 0; b < d; ++b) {
                    denom += level[xp * dt + a_prev * static_cast<std::size_t>(d) + static_cast<std::size_t>(b)];
                }
                // Unobserved branch: the likelihood does not constrain it.
                p *= denom > 0.0 ? level[xp * dt + ap] / denom : 1.0 / d;
            }
            out.at(x, a) = p;
        }
    }
    return out;
}

double aot_lr_statistic(const CountsTable& counts) {
    const CorrelationTable null_fit = aot_null_fit(counts);
    const Scenario& sc = counts.scenario();
    double stat = 0.0;
    for (std::size_t x = 0; x < sc.setting_sequences(); ++x) {
        const double n = static_cast<double>(counts.repetitions(x));
        for (std::size_t a = 0; a < sc.outcome_sequences(); ++a) {
            const double c = static_cast<double>(counts.count(x, a));
            if (c == 0.0) continue;  // 0 ln 0 = 0
            stat += 2.0 * c * (std::log(c / n) - std::log(null_fit.at(x, a)));
        }
    }
    return std::max(stat, 0.0);
}

double sigma_equivalent(double p_value) {
    if (!(p_value >= 0.0)) throw DomainError("sigma_equivalent: p-value must be non-negative");
    if (p_value >= 1.0) return 0.0;
    if (p_value == 0.0) return std::numeric_limits<double>::infinity();
    const boost::math::normal_distribution<double> normal;
    return boost::math::quantile(boost::math::complement(normal, p_value / 2.0));
}

AoTTestResult aot_lr_test(const CountsTable& counts) {
    const std::vector<AoTConstraint> constraints = aot_constraints(counts.scenario());
    AoTTestResult r;
    r.dof = static_cast<int>(independent_constraint_count(constraints));
    if (r.dof == 0) throw DomainError("aot_lr_test: scenario has no arrow-of-time constraints");
    r.statistic = aot_lr_statistic(counts);
    const boost::math::chi_squared_distribution<double> chi2(r.dof);
    r.p_value = r.statistic > 0.0 ? boost::math::cdf(boost::math::complement(chi2, r.statistic)) : 1.0;
    r.sigma = sigma_equivalent(r.p_value);
    return r;
}

AoTTestResult aot_lr_test(const CountsTable& counts, int replications, std::uint64_t seed) {
    AoTTestResult r = aot_lr_test(counts);
    if (replications <= 0) return r;
    const CorrelationTable null_fit = aot_null_fit(counts);
    std::vector<std::uint64_t> reps;
    for (std::size_t x = 0; x < counts.scenario().setting_sequences(); ++x) reps.push_back(counts.repetitions(x));
    std::mt19937_64 rng(seed);
    int exceed = 0;
    for (int i = 0; i < replications; ++i) {
        if (aot_lr_statistic(sample_counts(null_fit, reps, rng)) >= r.statistic) ++exceed;
    }
    r.montecarlo_replications = replications;
    r.montecarlo_p_value = (1.0 + exceed) / (1.0 + replications);
    return r;
}

CountsTable sample_counts(const CorrelationTable& table, const std::vector<std::uint64_t>& repetitions,
                          std::mt19937_64& rng) {
    const Scenario& sc = table.scenario();
    if (repetitions.size() != sc.setting_sequences()) {
        throw DimensionError("sample_counts: one repetition count per setting sequence required");
    }
    CountsTable out(sc);
    for (std::size_t x = 0; x < sc.setting_sequences(); ++x) {
        std::uint64_t left = repetitions[x];
        double mass = 1.0;
        for (std::size_t a = 0; a < sc.outcome_sequences(); ++a) {
            if (left == 0) break;
            const double p = table.at(x, a);
            std::uint64_t k = 0;
            if (a + 1 == sc.outcome_sequences() || p >= mass) {
                k = left;
            } else if (p > 0.0) {
                std::binomial_distribution<std::uint64_t> draw(left, std::clamp(p / mass, 0.0, 1.0));
                k = draw(rng);
            }
            out.set_count(x, a, k);
            left -= k;
            mass -= p;
        }
    }
    return out;
}

CountsTable sample_counts(const CorrelationTable& table, std::uint64_t repetitions, std::mt19937_64& rng) {
    return sample_counts(table, std::vector<std::uint64_t>(table.scenario().setting_sequences(), repetitions), rng);
}

CountsTable expected_counts(const CorrelationTable& table, std::uint64_t repetitions) {
    const Scenario& sc = table.scenario();
    const std::size_t na = sc.outcome_sequences();
    CountsTable out(sc);
    for (std::size_t x = 0; x < sc.setting_sequences(); ++x) {
        std::vector<std::pair<double, std::size_t>> remainders;
        std::uint64_t assigned = 0;
        for (std::size_t a = 0; a < na; ++a) {
            const double exact = table.at(x, a) * static_cast<double>(repetitions);
            const auto whole = static_cast<std::uint64_t>(std::floor(exact));
            out.set_count(x, a, whole);
            assigned += whole;
            remainders.emplace_back(exact - static_cast<double>(whole), a);
        }
        // Largest remainder first; ties by lower index.
        std::stable_sort(remainders.begin(), remainders.end(),
                         [](const auto& l, const auto& r) { return l.first > r.first; });
        for (std::size_t i = 0; assigned < repetitions && i < remainders.size(); ++i, ++assigned) {
            const std::size_t a = remainders[i].second;
            out.set_count(x, a, out.count(x, a) + 1);
        }
    }
    return out;
}

CertificationReport certify(const Witness& w, const CountsTable& counts, const ConfidenceSpec& spec) {
    require_same_scenario(w.scenario, counts.scenario(), "certify");
    CertificationReport r;
    r.witness = w.id;
    r.value = evaluate_witness(w, frequencies(counts));
    r.halfwidth = hoeffding_halfwidth(w, counts, spec);
    r.confidence = spec.level;
    r.qubit_bound = w.qubit_bound;
    r.algebraic_max = w.algebraic_max;
    r.violation_ratio = r.value / r.qubit_bound;
    r.fraction = qutrit_fraction(r.value, r.qubit_bound, r.algebraic_max);
    r.fraction_halfwidth = r.halfwidth / (r.algebraic_max - r.qubit_bound);
    r.discard_rate = counts.discard_rate();
    r.verdict = r.value - r.halfwidth > r.qubit_bound ? Verdict::Certified : Verdict::NotCertified;
    return r;
}

}  // namespace dimwit
