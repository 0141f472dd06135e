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

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "dimwit/table.hpp"
#include "dimwit/witness.hpp"

namespace dimwit {

/// Shot counts per (setting sequence, outcome sequence). Shots rejected by
/// sequence validation are excluded from the counts and tallied separately.
class CountsTable {
   public:
    explicit CountsTable(Scenario scenario);
    CountsTable(Scenario scenario, std::vector<std::uint64_t> counts, std::vector<std::uint64_t> discarded);

    const Scenario& scenario() const { return scenario_; }

    std::uint64_t count(std::size_t setting_index, std::size_t outcome_index) const;
    void set_count(std::size_t setting_index, std::size_t outcome_index, std::uint64_t value);

    /// n_x: valid repetitions of setting sequence x.
    std::uint64_t repetitions(std::size_t setting_index) const;
    std::uint64_t discarded(std::size_t setting_index) const;
    void set_discarded(std::size_t setting_index, std::uint64_t value);

    std::uint64_t total_valid() const;
    std::uint64_t total_discarded() const;
    /// discarded / (valid + discarded), 0 for an empty table.
    double discard_rate() const;

    const std::vector<std::uint64_t>& flat() const { return counts_; }

   private:
    Scenario scenario_;
    std::vector<std::uint64_t> counts_;
    std::vector<std::uint64_t> discarded_;
};

/// counts / n_x per row; throws DomainError if some n_x is zero.
CorrelationTable frequencies(const CountsTable& counts);

struct ConfidenceSpec {
    double level = 0.68;

    void validate() const;
};

/// Hoeffding half-width t with 2 exp(-2 t^2 / sum_x 1/n_x) = 1 - level, where
/// the sum runs over the setting sequences the witness uses:
///   t = sqrt(-ln((1 - level)/2) * sum_x 1/(2 n_x)).
/// Requires every witness coefficient to be 0 or 1.
double hoeffding_halfwidth(const Witness& w, const CountsTable& counts, const ConfidenceSpec& spec = {});
/// Same formula from explicit repetition counts.
double hoeffding_halfwidth(const std::vector<std::uint64_t>& repetitions, const ConfidenceSpec& spec = {});

struct QutritFraction {
    double value = 0.0;   // clamped to [0, 1]
    double raw = 0.0;     // (value - C) / (A - C) before clamping
    bool below_bound = false;
};

/// Weight of the qutrit strategy reaching A needed to explain `value` when
/// mixed with a qubit strategy reaching C.
QutritFraction qutrit_fraction(double value, double qubit_bound, double algebraic_max);

struct AoTTestResult {
    double statistic = 0.0;  // 2 ln(L_alt / L_null)
    int dof = 0;
    double p_value = 1.0;
    double sigma = 0.0;  // two-sided normal equivalent
    std::optional<double> montecarlo_p_value;
    int montecarlo_replications = 0;
};

/// Maximum-likelihood table among those obeying the arrow-of-time
/// constraints: p(a_t | a_<t, x_<=t) estimated by pooling counts over all
/// future settings.
CorrelationTable aot_null_fit(const CountsTable& counts);

double aot_lr_statistic(const CountsTable& counts);

/// Likelihood-ratio test of the arrow-of-time constraints with chi-square
/// asymptotics; dof is the independent constraint count.
AoTTestResult aot_lr_test(const CountsTable& counts);

/// Adds an empirical p-value from `replications` parametric-bootstrap draws
/// from the null fit (same n_x per row).
AoTTestResult aot_lr_test(const CountsTable& counts, int replications, std::uint64_t seed);

/// Two-sided standard-normal quantile: Phi^{-1}(1 - p/2).
double sigma_equivalent(double p_value);

/// Multinomial draw of n_x shots per row of `table`.
CountsTable sample_counts(const CorrelationTable& table, const std::vector<std::uint64_t>& repetitions,
                          std::mt19937_64& rng);
CountsTable sample_counts(const CorrelationTable& table, std::uint64_t repetitions, std::mt19937_64& rng);

/// Deterministic counts nearest to n * p, rounded so every row sums to n.
CountsTable expected_counts(const CorrelationTable& table, std::uint64_t repetitions);

enum class Verdict { Certified, NotCertified };

struct CertificationReport {
    std::string witness;
    double value = 0.0;
    double halfwidth = 0.0;
    double confidence = 0.68;
    double qubit_bound = 0.0;
    double algebraic_max = 0.0;
    double violation_ratio = 0.0;  // value / qubit_bound
    QutritFraction fraction;
    double fraction_halfwidth = 0.0;  // halfwidth / (A - C)
    double discard_rate = 0.0;
    Verdict verdict = Verdict::NotCertified;
};

/// Verdict is Certified iff value - halfwidth > qubit bound.
CertificationReport certify(const Witness& w, const CountsTable& counts, const ConfidenceSpec& spec = {});

}  // namespace dimwit
