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

#include <array>
#include <cstddef>
#include <vector>

#include "dimwit/linalg.hpp"

namespace dimwit {

using BlochVector = std::array<double, 3>;

/// Unit-trace positive semidefinite matrix.
class DensityMatrix {
   public:
    /// Validates Hermiticity, unit trace and eigenvalues >= -tol::psd.
    explicit DensityMatrix(CMatrix mat);

    static DensityMatrix pure(const CVector& ket);
    static DensityMatrix basis(int dim, int level);
    static DensityMatrix maximally_mixed(int dim);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const CMatrix& matrix() const { return mat_; }

    /// tr(rho^2) == 1 within tolerance.
    bool is_pure(double eps = 1e-9) const;

   private:
    CMatrix mat_;
};

/// A POVM element: Hermitian with spectrum inside [0, 1].
class Effect {
   public:
    explicit Effect(CMatrix mat);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const CMatrix& matrix() const { return mat_; }

    /// 1 - E.
    Effect complement() const;

   private:
    CMatrix mat_;
};

/// Completely positive map rho -> sum_i K_i rho K_i^dagger with sum_i K_i^dagger K_i <= 1.
class KrausMap {
   public:
    explicit KrausMap(std::vector<CMatrix> operators);
    /// Map with no Kraus operators (the zero map) on `dim` levels.
    static KrausMap zero(int dim);

    int dim() const { return dim_; }
    const std::vector<CMatrix>& operators() const { return ops_; }

    /// sum_i K_i rho K_i^dagger on an arbitrary (possibly unnormalized) operator.
    CMatrix apply(const CMatrix& rho) const;

    /// sum_i K_i^dagger K_i.
    CMatrix effect_matrix() const;

   private:
    int dim_;
    std::vector<CMatrix> ops_;
};

/// One Kraus map per outcome; outcomes are indexed 0..n-1 and carry printable labels
/// ('+' for 0 and '-' for 1 in the two-outcome case).
class Instrument {
   public:
    explicit Instrument(std::vector<KrausMap> maps);

    int dim() const { return dim_; }
    std::size_t outcome_count() const { return maps_.size(); }
    const KrausMap& map(std::size_t outcome) const;
    const std::vector<KrausMap>& maps() const { return maps_; }

   private:
    int dim_;
    std::vector<KrausMap> maps_;
};

/// Printable outcome label: '+'/'-' for binary outcomes, digits otherwise.
char outcome_label(int outcome, int outcome_count);
/// Inverse of outcome_label; throws DomainError for undeclared labels.
int outcome_from_label(char label, int outcome_count);

/// Level-permuting unitaries of the qutrit experiment. Phases multiply the
/// levels each pulse leaves untouched and are otherwise unconstrained.
struct PulsePhases {
    double phi1 = 0.0;
    double phi2 = 0.0;
    double phi1_idle = 0.0;
    double phi2_idle = 0.0;
};

class Unitary {
   public:
    explicit Unitary(CMatrix mat);

    /// -i(|0><1| + |1><0|) + e^{i phi2}|2><2|.
    static Unitary pi01(double phi2 = 0.0);
    /// -i(|0><2| + |2><0|) + e^{i phi1}|1><1|.
    static Unitary pi02(double phi1 = 0.0);
    /// |0><0| + e^{i phi1'}|1><1| + e^{i phi2'}|2><2|.
    static Unitary idle(double phi1_idle = 0.0, double phi2_idle = 0.0);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const CMatrix& matrix() const { return mat_; }

   private:
    CMatrix mat_;
};

/// Unnormalized post-measurement state; its trace is the outcome probability.
CMatrix apply_map(const KrausMap& map, const DensityMatrix& state);

Effect effect_of(const Instrument& instrument, int outcome);
Effect effect_of(const Instrument& instrument, char label);

/// tr(E rho) clamped to [0, 1]; values outside [-tol, 1 + tol] are errors.
double probability(const Effect& effect, const DensityMatrix& state);

DensityMatrix bloch_to_state(const BlochVector& alpha);
BlochVector state_to_bloch(const DensityMatrix& state);

/// a(1 + b n.sigma) for b in [0,1], a in [0, 1/(1+b)], |n| = 1.
Effect bloch_effect(double a, double b, const BlochVector& n);

/// Instrument rho -> tr(E_k rho) sigma_k: each outcome measures its effect and then
/// prepares its own state. Effects must sum to the identity.
Instrument measure_and_prepare(const std::vector<Effect>& effects,
                               const std::vector<DensityMatrix>& prepared);

/// Sum over outcomes of the effects minus the identity, max-entry norm.
double completeness_defect(const Instrument& instrument);

}  // namespace dimwit
