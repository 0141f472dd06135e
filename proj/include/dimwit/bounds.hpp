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
#include <string>
#include <variant>

#include "dimwit/witness.hpp"

namespace dimwit {

/// Extremal two-setting qubit measurements: "-" effects p(1 - c.sigma)/2 and
/// q(1 - d.sigma)/2 with c.d = cos_gamma.
struct QubitBoundParams {
    double p = 1.0;
    double q = 1.0;
    double cos_gamma = 0.0;

    void validate() const;
};

/// General two-outcome qubit effects E(+|s) = a_s (1 + b_s n_s.sigma) with
/// n_0.n_1 = cos_gamma, b_s in [0,1] and a_s in [0, 1/(1+b_s)].
struct EffectParams {
    double a0 = 0.5;
    double b0 = 0.0;
    double a1 = 0.5;
    double b1 = 0.0;
    double cos_gamma = 0.0;

    void validate() const;
};

/// Same effects as `params`, expressed in the general parametrization.
EffectParams extremal_effect_params(const QubitBoundParams& params);

enum class BoundMethod { ClosedForm, NestedGeneric };
std::string_view bound_method_name(BoundMethod m);

struct BoundResult {
    double value = 0.0;
    std::variant<QubitBoundParams, EffectParams> argmax;
    BoundMethod method = BoundMethod::ClosedForm;
    int evaluations = 0;
    int restarts = 0;
    int converged_restarts = 0;
    std::uint64_t seed = 0;
};

/// Qubit maximum of T for fixed extremal effects, after optimizing all states:
///   T = [(2-p) Y0 + (2-q) Y1 + sqrt(p^2 Y0^2 + q^2 Y1^2 + 2pq Y0 Y1 cos_gamma)] / 8
/// with X0 = 2-p+q+r, X1 = p+2-q+r, r = sqrt(p^2 + q^2 - 2pq cos_gamma),
/// Y0 = (2-p)X0 + qX1 + s, Y1 = pX0 + (2-q)X1 + s, s = sqrt(p^2X0^2 + q^2X1^2 - 2pqX0X1 cos_gamma).
double tee_closed_form(const QubitBoundParams& params);

struct TeeSearchOptions {
    int resolution = 41;  // grid points per axis, >= 20
    int refine_cells = 10;
    double p_min = 0.0, p_max = 1.0;
    double q_min = 0.0, q_max = 1.0;
    double cos_min = -1.0, cos_max = 1.0;
};

/// Exhaustive grid over (p, q, cos_gamma) followed by simplex refinement from
/// the best grid points.
BoundResult optimize_tee_bound(const TeeSearchOptions& options = {});

/// Exact qubit optimum of a two-setting, two-outcome witness over the initial
/// state and every history-dependent intermediate state, for fixed effects:
/// V(h) = lambda_max( sum_{x,a} V(h x a) E(a|x) ), with V = the witness
/// coefficient on complete histories.
double nested_generic_bound(const Witness& w, const EffectParams& params);

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct QubitSearchOptions {
    int restarts = 50;
    std::uint64_t seed = kDefaultSeed;
    int grid_points = 5;  // per axis of the 5-dimensional seed grid
    int max_evaluations = 2000;
    double diameter_tol = 1e-7;
};

/// Multi-start simplex maximization of nested_generic_bound over all effect
/// parameters. Half of the starts are the best seed-grid points, the rest are
/// uniformly random (seeded).
BoundResult optimize_qubit_bound(const Witness& w, const QubitSearchOptions& options = {});

}  // namespace dimwit
