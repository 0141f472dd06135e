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

#include "dimwit/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "dimwit/error.hpp"
#include "dimwit/nelder_mead.hpp"
#include "dimwit/protocols.hpp"
#include "dimwit/qcore.hpp"

namespace dimwit {
namespace {

// Qubit operator alpha 1 + beta.sigma.
struct BlochOp {
    double scalar = 0.0;
    std::array<double, 3> vec{0.0, 0.0, 0.0};

    static BlochOp from(const Effect& e) {
        const CMatrix& m = e.matrix();
        return {0.5 * m.trace().real(),
                {0.5 * (pauli_x() * m).trace().real(), 0.5 * (pauli_y() * m).trace().real(),
                 0.5 * (pauli_z() * m).trace().real()}};
    }

    void add_scaled(const BlochOp& o, double w) {
        scalar += w * o.scalar;
        for (int i = 0; i < 3; ++i) vec[static_cast<std::size_t>(i)] += w * o.vec[static_cast<std::size_t>(i)];
    }

    double max_eigenvalue() const { return scalar + std::sqrt(vec[0] * vec[0] + vec[1] * vec[1] + vec[2] * vec[2]); }
};

struct NestedEvaluator {
    const Witness& w;
    std::vector<double> coeff;            // dense over (x-seq, a-seq)
    std::array<std::array<BlochOp, 2>, 2> effects;  // [setting][outcome]
    std::size_t na;

    double value(int step, std::size_t xi, std::size_t ai) const {
        if (step == w.scenario.length) return coeff[xi * na + ai];
        BlochOp sum;
        for (std::size_t x = 0; x < 2; ++x) {
            for (std::size_t a = 0; a < 2; ++a) {
                const double v = value(step + 1, xi * 2 + x, ai * 2 + a);
                if (v != 0.0) sum.add_scaled(effects[x][a], v);
            }
        }
        return sum.max_eigenvalue();
    }
};

std::vector<double> dense_coefficients(const Witness& w) {
    std::vector<double> c(w.scenario.cells(), 0.0);
    const std::size_t na = w.scenario.outcome_sequences();
    for (const WitnessTerm& t : w.terms) {
        c[encode_sequence(t.settings, w.scenario.settings) * na + encode_sequence(t.outcomes, w.scenario.outcomes)] +=
            t.coefficient;
    }
    return c;
}

// Box coordinates (s0, b0, s1, b1, cos_gamma) with a_s = s_s / (1 + b_s).
EffectParams from_box(const std::vector<double>& z) {
    return {z[0] / (1.0 + z[1]), z[1], z[2] / (1.0 + z[3]), z[3], z[4]};
}

}  // namespace

void QubitBoundParams::validate() const {
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0) || !(cos_gamma >= -1.0 && cos_gamma <= 1.0)) {
        throw DomainError("QubitBoundParams: require p, q in [0,1] and cos_gamma in [-1,1]");
    }
}

void EffectParams::validate() const {
    auto ok = [](double a, double b) { return b >= 0.0 && b <= 1.0 && a >= 0.0 && a <= 1.0 / (1.0 + b) + tol::psd; };
    if (!ok(a0, b0) || !ok(a1, b1) || !(cos_gamma >= -1.0 && cos_gamma <= 1.0)) {
        throw DomainError("EffectParams: require b in [0,1], a in [0, 1/(1+b)], cos_gamma in [-1,1]");
    }
}

EffectParams extremal_effect_params(const QubitBoundParams& params) {
    params.validate();
    const double b0 = params.p / (2.0 - params.p);
    const double b1 = params.q / (2.0 - params.q);
    return {1.0 / (1.0 + b0), b0, 1.0 / (1.0 + b1), b1, params.cos_gamma};
}

std::string_view bound_method_name(BoundMethod m) {
    return m == BoundMethod::ClosedForm ? "closed_form" : "nested_generic";
}

double tee_closed_form(const QubitBoundParams& params) {
    params.validate();
    const double p = params.p;
    const double q = params.q;
    const double cg = params.cos_gamma;
    const double r = guarded_sqrt(p * p + q * q - 2.0 * p * q * cg);
    const double x0 = 2.0 - p + q + r;
    const double x1 = p + 2.0 - q + r;
    const double s = guarded_sqrt(p * p * x0 * x0 + q * q * x1 * x1 - 2.0 * p * q * x0 * x1 * cg);
    const double y0 = (2.0 - p) * x0 + q * x1 + s;
    const double y1 = p * x0 + (2.0 - q) * x1 + s;
    const double u = guarded_sqrt(p * p * y0 * y0 + q * q * y1 * y1 + 2.0 * p * q * y0 * y1 * cg);
    return ((2.0 - p) * y0 + (2.0 - q) * y1 + u) / 8.0;
}

BoundResult optimize_tee_bound(const TeeSearchOptions& o) {
    if (o.resolution < 20) throw DomainError("optimize_tee_bound: resolution must be >= 20 per axis");
    if (o.refine_cells < 1) throw DomainError("optimize_tee_bound: need at least one refinement start");
    const std::vector<double> lower{o.p_min, o.q_min, o.cos_min};
    const std::vector<double> upper{o.p_max, o.q_max, o.cos_max};
    for (std::size_t i = 0; i < 3; ++i) {
        if (!(lower[i] <= upper[i])) throw DomainError("optimize_tee_bound: empty search box");
    }
    QubitBoundParams{o.p_min, o.q_min, o.cos_min}.validate();
    QubitBoundParams{o.p_max, o.q_max, o.cos_max}.validate();

    auto f = [](const std::vector<double>& z) { return tee_closed_form({z[0], z[1], z[2]}); };

    const int n = o.resolution;
    auto axis = [n](double lo, double hi, int i) { return lo + (hi - lo) * i / (n - 1); };
    struct Cell {
        double value;
        std::vector<double> z;
    };
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                std::vector<double> z{axis(o.p_min, o.p_max, i), axis(o.q_min, o.q_max, j),
                                      axis(o.cos_min, o.cos_max, k)};
                cells.push_back({f(z), std::move(z)});
            }
        }
    }
    BoundResult result;
    result.method = BoundMethod::ClosedForm;
    result.evaluations = static_cast<int>(cells.size());

    const auto top = std::min<std::size_t>(static_cast<std::size_t>(o.refine_cells), cells.size());
    std::partial_sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(top), cells.end(),
                      [](const Cell& a, const Cell& b) { return a.value > b.value; });

    result.value = cells.front().value;
    result.argmax = QubitBoundParams{cells.front().z[0], cells.front().z[1], cells.front().z[2]};
    NelderMeadOptions nm;
    nm.initial_step = 1.0 / (n - 1);
    for (std::size_t c = 0; c < top; ++c) {
        const NelderMeadResult r = nelder_mead_maximize(f, cells[c].z, lower, upper, nm);
        result.evaluations += r.evaluations;
        ++result.restarts;
        result.converged_restarts += r.converged ? 1 : 0;
        if (r.value > result.value) {
            result.value = r.value;
            result.argmax = QubitBoundParams{r.x[0], r.x[1], r.x[2]};
        }
    }
    return result;
}

double nested_generic_bound(const Witness& w, const EffectParams& params) {
    params.validate();
    w.validate();
    if (w.scenario.settings != 2 || w.scenario.outcomes != 2) {
        throw DimensionError("nested_generic_bound: two settings with two outcomes required");
    }
    const auto [c, d] = qubit_axes(params.cos_gamma);
    const Effect plus0 = bloch_effect(std::min(params.a0, 1.0 / (1.0 + params.b0)), params.b0, c);
    const Effect plus1 = bloch_effect(std::min(params.a1, 1.0 / (1.0 + params.b1)), params.b1, d);
    NestedEvaluator ev{w, dense_coefficients(w), {}, w.scenario.outcome_sequences()};
    ev.effects[0] = {BlochOp::from(plus0), BlochOp::from(plus0.complement())};
    ev.effects[1] = {BlochOp::from(plus1), BlochOp::from(plus1.complement())};
    return ev.value(0, 0, 0);
}

BoundResult optimize_qubit_bound(const Witness& w, const QubitSearchOptions& o) {
    if (o.restarts < 1) throw DomainError("optimize_qubit_bound: need at least one restart");
    if (o.grid_points < 2) throw DomainError("optimize_qubit_bound: grid needs >= 2 points per axis");
    w.validate();
    const std::vector<double> lower{0.0, 0.0, 0.0, 0.0, -1.0};
    const std::vector<double> upper{1.0, 1.0, 1.0, 1.0, 1.0};
    auto f = [&w](const std::vector<double>& z) { return nested_generic_bound(w, from_box(z)); };

    BoundResult result;
    result.method = BoundMethod::NestedGeneric;
    result.seed = o.seed;
    result.value = -std::numeric_limits<double>::infinity();

    auto consider = [&result](double v, const std::vector<double>& z) {
        if (v > result.value) {
            result.value = v;
            result.argmax = from_box(z);
        }
    };

    // Seed grid.
    struct Cell {
        double value;
        std::vector<double> z;
    };
    std::vector<Cell> grid;
    const int g = o.grid_points;
    std::vector<int> idx(5, 0);
    while (true) {
        std::vector<double> z(5);
        for (std::size_t i = 0; i < 5; ++i) z[i] = lower[i] + (upper[i] - lower[i]) * idx[i] / (g - 1);
        const double v = f(z);
        ++result.evaluations;
        consider(v, z);
        grid.push_back({v, std::move(z)});
        std::size_t k = 5;
        while (k > 0 && ++idx[k - 1] == g) idx[--k] = 0;
        if (k == 0) break;
    }
    std::stable_sort(grid.begin(), grid.end(), [](const Cell& a, const Cell& b) { return a.value > b.value; });

    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int from_grid = std::min<int>((o.restarts + 1) / 2, static_cast<int>(grid.size()));

    NelderMeadOptions nm;
    nm.initial_step = 0.1;
    nm.max_evaluations = o.max_evaluations;
    nm.diameter_tol = o.diameter_tol;
    for (int r = 0; r < o.restarts; ++r) {
        std::vector<double> start(5);
        if (r < from_grid) {
            start = grid[static_cast<std::size_t>(r)].z;
        } else {
            for (std::size_t i = 0; i < 5; ++i) start[i] = lower[i] + (upper[i] - lower[i]) * unit(rng);
        }
        const NelderMeadResult res = nelder_mead_maximize(f, start, lower, upper, nm);
        result.evaluations += res.evaluations;
        ++result.restarts;
        result.converged_restarts += res.converged ? 1 : 0;
        consider(res.value, res.x);
    }
    return result;
}

}  // namespace dimwit
