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

#include "dimwit/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dimwit/error.hpp"

namespace dimwit {
namespace {

using Point = std::vector<double>;

Point affine(const Point& a, const Point& b, double t) {
    // a + t (b - a)
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
}

}  // namespace

NelderMeadResult nelder_mead_maximize(const std::function<double(const std::vector<double>&)>& f,
                                      std::vector<double> start, const std::vector<double>& lower,
                                      const std::vector<double>& upper, const NelderMeadOptions& options) {
    const std::size_t n = start.size();
    if (n == 0 || lower.size() != n || upper.size() != n) {
        throw DimensionError("nelder_mead_maximize: inconsistent dimensions");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(lower[i] <= upper[i])) throw DomainError("nelder_mead_maximize: empty box");
    }

    NelderMeadResult result;
    auto project = [&](Point p) {
        for (std::size_t i = 0; i < n; ++i) p[i] = std::clamp(p[i], lower[i], upper[i]);
        return p;
    };
    auto eval = [&](const Point& p) {
        ++result.evaluations;
        const double v = f(p);
        return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
    };

    std::vector<Point> simplex;
    std::vector<double> values;
    simplex.push_back(project(std::move(start)));
    for (std::size_t i = 0; i < n; ++i) {
        Point p = simplex.front();
        const double step = options.initial_step * std::max(upper[i] - lower[i], 1e-12);
        // Step inward when the start sits on the upper face.
        p[i] = p[i] + step <= upper[i] ? p[i] + step : p[i] - step;
        simplex.push_back(project(std::move(p)));
    }
    for (const Point& p : simplex) values.push_back(eval(p));

    std::vector<std::size_t> order(n + 1);
    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
        const Point& best = simplex[order.front()];

        double diameter = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            const Point& p = simplex[order[k]];
            double d2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) d2 += (p[i] - best[i]) * (p[i] - best[i]);
            diameter = std::max(diameter, std::sqrt(d2));
        }
        if (diameter < options.diameter_tol) {
            result.converged = true;
            break;
        }
        if (result.evaluations >= options.max_evaluations) break;

        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - 1];
        Point centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[order[k]][i] / static_cast<double>(n);
        }

        const Point reflected = project(affine(centroid, simplex[worst], -1.0));
        const double fr = eval(reflected);
        if (fr > values[order.front()]) {
            const Point expanded = project(affine(centroid, simplex[worst], -2.0));
            const double fe = eval(expanded);
            if (fe > fr) {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
            continue;
        }
        if (fr > values[second_worst]) {
            simplex[worst] = reflected;
            values[worst] = fr;
            continue;
        }
        const bool outside = fr > values[worst];
        const Point contracted =
            outside ? project(affine(centroid, reflected, 0.5)) : project(affine(centroid, simplex[worst], 0.5));
        const double fc = eval(contracted);
        if (outside ? fc >= fr : fc > values[worst]) {
            simplex[worst] = contracted;
            values[worst] = fc;
            continue;
        }
        // Shrink towards the best vertex.
        const std::size_t b = order.front();
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == b) continue;
            simplex[k] = affine(simplex[b], simplex[k], 0.5);
            values[k] = eval(simplex[k]);
        }
    }

    const auto best = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
    result.x = simplex[best];
    result.value = values[best];
    return result;
}

}  // namespace dimwit
