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

#include <functional>
#include <vector>

namespace dimwit {

struct NelderMeadOptions {
    /// Initial simplex edge as a fraction of each box side.
    double initial_step = 0.1;
    /// Stop once the largest vertex distance from the best vertex falls below this.
    double diameter_tol = 1e-7;
    int max_evaluations = 2000;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Maximizes `f` over the box [lower, upper] with the Nelder-Mead simplex;
/// trial points are projected onto the box.
NelderMeadResult nelder_mead_maximize(const std::function<double(const std::vector<double>&)>& f,
                                      std::vector<double> start, const std::vector<double>& lower,
                                      const std::vector<double>& upper, const NelderMeadOptions& options = {});

}  // namespace dimwit
