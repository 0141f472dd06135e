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

// Random states and instruments for property tests.

#include <random>
#include <vector>

#include "dimwit/linalg.hpp"
#include "dimwit/protocols.hpp"
#include "dimwit/qcore.hpp"

namespace dimwit::testing {

inline CMatrix random_complex(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
    }
    return m;
}

inline DensityMatrix random_state(int dim, std::mt19937_64& rng) {
    const CMatrix g = random_complex(dim, dim, rng);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

// Random Kraus operators, one to `max_kraus` per outcome, rescaled by S^{-1/2}
// with S = sum K^dagger K so that the instrument is complete.
inline Instrument random_instrument(int dim, int outcomes, std::mt19937_64& rng, int max_kraus = 2) {
    std::uniform_int_distribution<int> count(1, max_kraus);
    std::vector<std::vector<CMatrix>> raw(static_cast<std::size_t>(outcomes));
    CMatrix s = CMatrix::Zero(dim, dim);
    for (auto& ops : raw) {
        const int k = count(rng);
        for (int i = 0; i < k; ++i) {
            ops.push_back(random_complex(dim, dim, rng));
            s += ops.back().adjoint() * ops.back();
        }
    }
    const CMatrix w = inverse_psd_sqrt(s);
    std::vector<KrausMap> maps;
    for (auto& ops : raw) {
        for (CMatrix& k : ops) k = k * w;
        maps.emplace_back(ops);
    }
    return Instrument(std::move(maps));
}

inline Protocol random_protocol(int dim, int settings, int outcomes, std::mt19937_64& rng) {
    std::vector<Instrument> instruments;
    for (int x = 0; x < settings; ++x) instruments.push_back(random_instrument(dim, outcomes, rng));
    return Protocol{random_state(dim, rng), std::move(instruments), std::nullopt};
}

}  // namespace dimwit::testing
