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

#include "dimwit/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "dimwit/error.hpp"

namespace dimwit {
namespace {

struct Walker {
    const Protocol& protocol;
    CorrelationTable& table;
    int length;
    std::vector<int> xs;
    std::vector<int> as;

    void descend(const CMatrix& rho, int step) {
        if (step == length) {
            table.at(encode_sequence(xs, table.scenario().settings),
                     encode_sequence(as, table.scenario().outcomes)) = rho.trace().real();
            return;
        }
        for (int x = 0; x < protocol.setting_count(); ++x) {
            const Instrument& in = protocol.instruments[static_cast<std::size_t>(x)];
            for (int a = 0; a < protocol.outcome_count(); ++a) {
                xs[static_cast<std::size_t>(step)] = x;
                as[static_cast<std::size_t>(step)] = a;
                descend(in.map(static_cast<std::size_t>(a)).apply(rho), step + 1);
            }
        }
    }
};

}  // namespace

CorrelationTable sequence_probabilities(const Protocol& protocol, int length) {
    protocol.validate();
    const Scenario scenario{length, protocol.setting_count(), protocol.outcome_count()};
    CorrelationTable table(scenario);
    Walker walker{protocol, table, length, std::vector<int>(static_cast<std::size_t>(length)),
                  std::vector<int>(static_cast<std::size_t>(length))};
    walker.descend(protocol.initial_state.matrix(), 0);

    // Round-off can push exact zeros slightly negative.
    std::vector<double> probs = table.flat();
    for (double& p : probs) {
        if (p < -tol::probability || p > 1.0 + tol::probability) {
            throw DomainError("sequence_probabilities: probability outside [0, 1]");
        }
        p = std::clamp(p, 0.0, 1.0);
    }
    CorrelationTable out(scenario, std::move(probs));
    out.validate();
    return out;
}

void ReadoutNoise::validate() const {
    if (!(p_bright_correct >= 0.0 && p_bright_correct <= 1.0) ||
        !(p_dark_correct >= 0.0 && p_dark_correct <= 1.0)) {
        throw DomainError("readout fidelities must lie in [0, 1]");
    }
}

DetectionResolver protocol_resolver(const Protocol& protocol) {
    if (!protocol.detection) throw DomainError("protocol carries no detection assignment");
    auto kinds = *protocol.detection;
    return [kinds = std::move(kinds)](std::span<const int>, std::span<const int>, int setting, int outcome) {
        return kinds.at(static_cast<std::size_t>(setting)).at(static_cast<std::size_t>(outcome));
    };
}

CorrelationTable apply_readout_noise(const CorrelationTable& table, const DetectionResolver& resolver,
                                     const ReadoutNoise& noise) {
    noise.validate();
    const Scenario& sc = table.scenario();
    if (sc.outcomes != 2) throw DomainError("readout noise is defined for two-outcome detection");
    const int len = sc.length;
    const std::size_t na = sc.outcome_sequences();
    CorrelationTable out(sc);

    std::vector<double> keep(static_cast<std::size_t>(len));
    for (std::size_t xi = 0; xi < sc.setting_sequences(); ++xi) {
        const std::vector<int> xs = decode_sequence(xi, sc.settings, len);
        for (std::size_t ai = 0; ai < na; ++ai) {
            const double p = table.at(xi, ai);
            if (p == 0.0) continue;
            const std::vector<int> as = decode_sequence(ai, sc.outcomes, len);
            for (int t = 0; t < len; ++t) {
                const auto ut = static_cast<std::size_t>(t);
                const DetectionKind kind = resolver(std::span<const int>(xs).first(ut),
                                                    std::span<const int>(as).first(ut), xs[ut], as[ut]);
                keep[ut] = kind == DetectionKind::Bright ? noise.p_bright_correct : noise.p_dark_correct;
            }
            for (std::size_t ri = 0; ri < na; ++ri) {
                double w = p;
                std::size_t r = ri;
                std::size_t a = ai;
                for (int t = len - 1; t >= 0; --t) {
                    const double k = keep[static_cast<std::size_t>(t)];
                    w *= (r % 2 == a % 2) ? k : 1.0 - k;
                    r /= 2;
                    a /= 2;
                }
                out.at(xi, ri) += w;
            }
        }
    }
    return out;
}

CorrelationTable drop_last_step(const CorrelationTable& table, int final_setting) {
    const Scenario& sc = table.scenario();
    if (sc.length < 2) throw DomainError("drop_last_step: need at least two time steps");
    if (final_setting < 0 || final_setting >= sc.settings) throw DomainError("drop_last_step: bad setting");
    const Scenario shorter{sc.length - 1, sc.settings, sc.outcomes};
    CorrelationTable out(shorter);
    for (std::size_t xi = 0; xi < shorter.setting_sequences(); ++xi) {
        const std::size_t full_x = xi * static_cast<std::size_t>(sc.settings) + static_cast<std::size_t>(final_setting);
        for (std::size_t ai = 0; ai < shorter.outcome_sequences(); ++ai) {
            double s = 0.0;
            for (int b = 0; b < sc.outcomes; ++b) {
                s += table.at(full_x, ai * static_cast<std::size_t>(sc.outcomes) + static_cast<std::size_t>(b));
            }
            out.at(xi, ai) = s;
        }
    }
    return out;
}

}  // namespace dimwit
