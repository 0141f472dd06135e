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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <sstream>

#include "dimwit/bounds.hpp"
#include "dimwit/cli.hpp"
#include "dimwit/error.hpp"
#include "dimwit/io.hpp"
#include "dimwit/polytope.hpp"
#include "dimwit/simulator.hpp"
#include "dimwit/stats.hpp"

namespace py = pybind11;
using namespace dimwit;

namespace {

CorrelationTable simulate_registry(const std::string& witness, int length, std::optional<std::pair<double, double>> noise) {
    const Witness& w = registry_witness(witness);
    const Protocol protocol = optimal_protocol(*witness_from_name(witness));
    CorrelationTable table = sequence_probabilities(protocol, length > 0 ? length : w.scenario.length);
    if (noise) table = apply_readout_noise(table, protocol_resolver(protocol), {noise->first, noise->second});
    return table;
}

py::dict report_dict(const CertificationReport& r) {
    py::dict d;
    d["witness"] = r.witness;
    d["value"] = r.value;
    d["halfwidth"] = r.halfwidth;
    d["confidence"] = r.confidence;
    d["qubit_bound"] = r.qubit_bound;
    d["algebraic_max"] = r.algebraic_max;
    d["violation_ratio"] = r.violation_ratio;
    d["qutrit_fraction"] = r.fraction.value;
    d["qutrit_fraction_halfwidth"] = r.fraction_halfwidth;
    d["discard_rate"] = r.discard_rate;
    d["certified"] = r.verdict == Verdict::Certified;
    return d;
}

}  // namespace

PYBIND11_MODULE(_dimwit, m) {
    m.doc() = "Temporal-correlation dimension witnesses";
    m.attr("__version__") = DIMWIT_VERSION;

    // Translators are tried newest first, so the base class goes first.
    py::register_exception<Error>(m, "DimwitError", PyExc_ValueError);
    py::register_exception<GuardExceeded>(m, "GuardExceeded", PyExc_OverflowError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    m.def("witness_names", [] {
        std::vector<std::string> names;
        for (const Witness& w : witness_registry()) names.push_back(w.id);
        return names;
    });

    m.def(
        "simulate",
        [](const std::string& witness, int length, std::optional<std::pair<double, double>> noise) {
            const CorrelationTable table = simulate_registry(witness, length, noise);
            py::dict d;
            const Scenario& sc = table.scenario();
            d["scenario"] = py::make_tuple(sc.length, sc.settings, sc.outcomes);
            d["table"] = table.flat();
            if (sc == registry_witness(witness).scenario) d["value"] = evaluate_witness(registry_witness(witness), table);
            return d;
        },
        py::arg("witness"), py::arg("length") = 0, py::arg("noise") = py::none(),
        "Correlation table of the optimal protocol for a registry witness; flat, first step most significant.");

    m.def(
        "bound",
        [](const std::string& witness, const std::string& method, int restarts, std::uint64_t seed) {
            const Witness& w = registry_witness(witness);
            BoundResult r;
            if (method == "closed") {
                if (w.id != "T") throw DomainError("the closed-form bound exists only for T");
                r = optimize_tee_bound();
            } else if (method == "generic") {
                QubitSearchOptions opt;
                opt.restarts = restarts;
                opt.seed = seed;
                r = optimize_qubit_bound(w, opt);
            } else {
                throw DomainError("method must be 'closed' or 'generic'");
            }
            py::dict d;
            d["value"] = r.value;
            d["method"] = std::string(bound_method_name(r.method));
            d["evaluations"] = r.evaluations;
            if (const auto* q = std::get_if<QubitBoundParams>(&r.argmax)) {
                d["argmax"] = std::vector<double>{q->p, q->q, q->cos_gamma};
            } else {
                const auto& e = std::get<EffectParams>(r.argmax);
                d["argmax"] = std::vector<double>{e.a0, e.b0, e.a1, e.b1, e.cos_gamma};
            }
            return d;
        },
        py::arg("witness"), py::arg("method") = "generic", py::arg("restarts") = 50,
        py::arg("seed") = kDefaultSeed);

    m.def("tee_closed_form", [](double p, double q, double cg) { return tee_closed_form({p, q, cg}); },
          py::arg("p"), py::arg("q"), py::arg("cos_gamma"));

    m.def(
        "algebraic_max",
        [](const std::string& witness) {
            const AlgebraicMax a = algebraic_max(registry_witness(witness));
            return py::make_tuple(a.value, a.maximizers.size());
        },
        py::arg("witness"), "Returns (value, number of maximizing deterministic strategies).");

    m.def(
        "aot_constraint_counts",
        [](int length, int settings, int outcomes) {
            const auto c = aot_constraints({length, settings, outcomes});
            return py::make_tuple(c.size(), independent_constraint_count(c));
        },
        py::arg("length"), py::arg("settings"), py::arg("outcomes"));

    m.def("strategy_count", [](int length, int settings, int outcomes) {
        return strategy_count({length, settings, outcomes});
    });

    m.def(
        "sample",
        [](const std::string& witness, std::uint64_t shots, std::uint64_t seed,
           std::optional<std::pair<double, double>> noise, bool expected) {
            const CorrelationTable table = simulate_registry(witness, 0, noise);
            std::mt19937_64 rng(seed);
            CountsFile f{expected ? expected_counts(table, shots) : sample_counts(table, shots, rng), witness};
            return format_counts(f);
        },
        py::arg("witness"), py::arg("shots") = 1000, py::arg("seed") = kDefaultSeed, py::arg("noise") = py::none(),
        py::arg("expected") = false, "Counts-file text drawn from the simulated optimal protocol.");

    m.def(
        "certify",
        [](const std::string& counts_text, const std::string& witness, double confidence) {
            const CountsFile f = parse_counts(counts_text);
            const std::string id = witness.empty() ? f.witness.value_or("") : witness;
            if (id.empty()) throw DomainError("counts name no witness");
            return report_dict(certify(registry_witness(id), f.counts, ConfidenceSpec{confidence}));
        },
        py::arg("counts_text"), py::arg("witness") = "", py::arg("confidence") = 0.68);

    m.def(
        "aot_test",
        [](const std::string& counts_text, int montecarlo, std::uint64_t seed) {
            const AoTTestResult r = aot_lr_test(parse_counts(counts_text).counts, montecarlo, seed);
            py::dict d;
            d["statistic"] = r.statistic;
            d["dof"] = r.dof;
            d["p_value"] = r.p_value;
            d["sigma"] = r.sigma;
            d["montecarlo_p_value"] = r.montecarlo_p_value ? py::cast(*r.montecarlo_p_value) : py::none();
            return d;
        },
        py::arg("counts_text"), py::arg("montecarlo") = 0, py::arg("seed") = kDefaultSeed);

    m.def(
        "hoeffding_halfwidth",
        [](const std::vector<std::uint64_t>& reps, double confidence) {
            return hoeffding_halfwidth(reps, ConfidenceSpec{confidence});
        },
        py::arg("repetitions"), py::arg("confidence") = 0.68);

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "dimwit");
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs a dimwit command in-process; returns (exit code, stdout, stderr).");
}
