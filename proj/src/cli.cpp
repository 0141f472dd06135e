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

#include "dimwit/cli.hpp"

#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dimwit/bounds.hpp"
#include "dimwit/error.hpp"
#include "dimwit/io.hpp"
#include "dimwit/polytope.hpp"
#include "dimwit/simulator.hpp"
#include "dimwit/stats.hpp"

namespace dimwit::cli {
namespace {

using nlohmann::json;

constexpr const char* kReportFormat = "dimwit-report/1";

std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

json provenance(const std::string& input_name, const std::string& input_text, std::optional<std::uint64_t> seed) {
    json p;
    p["tool"] = "dimwit";
    p["version"] = DIMWIT_VERSION;
    p["input"] = input_name;
    p["input_digest"] = "fnv1a64:" + fnv1a_hex(input_text);
    p["seed"] = seed ? json(*seed) : json(nullptr);
    return p;
}

json report(const std::string& command, json prov, json result) {
    return {{"format", kReportFormat}, {"command", command}, {"provenance", std::move(prov)},
            {"result", std::move(result)}};
}

struct Source {
    std::string name;  // registry id or file path
    std::string text;  // canonical text hashed into provenance
    Protocol protocol;
    std::optional<Witness> witness;
};

Source load_source(const std::string& witness_or_empty, const std::string& protocol_file,
                   const std::string& witness_override) {
    if (!protocol_file.empty()) {
        const std::string text = read_file(protocol_file);
        Source s{protocol_file, text, protocol_from_spec(parse_protocol(text)), std::nullopt};
        const std::string w = !witness_override.empty() ? witness_override : witness_or_empty;
        if (!w.empty()) s.witness = registry_witness(w);
        return s;
    }
    if (witness_or_empty.empty()) throw DomainError("give a witness id (B1..B4, T) or --protocol FILE");
    const Witness& w = registry_witness(witness_or_empty);
    const auto id = *witness_from_name(witness_or_empty);
    const Witness& target = witness_override.empty() ? w : registry_witness(witness_override);
    return {witness_or_empty, format_protocol(optimal_protocol_spec(id)), optimal_protocol(id), target};
}

CorrelationTable simulate_table(const Source& src, int length, const std::vector<double>& noise) {
    CorrelationTable table = sequence_probabilities(src.protocol, length);
    if (!noise.empty()) {
        table = apply_readout_noise(table, protocol_resolver(src.protocol), ReadoutNoise{noise[0], noise[1]});
    }
    return table;
}

int resolve_length(const Source& src, int requested) {
    if (requested > 0) return requested;
    return src.witness ? src.witness->scenario.length : 2;
}

void check_format(const std::string& f) {
    if (f != "text" && f != "machine") throw DomainError("--format must be 'text' or 'machine'");
}

json witness_json(const Witness& w) {
    json terms = json::array();
    for (const WitnessTerm& t : w.terms) {
        terms.push_back({{"settings", format_settings(t.settings)},
                         {"outcomes", format_outcomes(t.outcomes, w.scenario.outcomes)},
                         {"coefficient", t.coefficient}});
    }
    return {{"id", w.id}, {"terms", terms}};
}

std::string strategy_text(const DeterministicStrategy& s) {
    const Scenario& sc = s.scenario();
    std::string out;
    for (int t = 1; t <= sc.length; ++t) {
        std::size_t count = 1;
        for (int i = 0; i < t; ++i) count *= static_cast<std::size_t>(sc.settings);
        out += (t > 1 ? " " : "") + std::string("f") + std::to_string(t) + "[";
        for (std::size_t x = 0; x < count; ++x) {
            const auto prefix = decode_sequence(x, sc.settings, t);
            out += (x ? "," : "") + format_settings(prefix) + "->" + outcome_label(s.outcome(prefix), sc.outcomes);
        }
        out += "]";
    }
    return out;
}

json argmax_json(const BoundResult& r) {
    if (const auto* q = std::get_if<QubitBoundParams>(&r.argmax)) {
        return {{"p", q->p}, {"q", q->q}, {"cos_gamma", q->cos_gamma}};
    }
    const auto& e = std::get<EffectParams>(r.argmax);
    return {{"a0", e.a0}, {"b0", e.b0}, {"a1", e.a1}, {"b1", e.b1}, {"cos_gamma", e.cos_gamma}};
}

std::string argmax_text(const BoundResult& r) {
    if (const auto* q = std::get_if<QubitBoundParams>(&r.argmax)) {
        return "p=" + fixed(q->p) + " q=" + fixed(q->q) + " cos_gamma=" + fixed(q->cos_gamma);
    }
    const auto& e = std::get<EffectParams>(r.argmax);
    return "a0=" + fixed(e.a0) + " b0=" + fixed(e.b0) + " a1=" + fixed(e.a1) + " b1=" + fixed(e.b1) +
           " cos_gamma=" + fixed(e.cos_gamma);
}

Witness load_witness(const std::string& id, const std::string& file) {
    if (!file.empty()) return parse_witness_file(read_file(file));
    if (id.empty()) throw DomainError("give a witness id (B1..B4, T) or --witness-file FILE");
    return registry_witness(id);
}

}  // namespace

Witness parse_witness_file(const std::string& text) {
    std::istringstream in(text);
    Witness w;
    Scenario sc{0, 0, 0};
    std::vector<std::pair<std::string, double>> terms;
    std::set<std::string> seen;
    int n = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++n;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(n) + ": ";
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(where + "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key != "term" && !seen.insert(key).second) throw ParseError(where + "duplicate key '" + key + "'");
        try {
            if (key == "id") {
                w.id = val;
            } else if (key == "length") {
                sc.length = std::stoi(val);
            } else if (key == "settings") {
                sc.settings = std::stoi(val);
            } else if (key == "outcomes") {
                sc.outcomes = std::stoi(val);
            } else if (key == "qubit_bound") {
                w.qubit_bound = std::stod(val);
            } else if (key == "algebraic_max") {
                w.algebraic_max = std::stod(val);
            } else if (key == "term") {
                std::istringstream ts(val);
                std::string seq;
                double coef = 1.0;
                ts >> seq;
                if (!(ts >> coef)) coef = 1.0;
                terms.emplace_back(seq, coef);
            } else {
                throw ParseError(where + "unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw ParseError(where + "invalid number '" + val + "'");
        }
    }
    if (w.id.empty()) throw ParseError("witness file lacks 'id'");
    if (sc.length == 0 || sc.settings == 0 || sc.outcomes == 0) {
        throw ParseError("witness file needs length, settings and outcomes");
    }
    w.scenario = sc;
    for (const auto& [seq, coef] : terms) {
        const auto colon = seq.find(':');
        if (colon == std::string::npos) throw ParseError("term '" + seq + "' lacks ':'");
        w.terms.push_back({parse_settings(seq.substr(0, colon), sc.settings),
                           parse_outcomes(seq.substr(colon + 1), sc.outcomes), coef});
    }
    try {
        w.validate();
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
    return w;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Temporal-correlation dimension witnesses: simulate, bound, certify."};
    app.name("dimwit");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("dimwit ") + DIMWIT_VERSION);

    std::string format = "text";
    std::uint64_t seed = kDefaultSeed;
    std::vector<double> noise;

    // simulate
    auto* sim = app.add_subcommand("simulate", "Correlation table and witness value of a protocol");
    std::string sim_witness, sim_protocol, sim_target;
    int sim_length = 0;
    sim->add_option("id", sim_witness, "Registry witness whose optimal protocol is simulated");
    sim->add_option("--protocol", sim_protocol, "Protocol file instead of a registry protocol");
    sim->add_option("--witness", sim_target, "Witness to evaluate (defaults to the positional one)");
    sim->add_option("--length", sim_length, "Sequence length (defaults to the witness length)");
    sim->add_option("--noise", noise, "Readout fidelities: bright dark")->expected(2);
    sim->add_option("--format", format, "text or machine");

    // bound
    auto* bnd = app.add_subcommand("bound", "Qubit upper bound of a witness");
    std::string bnd_witness, bnd_file, bnd_method = "generic";
    int restarts = 50;
    bnd->add_option("id", bnd_witness, "Registry witness id");
    bnd->add_option("--witness-file", bnd_file, "Witness description file");
    bnd->add_option("--method", bnd_method, "closed (T only) or generic");
    bnd->add_option("--seed", seed, "Seed for random restarts");
    bnd->add_option("--restarts", restarts, "Number of simplex restarts");
    bnd->add_option("--format", format, "text or machine");

    // polytope
    auto* pol = app.add_subcommand("polytope", "Algebraic maximum over deterministic strategies");
    std::string pol_witness, pol_file;
    std::vector<int> pol_scenario;
    pol->add_option("id", pol_witness, "Registry witness id");
    pol->add_option("--witness-file", pol_file, "Witness description file");
    pol->add_option("--scenario", pol_scenario, "length settings outcomes")->expected(3);
    pol->add_option("--format", format, "text or machine");

    // certify
    auto* cer = app.add_subcommand("certify", "Dimension certification report from a counts file");
    std::string cer_file, cer_witness;
    double confidence = 0.68;
    cer->add_option("counts", cer_file, "Counts file")->required();
    cer->add_option("--witness", cer_witness, "Witness id (overrides the file's)");
    cer->add_option("--confidence", confidence, "Confidence level of the Hoeffding interval");
    cer->add_option("--format", format, "text or machine");

    // aot-test
    auto* aot = app.add_subcommand("aot-test", "Likelihood-ratio test of the arrow-of-time constraints");
    std::string aot_file;
    int montecarlo = 0;
    aot->add_option("counts", aot_file, "Counts file")->required();
    aot->add_option("--montecarlo", montecarlo, "Parametric-bootstrap replications");
    aot->add_option("--seed", seed, "Seed for the Monte Carlo replications");
    aot->add_option("--format", format, "text or machine");

    // sample
    auto* smp = app.add_subcommand("sample", "Draw synthetic counts from a simulated protocol");
    std::string smp_witness, smp_protocol, smp_output, smp_target;
    int smp_length = 0;
    std::uint64_t shots = 1000;
    bool expected = false;
    smp->add_option("id", smp_witness, "Registry witness whose optimal protocol is sampled");
    smp->add_option("--protocol", smp_protocol, "Protocol file instead of a registry protocol");
    smp->add_option("--witness", smp_target, "Witness id recorded in the counts file");
    smp->add_option("--length", smp_length, "Sequence length");
    smp->add_option("--noise", noise, "Readout fidelities: bright dark")->expected(2);
    smp->add_option("--shots", shots, "Shots per setting sequence");
    smp->add_option("--seed", seed, "Sampling seed");
    smp->add_flag("--expected", expected, "Write rounded expected counts instead of sampling");
    smp->add_option("-o,--output", smp_output, "Output file (default: standard output)");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        check_format(format);
        const bool machine = format == "machine";
        if (!noise.empty()) ReadoutNoise{noise[0], noise[1]}.validate();

        if (*sim) {
            const Source src = load_source(sim_witness, sim_protocol, sim_target);
            const int length = resolve_length(src, sim_length);
            const CorrelationTable table = simulate_table(src, length, noise);
            // A positional witness only picks the protocol; it is evaluated when
            // the lengths agree. An explicit --witness must match.
            std::optional<double> value;
            if (src.witness && (!sim_target.empty() || src.witness->scenario == table.scenario())) {
                value = evaluate_witness(*src.witness, table);
            }
            if (machine) {
                json rows = json::array();
                const Scenario& sc = table.scenario();
                for (std::size_t x = 0; x < sc.setting_sequences(); ++x) {
                    for (std::size_t a = 0; a < sc.outcome_sequences(); ++a) {
                        rows.push_back({format_settings(decode_sequence(x, sc.settings, sc.length)),
                                        format_outcomes(decode_sequence(a, sc.outcomes, sc.length), sc.outcomes),
                                        table.at(x, a)});
                    }
                }
                json result{{"scenario", {sc.length, sc.settings, sc.outcomes}}, {"table", rows}};
                result["noise"] = noise.empty() ? json(nullptr) : json(noise);
                if (value) result["witness"] = {{"id", src.witness->id}, {"value", *value}};
                out << report("simulate", provenance(src.name, src.text, std::nullopt), result).dump(2) << "\n";
            } else {
                out << format_table(table);
                if (value) out << "witness " << src.witness->id << " = " << fixed(*value) << "\n";
            }
            return kExitOk;
        }

        if (*bnd) {
            const Witness w = load_witness(bnd_witness, bnd_file);
            BoundResult r;
            if (bnd_method == "closed") {
                if (w.id != "T" || !bnd_file.empty()) {
                    throw DomainError("the closed-form bound exists only for the registry witness T");
                }
                r = optimize_tee_bound();
            } else if (bnd_method == "generic") {
                QubitSearchOptions opt;
                opt.restarts = restarts;
                opt.seed = seed;
                r = optimize_qubit_bound(w, opt);
            } else {
                throw DomainError("--method must be 'closed' or 'generic'");
            }
            if (machine) {
                json result{{"witness", w.id},      {"value", r.value},
                            {"argmax", argmax_json(r)}, {"method", bound_method_name(r.method)},
                            {"evaluations", r.evaluations}, {"restarts", r.restarts},
                            {"converged_restarts", r.converged_restarts}};
                json prov = provenance(bnd_file.empty() ? w.id : bnd_file, witness_json(w).dump(),
                                       r.method == BoundMethod::NestedGeneric ? std::optional(seed) : std::nullopt);
                out << report("bound", prov, result).dump(2) << "\n";
            } else {
                out << "witness      " << w.id << "\n";
                out << "value        " << fixed(r.value) << "\n";
                out << "argmax       " << argmax_text(r) << "\n";
                out << "method       " << bound_method_name(r.method) << "\n";
                out << "evaluations  " << r.evaluations << "\n";
                out << "restarts     " << r.restarts << " (" << r.converged_restarts << " converged)\n";
                if (r.method == BoundMethod::NestedGeneric) out << "seed         " << seed << "\n";
            }
            return kExitOk;
        }

        if (*pol) {
            std::optional<Witness> w;
            Scenario sc;
            if (!pol_scenario.empty()) {
                sc = Scenario{pol_scenario[0], pol_scenario[1], pol_scenario[2]};
            } else {
                w = load_witness(pol_witness, pol_file);
                sc = w->scenario;
            }
            const auto constraints = aot_constraints(sc);
            const std::size_t independent = independent_constraint_count(constraints);
            // Counting alone is harmless; only enumeration is guarded.
            std::optional<std::uint64_t> strategies;
            try {
                strategies = strategy_count(sc);
            } catch (const GuardExceeded&) {
                if (w) throw;
            }
            std::optional<AlgebraicMax> best;
            if (w) best = algebraic_max(*w);
            if (machine) {
                json result{{"scenario", {sc.length, sc.settings, sc.outcomes}},
                            {"strategies", strategies ? json(*strategies) : json("exceeds guard")},
                            {"aot_constraints", constraints.size()},
                            {"independent_constraints", independent}};
                if (best) {
                    result["witness"] = w->id;
                    result["algebraic_max"] = best->value;
                    result["maximizers"] = best->maximizers.size();
                    result["first_maximizer"] = strategy_text(best->maximizers.front());
                }
                const std::string name = w ? (pol_file.empty() ? w->id : pol_file) : "scenario";
                out << report("polytope", provenance(name, w ? witness_json(*w).dump() : json(result["scenario"]).dump(),
                                                     std::nullopt),
                              result)
                           .dump(2)
                    << "\n";
            } else {
                out << "scenario                 " << sc.length << ' ' << sc.settings << ' ' << sc.outcomes << "\n";
                out << "strategies               "
                << (strategies ? std::to_string(*strategies) : "> " + std::to_string(kStrategyGuard)) << "\n";
                out << "aot constraints          " << constraints.size() << "\n";
                out << "independent constraints  " << independent << "\n";
                if (best) {
                    out << "witness                  " << w->id << "\n";
                    out << "algebraic max            " << fixed(best->value) << "\n";
                    out << "maximizers               " << best->maximizers.size() << "\n";
                    out << "first maximizer          " << strategy_text(best->maximizers.front()) << "\n";
                }
            }
            return kExitOk;
        }

        if (*cer) {
            const std::string text = read_file(cer_file);
            const CountsFile file = parse_counts(text);
            const std::string id = !cer_witness.empty() ? cer_witness : file.witness.value_or("");
            if (id.empty()) throw DomainError("counts file names no witness; pass --witness");
            const Witness& w = registry_witness(id);
            if (!(w.scenario == file.counts.scenario())) {
                throw DimensionError("witness " + id + " does not match the counts scenario");
            }
            const CertificationReport r = certify(w, file.counts, ConfidenceSpec{confidence});
            const bool ok = r.verdict == Verdict::Certified;
            if (machine) {
                json result{{"witness", r.witness},
                            {"value", r.value},
                            {"halfwidth", r.halfwidth},
                            {"confidence", r.confidence},
                            {"qubit_bound", r.qubit_bound},
                            {"algebraic_max", r.algebraic_max},
                            {"violation_ratio", r.violation_ratio},
                            {"qutrit_fraction", r.fraction.value},
                            {"qutrit_fraction_halfwidth", r.fraction_halfwidth},
                            {"below_bound", r.fraction.below_bound},
                            {"discard_rate", r.discard_rate},
                            {"verdict", ok ? "certified" : "not_certified"}};
                out << report("certify", provenance(cer_file, text, std::nullopt), result).dump(2) << "\n";
            } else {
                const int pct = static_cast<int>(std::lround(100.0 * r.confidence));
                out << "witness           " << r.witness << "\n";
                out << "value             " << fixed(r.value) << " +/- " << fixed(r.halfwidth) << " (" << pct
                    << "% Hoeffding)\n";
                out << "qubit bound       " << fixed(r.qubit_bound) << "\n";
                out << "algebraic max     " << fixed(r.algebraic_max) << "\n";
                out << "violation ratio   " << fixed(r.violation_ratio) << "\n";
                out << "qutrit fraction   " << fixed(r.fraction.value) << " +/- " << fixed(r.fraction_halfwidth)
                    << (r.fraction.below_bound ? " (below qubit bound)" : "") << "\n";
                out << "discard rate      " << fixed(r.discard_rate) << "\n";
                out << "verdict           " << (ok ? "dimension >= 3 certified" : "not certified") << "\n";
            }
            return kExitOk;
        }

        if (*aot) {
            const std::string text = read_file(aot_file);
            const CountsFile file = parse_counts(text);
            const AoTTestResult r = aot_lr_test(file.counts, montecarlo, seed);
            if (machine) {
                json result{{"statistic", r.statistic}, {"dof", r.dof}, {"p_value", r.p_value},
                            {"sigma", std::isfinite(r.sigma) ? json(r.sigma) : json("inf")}};
                if (r.montecarlo_p_value) {
                    result["montecarlo"] = {{"replications", r.montecarlo_replications},
                                            {"p_value", *r.montecarlo_p_value}};
                }
                out << report("aot-test",
                              provenance(aot_file, text, montecarlo > 0 ? std::optional(seed) : std::nullopt),
                              result)
                           .dump(2)
                    << "\n";
            } else {
                out << "statistic   " << fixed(r.statistic) << "\n";
                out << "dof         " << r.dof << "\n";
                out << "p-value     " << r.p_value << "\n";
                out << "sigma       " << (std::isfinite(r.sigma) ? fixed(r.sigma, 3) : std::string("inf")) << "\n";
                if (r.montecarlo_p_value) {
                    out << "monte carlo " << *r.montecarlo_p_value << " (" << r.montecarlo_replications
                        << " replications, seed " << seed << ")\n";
                }
            }
            return kExitOk;
        }

        if (*smp) {
            const Source src = load_source(smp_witness, smp_protocol, smp_target);
            const int length = resolve_length(src, smp_length);
            const CorrelationTable table = simulate_table(src, length, noise);
            if (shots == 0) throw DomainError("--shots must be positive");
            std::mt19937_64 rng(seed);
            CountsFile file{expected ? expected_counts(table, shots) : sample_counts(table, shots, rng),
                            src.witness ? std::optional(src.witness->id) : std::nullopt};
            const std::string text = format_counts(file);
            if (smp_output.empty()) {
                out << text;
            } else {
                write_file(smp_output, text);
            }
            return kExitOk;
        }
    } catch (const GuardExceeded& e) {
        err << "dimwit: " << e.what() << "\n";
        return kExitGuard;
    } catch (const Error& e) {
        err << "dimwit: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace dimwit::cli
