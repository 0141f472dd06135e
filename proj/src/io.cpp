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

#include "dimwit/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "dimwit/error.hpp"

namespace dimwit {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return trim(hash == std::string::npos ? line : line.substr(0, hash));
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

long long parse_int(const std::string& s, const std::string& what) {
    long long v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ParseError("invalid integer for " + what + ": '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    std::uint64_t v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ParseError("invalid count for " + what + ": '" + s + "'");
    return v;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw ParseError("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("invalid number for " + what + ": '" + s + "'");
    }
}

std::string fmt_double(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

struct KeyValue {
    int line;
    std::string key;
    std::string value;
};

std::vector<KeyValue> key_values(const std::string& text) {
    std::vector<KeyValue> out;
    std::istringstream in(text);
    int n = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++n;
        const std::string line = strip_comment(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("line " + std::to_string(n) + ": expected 'key = value'");
        out.push_back({n, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
    }
    return out;
}

}  // namespace

ProtocolSpec parse_protocol(const std::string& text) {
    ProtocolSpec spec;
    spec.settings.clear();
    std::map<int, std::vector<Pulse>> blocks;
    std::map<int, int> brights;
    std::set<std::string> seen;
    for (const KeyValue& kv : key_values(text)) {
        const std::string where = "line " + std::to_string(kv.line) + ": ";
        if (!seen.insert(kv.key).second) throw ParseError(where + "duplicate key '" + kv.key + "'");
        if (kv.key == "dim") {
            spec.dim = static_cast<int>(parse_int(kv.value, "dim"));
        } else if (kv.key == "initial") {
            spec.initial_level = static_cast<int>(parse_int(kv.value, "initial"));
        } else if (kv.key == "phases") {
            const auto toks = split_ws(kv.value);
            if (toks.size() != 4) throw ParseError(where + "phases needs four values");
            spec.phases = {parse_double(toks[0], "phases"), parse_double(toks[1], "phases"),
                           parse_double(toks[2], "phases"), parse_double(toks[3], "phases")};
        } else if (kv.key.rfind("setting.", 0) == 0) {
            const int idx = static_cast<int>(parse_int(kv.key.substr(8), "setting index"));
            std::vector<Pulse> pulses;
            for (const std::string& tok : split_ws(kv.value)) pulses.push_back(pulse_from_name(tok));
            try {
                validate_block(pulses);
            } catch (const DomainError& e) {
                throw ParseError(where + e.what());
            }
            blocks[idx] = std::move(pulses);
        } else if (kv.key.rfind("bright.", 0) == 0) {
            const int idx = static_cast<int>(parse_int(kv.key.substr(7), "bright index"));
            if (kv.value == "+") {
                brights[idx] = 0;
            } else if (kv.value == "-") {
                brights[idx] = 1;
            } else {
                throw ParseError(where + "bright outcome must be '+' or '-'");
            }
        } else {
            throw ParseError(where + "unknown key '" + kv.key + "'");
        }
    }
    if (blocks.empty()) throw ParseError("protocol declares no settings");
    int expected = 0;
    for (const auto& [idx, pulses] : blocks) {
        if (idx != expected++) throw ParseError("settings must be numbered 0, 1, ... without gaps");
        const auto b = brights.find(idx);
        if (b == brights.end()) throw ParseError("setting " + std::to_string(idx) + " lacks a bright outcome");
        spec.settings.push_back({pulses, b->second});
    }
    if (brights.size() != blocks.size()) throw ParseError("bright outcome given for an undeclared setting");
    return spec;
}

std::string format_protocol(const ProtocolSpec& spec) {
    std::ostringstream out;
    out << "dim = " << spec.dim << "\n";
    out << "initial = " << spec.initial_level << "\n";
    out << "phases = " << fmt_double(spec.phases.phi1, 17) << ' ' << fmt_double(spec.phases.phi2, 17) << ' '
        << fmt_double(spec.phases.phi1_idle, 17) << ' ' << fmt_double(spec.phases.phi2_idle, 17) << "\n";
    for (std::size_t i = 0; i < spec.settings.size(); ++i) {
        out << "setting." << i << " =";
        for (Pulse p : spec.settings[i].pulses) out << ' ' << pulse_name(p);
        out << "\n";
        out << "bright." << i << " = " << (spec.settings[i].bright_outcome == 0 ? '+' : '-') << "\n";
    }
    return out.str();
}

std::string format_table(const CorrelationTable& table) {
    const Scenario& sc = table.scenario();
    std::ostringstream out;
    out << "scenario " << sc.length << ' ' << sc.settings << ' ' << sc.outcomes << "\n";
    for (std::size_t x = 0; x < sc.setting_sequences(); ++x) {
        const std::string xs = format_settings(decode_sequence(x, sc.settings, sc.length));
        for (std::size_t a = 0; a < sc.outcome_sequences(); ++a) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.12g", table.at(x, a));
            out << xs << ' ' << format_outcomes(decode_sequence(a, sc.outcomes, sc.length), sc.outcomes) << ' '
                << buf << "\n";
        }
    }
    return out.str();
}

CorrelationTable parse_table(const std::string& text) {
    std::istringstream in(text);
    std::optional<CorrelationTable> table;
    std::vector<bool> filled;
    int n = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++n;
        const std::string line = strip_comment(raw);
        if (line.empty()) continue;
        const auto toks = split_ws(line);
        const std::string where = "line " + std::to_string(n) + ": ";
        if (!table) {
            if (toks.size() != 4 || toks[0] != "scenario") throw ParseError(where + "expected 'scenario L m d'");
            const Scenario sc{static_cast<int>(parse_int(toks[1], "length")),
                              static_cast<int>(parse_int(toks[2], "settings")),
                              static_cast<int>(parse_int(toks[3], "outcomes"))};
            table.emplace(sc);
            filled.assign(sc.cells(), false);
            continue;
        }
        if (toks.size() != 3) throw ParseError(where + "expected 'settings outcomes probability'");
        const Scenario& sc = table->scenario();
        const auto xs = parse_settings(toks[0], sc.settings);
        const auto as = parse_outcomes(toks[1], sc.outcomes);
        if (static_cast<int>(xs.size()) != sc.length || static_cast<int>(as.size()) != sc.length) {
            throw ParseError(where + "sequence length does not match the scenario");
        }
        const std::size_t xi = encode_sequence(xs, sc.settings);
        const std::size_t ai = encode_sequence(as, sc.outcomes);
        const std::size_t flat = table->flat_index(xi, ai);
        if (filled[flat]) throw ParseError(where + "duplicate cell");
        filled[flat] = true;
        table->at(xi, ai) = parse_double(toks[2], "probability");
    }
    if (!table) throw ParseError("empty table");
    return *table;
}

CountsFile parse_counts(const std::string& text) {
    std::istringstream in(text);
    std::map<std::string, std::string> header;
    struct Record {
        int line;
        std::vector<std::string> toks;
    };
    std::vector<Record> records;
    int n = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++n;
        const std::string line = strip_comment(raw);
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(n) + ": ";
        if (line.rfind("record", 0) == 0 && (line.size() == 6 || line[6] == ' ' || line[6] == '\t')) {
            records.push_back({n, split_ws(line.substr(6))});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(where + "expected 'key = value' or a record");
        const std::string key = trim(line.substr(0, eq));
        static const std::set<std::string> allowed{"format", "length", "settings", "outcomes", "witness"};
        if (!allowed.count(key)) throw ParseError(where + "unknown key '" + key + "'");
        if (!header.emplace(key, trim(line.substr(eq + 1))).second) {
            throw ParseError(where + "duplicate key '" + key + "'");
        }
    }
    for (const char* key : {"format", "length", "settings", "outcomes"}) {
        if (!header.count(key)) throw ParseError(std::string("counts file lacks '") + key + "'");
    }
    if (header["format"] != kCountsFormat) {
        throw ParseError("unsupported counts format '" + header["format"] + "'");
    }
    const Scenario sc{static_cast<int>(parse_int(header["length"], "length")),
                      static_cast<int>(parse_int(header["settings"], "settings")),
                      static_cast<int>(parse_int(header["outcomes"], "outcomes"))};
    try {
        sc.validate();
    } catch (const DomainError& e) {
        throw ParseError(std::string("invalid scenario: ") + e.what());
    }
    CountsFile file{CountsTable(sc), std::nullopt};
    if (header.count("witness")) file.witness = header["witness"];

    std::vector<bool> seen(sc.setting_sequences(), false);
    for (const Record& r : records) {
        const std::string where = "line " + std::to_string(r.line) + ": ";
        if (r.toks.empty()) throw ParseError(where + "record needs a setting sequence");
        const auto xs = parse_settings(r.toks[0], sc.settings);
        if (static_cast<int>(xs.size()) != sc.length) throw ParseError(where + "setting sequence has wrong length");
        const std::size_t xi = encode_sequence(xs, sc.settings);
        if (seen[xi]) throw ParseError(where + "duplicate record for " + r.toks[0]);
        seen[xi] = true;
        std::optional<std::uint64_t> declared_n;
        std::set<std::size_t> cells;
        for (std::size_t i = 1; i < r.toks.size(); ++i) {
            const auto eq = r.toks[i].find('=');
            if (eq == std::string::npos) throw ParseError(where + "expected field=value, got '" + r.toks[i] + "'");
            const std::string key = r.toks[i].substr(0, eq);
            const std::string val = r.toks[i].substr(eq + 1);
            if (key == "n") {
                declared_n = parse_u64(val, "n");
            } else if (key == "discarded") {
                file.counts.set_discarded(xi, parse_u64(val, "discarded"));
            } else {
                std::vector<int> as;
                try {
                    as = parse_outcomes(key, sc.outcomes);
                } catch (const ParseError&) {
                    throw ParseError(where + "unknown record field '" + key + "'");
                }
                if (static_cast<int>(as.size()) != sc.length) {
                    throw ParseError(where + "outcome sequence '" + key + "' has wrong length");
                }
                const std::size_t ai = encode_sequence(as, sc.outcomes);
                if (!cells.insert(ai).second) throw ParseError(where + "duplicate outcome '" + key + "'");
                file.counts.set_count(xi, ai, parse_u64(val, key));
            }
        }
        if (!declared_n) throw ParseError(where + "record lacks n=");
        if (*declared_n != file.counts.repetitions(xi)) {
            throw ParseError(where + "outcome counts sum to " + std::to_string(file.counts.repetitions(xi)) +
                             " but n=" + std::to_string(*declared_n));
        }
    }
    return file;
}

std::string format_counts(const CountsFile& file) {
    const Scenario& sc = file.counts.scenario();
    std::ostringstream out;
    out << "format = " << kCountsFormat << "\n";
    out << "length = " << sc.length << "\n";
    out << "settings = " << sc.settings << "\n";
    out << "outcomes = " << sc.outcomes << "\n";
    if (file.witness) out << "witness = " << *file.witness << "\n";
    for (std::size_t x = 0; x < sc.setting_sequences(); ++x) {
        out << "record " << format_settings(decode_sequence(x, sc.settings, sc.length))
            << " n=" << file.counts.repetitions(x) << " discarded=" << file.counts.discarded(x);
        for (std::size_t a = 0; a < sc.outcome_sequences(); ++a) {
            out << ' ' << format_outcomes(decode_sequence(a, sc.outcomes, sc.length), sc.outcomes) << '='
                << file.counts.count(x, a);
        }
        out << "\n";
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << contents;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace dimwit
