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

#include <random>

#include "doctest.h"
#include "dimwit/error.hpp"
#include "dimwit/io.hpp"
#include "dimwit/simulator.hpp"

using namespace dimwit;

namespace {

const char* kB3Protocol = R"(# B3 settings
dim = 3
initial = 0
setting.0 = I D C P0 Pi01
bright.0 = -
setting.1 = Pi01 D C P0 Pi02
bright.1 = +
)";

const char* kCounts = R"(format = dimwit-counts/1
length = 2
settings = 2
outcomes = 2
witness = B1
record 00 n=10 discarded=1 ++=7 +-=3
record 01 n=10 +-=10
record 10 n=10 +-=10
record 11 n=10 ++=10
)";

std::string replace(std::string s, const std::string& from, const std::string& to) {
    const auto i = s.find(from);
    REQUIRE(i != std::string::npos);
    return s.replace(i, from.size(), to);
}

}  // namespace

TEST_CASE("protocol files parse to the registry protocol") {
    const ProtocolSpec spec = parse_protocol(kB3Protocol);
    const ProtocolSpec reg = optimal_protocol_spec(WitnessId::B3);
    CHECK(spec.settings == reg.settings);
    CHECK(spec.dim == 3);
}

TEST_CASE("protocol round trip preserves the simulated table") {
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> phase(-3, 3);
    for (const Witness& w : witness_registry()) {
        ProtocolSpec spec = optimal_protocol_spec(*witness_from_name(w.id));
        spec.phases = {phase(rng), phase(rng), phase(rng), phase(rng)};
        const ProtocolSpec back = parse_protocol(format_protocol(spec));
        CHECK(back.settings == spec.settings);
        CHECK(back.phases.phi1 == spec.phases.phi1);
        CHECK(back.phases.phi2_idle == spec.phases.phi2_idle);
        CHECK(format_protocol(back) == format_protocol(spec));
    }
}

TEST_CASE("protocol parse errors") {
    CHECK_THROWS_AS(parse_protocol(""), ParseError);
    CHECK_THROWS_AS(parse_protocol(replace(kB3Protocol, "Pi01\nbright.0", "Pi03\nbright.0")), ParseError);
    CHECK_THROWS_AS(parse_protocol(replace(kB3Protocol, "bright.1 = +", "bright.1 = x")), ParseError);
    CHECK_THROWS_AS(parse_protocol(replace(kB3Protocol, "setting.1", "setting.2")), ParseError);
    CHECK_THROWS_AS(parse_protocol(replace(kB3Protocol, "dim = 3", "colour = 3")), ParseError);
    CHECK_THROWS_AS(parse_protocol(std::string(kB3Protocol) + "dim = 3\n"), ParseError);
    CHECK_THROWS_AS(parse_protocol(replace(kB3Protocol, "I D C P0", "I C D P0")), ParseError);
}

TEST_CASE("table round trip") {
    const Protocol p = optimal_protocol(WitnessId::T);
    const CorrelationTable t =
        apply_readout_noise(sequence_probabilities(p, 3), protocol_resolver(p), ReadoutNoise{});
    const CorrelationTable back = parse_table(format_table(t));
    CHECK(back.scenario() == t.scenario());
    for (std::size_t i = 0; i < t.flat().size(); ++i) CHECK(back.flat()[i] == doctest::Approx(t.flat()[i]).epsilon(1e-11));
    CHECK_THROWS_AS(parse_table("scenario 2 2 2\n00 ++ 1\n00 ++ 0\n"), ParseError);
}

TEST_CASE("counts files") {
    const CountsFile f = parse_counts(kCounts);
    CHECK(f.witness == "B1");
    CHECK(f.counts.count(0, 0) == 7);
    CHECK(f.counts.count(0, 3) == 0);  // omitted cells are zero
    CHECK(f.counts.discarded(0) == 1);
    CHECK(f.counts.repetitions(3) == 10);
    const CountsFile back = parse_counts(format_counts(f));
    CHECK(back.counts.flat() == f.counts.flat());
    CHECK(back.counts.discarded(0) == 1);
}

TEST_CASE("counts parse errors name the problem") {
    const std::string ok = kCounts;
    const std::vector<std::string> bad = {
        replace(ok, "dimwit-counts/1", "dimwit-counts/9"),
        replace(ok, "++=7", "++=6"),                // sum differs from n
        replace(ok, "++=7", "++=-7"),               // negative count
        replace(ok, "++=7", "+++=7"),               // wrong length
        replace(ok, "record 01", "record 00"),      // duplicate record
        replace(ok, "record 01", "record 02"),      // bad setting
        replace(ok, "witness = B1", "widget = B1"), // unknown key
        replace(ok, "length = 2\n", ""),            // missing key
        replace(ok, " n=10 +-=10", " +-=10"),       // missing n
        replace(ok, "++=7", "++=seven"),
    };
    for (const std::string& text : bad) CHECK_THROWS_AS(parse_counts(text), ParseError);
}

TEST_CASE("digest is stable") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
