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

#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "dimwit/cli.hpp"
#include "dimwit/error.hpp"
#include "dimwit/io.hpp"

using namespace dimwit;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "dimwit");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("dimwit_test_" + name)).string();
}

}  // namespace

TEST_CASE("simulate prints the table and the witness value") {
    const Run r = run({"simulate", "B1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("witness B1 = 4.000000") != std::string::npos);
    CHECK(run({"simulate", "T", "--noise", "0.96", "0.98"}).out.find("witness T = 7.226112") != std::string::npos);
}

TEST_CASE("machine output is JSON with provenance") {
    const Run r = run({"bound", "T", "--method", "closed", "--format", "machine"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["format"] == "dimwit-report/1");
    CHECK(j["result"]["method"] == "closed_form");
    CHECK(std::abs(j["result"]["value"].get<double>() - 5.226) < 0.002);
    CHECK(j["provenance"]["version"] == DIMWIT_VERSION);
    // Same input, same report.
    CHECK(run({"bound", "T", "--method", "closed", "--format", "machine"}).out == r.out);
}

TEST_CASE("sample then certify and test") {
    const std::string path = temp_path("b1_counts.txt");
    REQUIRE(run({"sample", "B1", "--noise", "0.96", "0.98", "--shots", "1000", "-o", path}).code == 0);
    const Run c = run({"certify", path});
    CHECK(c.code == 0);
    CHECK(c.out.find("dimension >= 3 certified") != std::string::npos);
    const Run a = run({"aot-test", path, "--format", "machine"});
    CHECK(a.code == 0);
    CHECK(nlohmann::json::parse(a.out)["result"]["dof"] == 2);
    std::filesystem::remove(path);
}

TEST_CASE("protocol files drive the simulator") {
    const std::string path = temp_path("t.proto");
    write_file(path, format_protocol(optimal_protocol_spec(WitnessId::T)));
    const Run r = run({"simulate", "--protocol", path, "--witness", "T"});
    CHECK(r.code == 0);
    CHECK(r.out.find("witness T = 8.000000") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("polytope subcommand") {
    const Run r = run({"polytope", "T"});
    CHECK(r.code == 0);
    CHECK(r.out.find("strategies               16384") != std::string::npos);
    CHECK(r.out.find("independent constraints  14") != std::string::npos);
    CHECK(r.out.find("algebraic max            8.000000") != std::string::npos);
}

TEST_CASE("witness files") {
    const Witness w = cli::parse_witness_file("id = W\nlength = 2\nsettings = 2\noutcomes = 2\nterm = 00:++\nterm = 11:-- 0.5\n");
    CHECK(w.terms.size() == 2);
    CHECK(w.terms[1].coefficient == 0.5);
    CHECK_THROWS_AS(cli::parse_witness_file("id = W\nlength = 2\nsettings = 2\noutcomes = 2\nterm = 0:++\n"), ParseError);
    CHECK_THROWS_AS(cli::parse_witness_file("length = 2\n"), ParseError);
    const std::string path = temp_path("w.txt");
    write_file(path, "id = W\nlength = 2\nsettings = 2\noutcomes = 2\nterm = 00:++\nterm = 01:+-\nterm = 10:+-\nterm = 11:++\n");
    const Run r = run({"bound", "--witness-file", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("value        3.000000") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::kExitInput);
    CHECK(run({"simulate", "B9"}).code == cli::kExitInput);
    CHECK(run({"certify", "/nonexistent/counts"}).code == cli::kExitInput);
    CHECK(run({"bound", "B1", "--method", "closed"}).code == cli::kExitInput);
    CHECK(run({"simulate", "B1", "--format", "xml"}).code == cli::kExitInput);
    CHECK(run({"simulate", "B1", "--length", "12"}).code == cli::kExitGuard);
    CHECK(run({"polytope", "--scenario", "5", "3", "3"}).code == cli::kExitOk);
    const Run g = run({"polytope", "--witness-file", "/nonexistent"});
    CHECK(g.code == cli::kExitInput);
    CHECK(run({"--help"}).code == cli::kExitOk);
}
