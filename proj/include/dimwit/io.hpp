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

#include <iosfwd>
#include <optional>
#include <string>

#include "dimwit/protocols.hpp"
#include "dimwit/stats.hpp"
#include "dimwit/table.hpp"

namespace dimwit {

// Protocol files are "key = value" lines; '#' starts a comment.
//
//   dim = 3
//   initial = 0
//   phases = 0 0 0 0          # phi1 phi2 phi1' phi2' (optional)
//   setting.0 = Pi02 D C P0 Pi01
//   bright.0 = +
//   setting.1 = Pi01 D C P0 Pi02
//   bright.1 = +
ProtocolSpec parse_protocol(const std::string& text);
std::string format_protocol(const ProtocolSpec& spec);

// Correlation tables: a scenario header followed by one row per cell.
//
//   scenario 2 2 2            # length settings outcomes
//   00 ++ 1.00000000000
//   ...
std::string format_table(const CorrelationTable& table);
CorrelationTable parse_table(const std::string& text);

// Counts files (format dimwit-counts/1):
//
//   format = dimwit-counts/1
//   length = 2
//   settings = 2
//   outcomes = 2
//   witness = B1                                  # optional
//   record 00 n=1000 discarded=4 ++=912 +-=88     # omitted cells are 0
struct CountsFile {
    CountsTable counts;
    std::optional<std::string> witness;
};

inline constexpr const char* kCountsFormat = "dimwit-counts/1";

CountsFile parse_counts(const std::string& text);
std::string format_counts(const CountsFile& file);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// 64-bit FNV-1a digest, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace dimwit
