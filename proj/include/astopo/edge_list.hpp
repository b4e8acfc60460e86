// Copyright 2026 The astopo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>

#include "astopo/graph.hpp"

namespace astopo {

// Edge-list text: one edge per line as two decimal ASNs separated by
// whitespace; '#' starts a comment line; blank lines are skipped. Self-loop
// lines are accepted and dropped.
AsGraph read_edge_list(std::istream& in);
AsGraph read_edge_list(const std::filesystem::path& path);

// Writes each edge once (a < b), lexicographically sorted.
void write_edge_list(std::ostream& out, const AsGraph& g);
void write_edge_list(const std::filesystem::path& path, const AsGraph& g);

// Strict decimal ASN parse; nullopt for anything else (signs, overflow,
// trailing junk).
std::optional<Asn> parse_asn(std::string_view token);

}  // namespace astopo
