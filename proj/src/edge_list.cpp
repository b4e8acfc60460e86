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

#include "astopo/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "astopo/error.hpp"

namespace astopo {

std::optional<Asn> parse_asn(std::string_view token) {
  if (token.empty()) return std::nullopt;
  Asn value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

AsGraph read_edge_list(std::istream& in) {
  std::vector<AsnEdge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    fields >> a >> b;
    auto pa = parse_asn(a), pb = parse_asn(b);
    if (!pa || !pb || (fields >> extra)) {
      throw ParseError("edge list line " + std::to_string(line_no) +
                       ": expected two decimal ASNs");
    }
    edges.emplace_back(*pa, *pb);
  }
  return AsGraph::from_edges(edges);
}

AsGraph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list " + path.string());
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const AsGraph& g) {
  for (const auto& [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

void write_edge_list(const std::filesystem::path& path, const AsGraph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_edge_list(out, g);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace astopo
