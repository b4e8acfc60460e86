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

#include "astopo/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <istream>
#include <string>
#include <unordered_map>

#include "astopo/edge_list.hpp"
#include "astopo/error.hpp"

namespace astopo {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::optional<AsSet> parse_set(std::string_view body) {
  AsSet set;
  std::size_t i = 0;
  while (i < body.size()) {
    while (i < body.size() && (is_space(body[i]) || body[i] == ',')) ++i;
    if (i == body.size()) break;
    std::size_t j = i;
    while (j < body.size() && !is_space(body[j]) && body[j] != ',') ++j;
    auto asn = parse_asn(body.substr(i, j - i));
    if (!asn) return std::nullopt;
    set.members.push_back(*asn);
    i = j;
  }
  if (set.members.empty()) return std::nullopt;
  return set;
}

std::vector<Asn> members_of(const PathToken& token) {
  if (const Asn* asn = std::get_if<Asn>(&token)) return {*asn};
  return std::get<AsSet>(token).members;
}

}  // namespace

std::optional<AspathRecord> parse_aspath(std::string_view line) {
  if (auto bar = line.find('|'); bar != std::string_view::npos) {
    line.remove_prefix(bar + 1);
  }
  AspathRecord record;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size()) break;
    if (line[i] == '{') {
      const auto close = line.find('}', i);
      if (close == std::string_view::npos) return std::nullopt;
      auto set = parse_set(line.substr(i + 1, close - i - 1));
      if (!set) return std::nullopt;
      record.tokens.emplace_back(std::move(*set));
      i = close + 1;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    auto asn = parse_asn(line.substr(i, j - i));
    if (!asn) return std::nullopt;
    record.tokens.emplace_back(*asn);
    i = j;
  }
  return record;
}

bool is_private_asn(Asn asn) {
  return (asn >= 64512u && asn <= 65534u) ||
         (asn >= 4200000000u && asn <= 4294967294u);
}

ParseStats& ParseStats::operator+=(const ParseStats& other) {
  lines += other.lines;
  rejected_lines += other.rejected_lines;
  skipped_set_pairs += other.skipped_set_pairs;
  private_pairs += other.private_pairs;
  self_loops += other.self_loops;
  return *this;
}

ParsedPaths parse_aspath_stream(std::istream& in, const ParseOptions& options) {
  ParsedPaths out;
  std::string line;
  auto emit = [&](Asn a, Asn b) {
    if (options.filter_private && (is_private_asn(a) || is_private_asn(b))) {
      ++out.stats.private_pairs;
      return;
    }
    if (a == b) ++out.stats.self_loops;
    out.observations.push_back({a, b});
  };
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    ++out.stats.lines;
    auto record = parse_aspath(line);
    if (!record) {
      ++out.stats.rejected_lines;
      continue;
    }
    const auto& tokens = record->tokens;
    for (std::size_t k = 1; k < tokens.size(); ++k) {
      const bool plain = std::holds_alternative<Asn>(tokens[k - 1]) &&
                         std::holds_alternative<Asn>(tokens[k]);
      if (plain) {
        emit(std::get<Asn>(tokens[k - 1]), std::get<Asn>(tokens[k]));
      } else if (options.expand_sets) {
        for (Asn a : members_of(tokens[k - 1])) {
          for (Asn b : members_of(tokens[k])) emit(a, b);
        }
      } else {
        ++out.stats.skipped_set_pairs;
      }
    }
  }
  return out;
}

MonthStamp MonthStamp::parse(std::string_view text) {
  MonthStamp stamp;
  const bool shape = text.size() == 7 && text[4] == '-' &&
                     std::all_of(text.begin(), text.begin() + 4, ::isdigit) &&
                     std::isdigit(static_cast<unsigned char>(text[5])) &&
                     std::isdigit(static_cast<unsigned char>(text[6]));
  if (shape) {
    std::from_chars(text.data(), text.data() + 4, stamp.year);
    std::from_chars(text.data() + 5, text.data() + 7, stamp.month);
  }
  if (!shape || stamp.month < 1 || stamp.month > 12) {
    throw ParseError("invalid month stamp '" + std::string(text) + "', expected YYYY-MM");
  }
  return stamp;
}

std::string MonthStamp::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

MonthObservations compile_month(std::span<std::istream* const> streams,
                                MonthStamp month, const ParseOptions& options) {
  if (streams.empty()) throw EmptyInputError("no dump streams for " + month.str());
  MonthObservations out{month, {}, {}};
  for (std::istream* stream : streams) {
    auto parsed = parse_aspath_stream(*stream, options);
    out.observations.insert(out.observations.end(), parsed.observations.begin(),
                            parsed.observations.end());
    out.stats += parsed.stats;
  }
  return out;
}

Snapshot Snapshot::from_observations(std::span<const EdgeObservation> observations) {
  Snapshot s;
  for (const auto& obs : observations) {
    s.nodes.push_back(obs.a);
    s.nodes.push_back(obs.b);
    if (!obs.is_self_loop()) s.edges.push_back(canonical(obs.a, obs.b));
  }
  std::sort(s.edges.begin(), s.edges.end());
  s.edges.erase(std::unique(s.edges.begin(), s.edges.end()), s.edges.end());
  std::sort(s.nodes.begin(), s.nodes.end());
  s.nodes.erase(std::unique(s.nodes.begin(), s.nodes.end()), s.nodes.end());
  return s;
}

Snapshot Snapshot::from_graph(const AsGraph& g) {
  Snapshot s;
  s.edges = g.edges();
  s.nodes.assign(g.asns().begin(), g.asns().end());
  return s;
}

void SnapshotSeries::add_month(MonthStamp month, Snapshot snapshot) {
  if (months_.contains(month)) {
    throw ConfigError("month " + month.str() + " already present in series");
  }
  months_.emplace(month, std::move(snapshot));
}

void SnapshotSeries::add_month(MonthStamp month,
                               std::span<const EdgeObservation> observations) {
  add_month(month, Snapshot::from_observations(observations));
}

const Snapshot& SnapshotSeries::at(MonthStamp month) const {
  auto it = months_.find(month);
  if (it == months_.end()) throw ConfigError("month " + month.str() + " not in series");
  return it->second;
}

std::map<Asn, Lifetime> SnapshotSeries::node_lifetimes() const {
  std::map<Asn, Lifetime> out;
  for (const auto& [month, snap] : months_) {
    for (Asn asn : snap.nodes) {
      auto [it, inserted] = out.try_emplace(asn, Lifetime{month, month});
      if (!inserted) it->second.last = month;
    }
  }
  return out;
}

std::map<AsnEdge, Lifetime> SnapshotSeries::edge_lifetimes() const {
  std::map<AsnEdge, Lifetime> out;
  for (const auto& [month, snap] : months_) {
    for (const auto& e : snap.edges) {
      auto [it, inserted] = out.try_emplace(e, Lifetime{month, month});
      if (!inserted) it->second.last = month;
    }
  }
  return out;
}

AsGraph SnapshotSeries::graph(MonthStamp month) const {
  return AsGraph::from_edges(at(month).edges);
}

std::vector<Asn> SnapshotSeries::isolated_nodes(MonthStamp month) const {
  const Snapshot& snap = at(month);
  std::vector<Asn> endpoints;
  endpoints.reserve(snap.edges.size() * 2);
  for (const auto& [a, b] : snap.edges) {
    endpoints.push_back(a);
    endpoints.push_back(b);
  }
  std::sort(endpoints.begin(), endpoints.end());
  endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());
  std::vector<Asn> isolated;
  std::set_difference(snap.nodes.begin(), snap.nodes.end(), endpoints.begin(),
                      endpoints.end(), std::back_inserter(isolated));
  return isolated;
}

namespace {

struct EdgeHash {
  std::size_t operator()(const AsnEdge& e) const {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(e.first) << 32) | e.second);
  }
};

// First and last positional month index of each key.
template <typename Key, typename Hash, typename Items>
std::unordered_map<Key, std::pair<std::size_t, std::size_t>, Hash> spans_of(
    const std::vector<const Snapshot*>& snaps, Items items) {
  std::unordered_map<Key, std::pair<std::size_t, std::size_t>, Hash> spans;
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    for (const Key& key : items(*snaps[i])) {
      auto [it, inserted] = spans.try_emplace(key, i, i);
      if (!inserted) it->second.second = i;
    }
  }
  return spans;
}

}  // namespace

SnapshotSeries fill_series(const SnapshotSeries& series) {
  std::vector<MonthStamp> stamps;
  std::vector<const Snapshot*> snaps;
  for (const auto& [month, snap] : series.months()) {
    stamps.push_back(month);
    snaps.push_back(&snap);
  }
  auto edge_spans = spans_of<AsnEdge, EdgeHash>(
      snaps, [](const Snapshot& s) -> const std::vector<AsnEdge>& { return s.edges; });
  auto node_spans = spans_of<Asn, std::hash<Asn>>(
      snaps, [](const Snapshot& s) -> const std::vector<Asn>& { return s.nodes; });

  std::vector<Snapshot> out(stamps.size());
  for (const auto& [edge, span] : edge_spans) {
    for (std::size_t i = span.first; i <= span.second; ++i) out[i].edges.push_back(edge);
  }
  for (const auto& [asn, span] : node_spans) {
    for (std::size_t i = span.first; i <= span.second; ++i) out[i].nodes.push_back(asn);
  }
  SnapshotSeries filled;
  for (std::size_t i = 0; i < stamps.size(); ++i) {
    auto& s = out[i];
    std::sort(s.edges.begin(), s.edges.end());
    std::sort(s.nodes.begin(), s.nodes.end());
    filled.add_month(stamps[i], std::move(s));
  }
  filled.set_filled(true);
  return filled;
}

std::vector<SeriesCount> series_counts(const SnapshotSeries& series) {
  std::vector<SeriesCount> out;
  for (const auto& [month, snap] : series.months()) {
    const auto isolated = series.isolated_nodes(month).size();
    out.push_back({month, snap.nodes.size() - isolated, snap.edges.size(), isolated});
  }
  return out;
}

}  // namespace astopo
