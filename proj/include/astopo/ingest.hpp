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

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "astopo/graph.hpp"

namespace astopo {

// ---------------------------------------------------------------------------
// ASPATH parsing
// ---------------------------------------------------------------------------

// A brace-delimited AS-set produced by route aggregation.
struct AsSet {
  std::vector<Asn> members;
  friend bool operator==(const AsSet&, const AsSet&) = default;
};

using PathToken = std::variant<Asn, AsSet>;

struct AspathRecord {
  std::vector<PathToken> tokens;
};

// Parses one path line. Returns nullopt when the line must be rejected
// (non-numeric token, malformed set). Blank lines yield an empty record.
// Anything up to and including the first '|' is discarded.
std::optional<AspathRecord> parse_aspath(std::string_view line);

bool is_private_asn(Asn asn);

struct ParseOptions {
  // Expand AS-set members into adjacencies instead of skipping the pairs.
  bool expand_sets = false;
  // Drop pairs touching 64512-65534 or 4200000000-4294967294.
  bool filter_private = false;
};

struct ParseStats {
  std::size_t lines = 0;
  std::size_t rejected_lines = 0;
  std::size_t skipped_set_pairs = 0;
  std::size_t private_pairs = 0;
  std::size_t self_loops = 0;

  ParseStats& operator+=(const ParseStats& other);
};

struct ParsedPaths {
  std::vector<EdgeObservation> observations;
  ParseStats stats;
};

/// One path per line; every adjacent pair of plain ASNs becomes an
/// observation, prepending included (those are self-loops).
ParsedPaths parse_aspath_stream(std::istream& in, const ParseOptions& options = {});

// ---------------------------------------------------------------------------
// Monthly snapshots
// ---------------------------------------------------------------------------

struct MonthStamp {
  int year = 0;
  int month = 1;  // 1..12

  // "YYYY-MM"; throws ParseError on anything else.
  static MonthStamp parse(std::string_view text);
  std::string str() const;
  // Months since year 0, for distance arithmetic.
  int ordinal() const { return year * 12 + (month - 1); }

  auto operator<=>(const MonthStamp&) const = default;
};

struct MonthObservations {
  MonthStamp month;
  std::vector<EdgeObservation> observations;
  ParseStats stats;
};

/// Multiset union of every stream's observations under one month. Throws
/// EmptyInputError for an empty stream list.
MonthObservations compile_month(std::span<std::istream* const> streams,
                                MonthStamp month, const ParseOptions& options = {});

// Deduplicated content of one month: simple edges plus every node observed
// (nodes seen only in self-loops, or carried by node fill, have no edge).
struct Snapshot {
  std::vector<AsnEdge> edges;  // canonical, sorted, unique
  std::vector<Asn> nodes;      // sorted, unique, superset of edge endpoints

  static Snapshot from_observations(std::span<const EdgeObservation> observations);
  static Snapshot from_graph(const AsGraph& g);
  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

struct Lifetime {
  MonthStamp first;
  MonthStamp last;
  friend bool operator==(const Lifetime&, const Lifetime&) = default;
};

/// Date-ordered monthly observations. Months need not be contiguous; fill
/// works over the months present.
class SnapshotSeries {
 public:
  // Throws ConfigError if the month is already present.
  void add_month(MonthStamp month, Snapshot snapshot);
  void add_month(MonthStamp month, std::span<const EdgeObservation> observations);

  const std::map<MonthStamp, Snapshot>& months() const { return months_; }
  std::size_t size() const { return months_.size(); }
  bool empty() const { return months_.empty(); }
  const Snapshot& at(MonthStamp month) const;

  bool filled() const { return filled_; }
  void set_filled(bool filled) { filled_ = filled; }

  std::map<Asn, Lifetime> node_lifetimes() const;
  std::map<AsnEdge, Lifetime> edge_lifetimes() const;

  // Simple graph of one month (nodes without edges are left out).
  AsGraph graph(MonthStamp month) const;
  // Nodes present in the month but incident to no edge.
  std::vector<Asn> isolated_nodes(MonthStamp month) const;

  friend bool operator==(const SnapshotSeries&, const SnapshotSeries&) = default;

 private:
  std::map<MonthStamp, Snapshot> months_;
  bool filled_ = false;
};

/// Every node and edge is made present in each month between its first and
/// last appearance, inclusive. Idempotent.
SnapshotSeries fill_series(const SnapshotSeries& series);

struct SeriesCount {
  MonthStamp month;
  std::size_t nodes = 0;  // nodes with at least one edge
  std::size_t edges = 0;
  std::size_t isolated_nodes = 0;
};

std::vector<SeriesCount> series_counts(const SnapshotSeries& series);

// ---------------------------------------------------------------------------
// Snapshot index: JSON document {"filled": bool, "months": {"YYYY-MM":
// {"path": "<edge list, relative to the index>", ...stats}}}
// ---------------------------------------------------------------------------

struct IndexEntry {
  std::string path;
  std::optional<ParseStats> stats;
};

struct SnapshotIndex {
  bool filled = false;
  std::map<MonthStamp, IndexEntry> months;

  static SnapshotIndex load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

/// Reads every edge list named by the index into a series. Paths are
/// resolved against the index file's directory.
SnapshotSeries load_series(const std::filesystem::path& index_path);

}  // namespace astopo
