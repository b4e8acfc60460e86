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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace astopo {

using Asn = std::uint32_t;
using NodeIndex = std::uint32_t;

// One adjacent ASN pair taken from a path. Unordered; a == b is a
// self-loop observation (path prepending).
struct EdgeObservation {
  Asn a = 0;
  Asn b = 0;

  bool is_self_loop() const { return a == b; }
  friend bool operator==(const EdgeObservation&, const EdgeObservation&) = default;
};

// Canonical undirected edge with first < second.
using AsnEdge = std::pair<Asn, Asn>;

inline AsnEdge canonical(Asn a, Asn b) {
  return a < b ? AsnEdge{a, b} : AsnEdge{b, a};
}

/// Immutable simple undirected graph in compressed adjacency form.
///
/// Nodes are stored in ascending ASN order, so internal indices are dense,
/// deterministic, and independent of the order edges were supplied in.
/// Every adjacency run is sorted, which makes has_edge() a binary search.
class AsGraph {
 public:
  AsGraph() = default;

  /// Builds from ASN pairs. Duplicates (in either orientation) collapse and
  /// self-loops are dropped. `extra_nodes` adds nodes that may have no edges.
  static AsGraph from_edges(std::span<const AsnEdge> edges,
                            std::span<const Asn> extra_nodes = {});

  std::size_t node_count() const { return asns_.size(); }
  std::size_t edge_count() const { return targets_.size() / 2; }
  bool empty() const { return asns_.empty(); }

  Asn asn(NodeIndex v) const { return asns_[v]; }
  std::span<const Asn> asns() const { return asns_; }
  std::optional<NodeIndex> index_of(Asn asn) const;

  std::span<const NodeIndex> neighbors(NodeIndex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeIndex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeIndex u, NodeIndex v) const;

  /// All edges as ASN pairs (a < b), lexicographically sorted.
  std::vector<AsnEdge> edges() const;

  /// Subgraph induced by `nodes` (internal indices, any order).
  AsGraph induced(std::span<const NodeIndex> nodes) const;

  friend bool operator==(const AsGraph&, const AsGraph&) = default;

 private:
  std::vector<Asn> asns_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeIndex> targets_;
};

struct BuildResult {
  AsGraph graph;
  // Observations with a == b, dropped from adjacency.
  std::size_t self_loop_observations = 0;
  // Distinct ASNs seen in self-loop observations; filled only when
  // keep_self_loops is set.
  std::vector<Asn> self_loop_asns;
};

/// Deduplicates an observation multiset into a simple graph. Throws
/// EmptyInputError when nothing remains once self-loops are dropped.
BuildResult build_graph(std::span<const EdgeObservation> observations,
                        bool keep_self_loops = false);

/// Connected components as lists of internal indices, each list sorted.
std::vector<std::vector<NodeIndex>> connected_components(const AsGraph& g);

/// Largest component; equal sizes resolve to the one holding the smallest
/// ASN.
AsGraph largest_connected_component(const AsGraph& g);

bool is_connected(const AsGraph& g);

std::vector<std::uint32_t> degrees(const AsGraph& g);

}  // namespace astopo
