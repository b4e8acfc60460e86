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
#include <vector>

#include "astopo/graph.hpp"

namespace astopo {

/// Shortest-path betweenness, exact (Brandes pair-dependency accumulation
/// over all shortest paths). Endpoints are excluded and each unordered pair
/// is counted once. Normalized by (n-1)(n-2)/2; graphs with n < 3 get zeros.
std::vector<double> betweenness(const AsGraph& g, unsigned jobs = 1);
std::vector<double> betweenness_raw(const AsGraph& g, unsigned jobs = 1);

struct PageRankOptions {
  double damping = 0.85;
  // L1 distance between successive iterates.
  double tolerance = 1e-10;
  int max_iterations = 10000;
};

/// Stationary distribution of the damped random walk with uniform teleport.
/// Throws ConvergenceError (carrying the last iterate) on iteration cap.
std::vector<double> pagerank(const AsGraph& g, const PageRankOptions& options = {});

struct PathLengths {
  std::vector<double> per_node;  // mean hops to every other node
  double mean = 0.0;
};

// Requires a connected graph; throws DisconnectedGraphError otherwise.
PathLengths avg_path_lengths(const AsGraph& g, unsigned jobs = 1);

// Both path-based measures from one all-sources BFS sweep.
struct PathMeasures {
  std::vector<double> betweenness_raw;
  std::vector<double> betweenness;
  PathLengths lengths;
};
PathMeasures path_measures(const AsGraph& g, unsigned jobs = 1);

struct Clustering {
  std::vector<double> per_node;  // degree < 2 gives 0
  double mean = 0.0;
};

Clustering clustering(const AsGraph& g);

struct CoreDecomposition {
  std::vector<std::uint32_t> core_number;
  std::uint32_t k_max = 0;
};

// Batagelj-Zaversnik bucket peeling, O(m).
CoreDecomposition core_numbers(const AsGraph& g);

/// Pearson correlation of endpoint degrees over both orientations of every
/// edge. Throws UndefinedValueError when that variance is zero.
double assortativity(const AsGraph& g);

struct SMetric {
  double raw = 0.0;
  // Greedy stub-pairing bound on the maximum over graphs with the same
  // degree sequence, never below raw.
  double max_estimate = 0.0;
  double normalized = 0.0;
};

SMetric s_metric(const AsGraph& g);

// Greedy s_max estimate for a bare degree sequence.
double s_max_greedy(std::span<const std::uint32_t> degrees);

struct CcdfPoint {
  double value = 0.0;
  double fraction = 0.0;  // share of samples >= value
  friend bool operator==(const CcdfPoint&, const CcdfPoint&) = default;
};

std::vector<CcdfPoint> ccdf(std::span<const double> values);

// Which per-node measures a report computes. Scalars that are cheap
// (degree-based, cores, clustering mean) are always filled.
struct MeasureSelection {
  bool degree = true;
  bool betweenness = true;
  bool pagerank = true;
  bool path_length = true;
  bool clustering = true;
  bool core_number = true;

  bool needs_paths() const { return betweenness || path_length; }
};

struct MeasureReport {
  // Node order of the whole graph.
  std::vector<Asn> asns;
  std::vector<std::uint32_t> degree;
  std::vector<double> pagerank;
  std::vector<double> clustering;
  std::vector<std::uint32_t> core_number;

  // Node order of the graph path measures ran on (largest component unless
  // whole-graph mode).
  std::vector<Asn> path_asns;
  std::vector<double> betweenness;
  std::vector<double> betweenness_raw;
  std::vector<double> path_length;
  bool paths_computed = false;

  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::uint32_t max_degree = 0;
  std::uint32_t k_max = 0;
  std::optional<double> assortativity;  // empty for regular graphs
  double s_metric_raw = 0.0;
  double s_metric_norm = 0.0;
  std::optional<double> mean_path_length;
  double mean_clustering = 0.0;
  // Fraction of nodes covered by the path-measure graph.
  double path_coverage = 1.0;
};

}  // namespace astopo
