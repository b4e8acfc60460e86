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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "astopo/generators.hpp"
#include "astopo/graph.hpp"
#include "astopo/ingest.hpp"
#include "astopo/measures.hpp"
#include "astopo/stats.hpp"

namespace astopo {

struct ReportOptions {
  unsigned jobs = 1;
  // Path-based measures on the largest component (default) or on the whole
  // graph, which must then be connected.
  bool path_on_largest_component = true;
  MeasureSelection selection;
  PageRankOptions pagerank;
};

/// Every measure on one graph. Path-based measures use the largest
/// connected component and record the fraction of nodes it covers.
MeasureReport full_report(const AsGraph& g, const ReportOptions& options = {});

// Columns of a comparison matrix, in figure order.
enum class Measure {
  kDegree,
  kBetweenness,
  kPageRank,
  kPathLength,
  kClustering,
  kKCores,
  kKMax,
  kAssortativity,
  kSMetric,
  kMaxDegree,
};

const std::vector<Measure>& matrix_columns();
const std::vector<Measure>& distributional_measures();
std::string_view measure_name(Measure m);  // "Degree", "Page Rank", ...
bool is_distributional(Measure m);

/// Per-node sample a distributional column is tested on. PageRank is scaled
/// by n (mean 1) so graphs of different size are comparable.
std::vector<double> measure_sample(const MeasureReport& report, Measure m);

/// Scalar column value, nullopt when undefined (assortativity of a regular
/// graph).
std::optional<double> measure_scalar(const MeasureReport& report, Measure m);

struct TestSettings {
  // Both sides are subsampled to min(n, m, subsample_size); 0 disables.
  std::size_t subsample_size = 2000;
  std::uint64_t subsample_seed = 20100601;
  CvmOptions cvm;
};

/// CvM test between two reports on one distributional measure, including
/// the subsampling step.
CvmResult compare_measure(const MeasureReport& a, const MeasureReport& b, Measure m,
                          const TestSettings& settings);

enum class CellKind { kStarsScaled, kRelativeError };
std::string_view cell_kind_name(CellKind kind);

struct Cell {
  CellKind kind = CellKind::kStarsScaled;
  // stars/4 or |model - ref| / |ref|; nullopt when a scalar is undefined.
  std::optional<double> value;
  std::optional<Band> band;
  std::optional<double> p_value;
};

struct MatrixRow {
  std::string name;
  std::vector<Cell> cells;  // one per matrix column; empty on error
  std::optional<std::string> error;
  std::optional<GeneratorConfig> config;
};

struct ComparisonMatrix {
  std::string reference_name;
  std::size_t reference_nodes = 0;
  std::size_t reference_edges = 0;
  TestSettings settings;
  std::vector<MatrixRow> rows;
};

// A matrix row is produced from a generator config or from a given graph
// (e.g. the reference itself).
struct NamedGraph {
  std::string name;
  AsGraph graph;
};
using ModelSource = std::variant<GeneratorConfig, NamedGraph>;

struct CompareOptions {
  TestSettings tests;
  unsigned jobs = 1;
  // Accept generator configs whose n differs from the reference.
  bool allow_size_mismatch = false;
  std::string reference_name = "reference";
};

/// Builds the model x measure matrix. Failing rows carry an error and do not
/// stop the others. Distributional cells are stars/4 of the CvM band against
/// the reference; scalar cells are relative errors.
ComparisonMatrix compare_models(const AsGraph& reference, const std::vector<ModelSource>& rows,
                                const CompareOptions& options = {});

// Same, with the reference report precomputed.
ComparisonMatrix compare_models(const MeasureReport& reference,
                                const std::vector<ModelSource>& rows,
                                const CompareOptions& options = {});

// ---------------------------------------------------------------------------
// Evolution over a snapshot series
// ---------------------------------------------------------------------------

struct AnnualRow {
  int year = 0;
  MonthStamp month;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  // Bands against the previous year, one per distributional measure; empty
  // for the first year.
  std::vector<CvmResult> changes;
  std::uint32_t k_max = 0;
  std::optional<double> assortativity;
  double s_metric = 0.0;  // normalized
};

struct AnnualOptions {
  int month_of_year = 6;
  ReportOptions report;
  TestSettings tests;
};

/// Year-over-year change table over the chosen month of each year present.
/// Throws ConfigError with fewer than two such years.
std::vector<AnnualRow> annual_change_table(const SnapshotSeries& series,
                                           const AnnualOptions& options = {});

struct EvolutionRow {
  MonthStamp month;
  std::optional<double> mean_path_length;
  double mean_clustering = 0.0;
  std::uint32_t k_max = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
};

struct EvolutionOptions {
  unsigned jobs = 1;
  // 0: exact mean path length. Otherwise the mean over this many BFS
  // sources drawn with `path_seed`, for long series of large graphs.
  std::size_t path_sources = 0;
  std::uint64_t path_seed = 1;
};

std::vector<EvolutionRow> evolution_series(const SnapshotSeries& series,
                                           const EvolutionOptions& options = {});

struct TopKRow {
  MonthStamp month;
  std::vector<std::pair<Asn, std::uint32_t>> ranking;  // (asn, degree)
};

// Highest-degree ASNs per month; ties go to the smaller ASN.
std::vector<TopKRow> topk_degree_series(const SnapshotSeries& series, std::size_t k);

struct DeclineStatistics {
  double fraction_all = 0.0;
  double fraction_long_lived = 0.0;
  std::size_t ases = 0;
  std::size_t declined = 0;
  std::size_t long_lived = 0;
  std::size_t long_lived_declined = 0;
  int min_lifetime_months = 60;
};

/// Share of ASes whose degree fell from one month to the next at least once,
/// overall and among ASes alive for at least `min_lifetime_months`. Fills
/// the series first unless it is already filled. A node present without
/// edges has degree 0.
DeclineStatistics decline_statistics(const SnapshotSeries& series,
                                     int min_lifetime_months = 60);

}  // namespace astopo
