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

#include "astopo/compare.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "astopo/error.hpp"
#include "astopo/parallel.hpp"
#include "astopo/random.hpp"

namespace astopo {

MeasureReport full_report(const AsGraph& g, const ReportOptions& options) {
  if (g.empty()) throw EmptyInputError("cannot measure an empty graph");
  const auto& sel = options.selection;
  MeasureReport r;
  r.asns.assign(g.asns().begin(), g.asns().end());
  r.node_count = g.node_count();
  r.edge_count = g.edge_count();

  r.degree = degrees(g);
  r.max_degree = *std::max_element(r.degree.begin(), r.degree.end());

  auto cores = core_numbers(g);
  r.k_max = cores.k_max;
  if (sel.core_number) r.core_number = std::move(cores.core_number);

  auto cc = clustering(g);
  r.mean_clustering = cc.mean;
  if (sel.clustering) r.clustering = std::move(cc.per_node);

  try {
    r.assortativity = assortativity(g);
  } catch (const UndefinedValueError&) {
    r.assortativity.reset();
  }
  const auto s = s_metric(g);
  r.s_metric_raw = s.raw;
  r.s_metric_norm = s.normalized;

  if (sel.pagerank) r.pagerank = pagerank(g, options.pagerank);

  if (sel.needs_paths()) {
    const AsGraph target =
        options.path_on_largest_component ? largest_connected_component(g) : g;
    auto paths = path_measures(target, options.jobs);
    r.path_asns.assign(target.asns().begin(), target.asns().end());
    r.paths_computed = true;
    r.mean_path_length = paths.lengths.mean;
    r.path_coverage =
        static_cast<double>(target.node_count()) / static_cast<double>(g.node_count());
    if (sel.betweenness) {
      r.betweenness = std::move(paths.betweenness);
      r.betweenness_raw = std::move(paths.betweenness_raw);
    }
    if (sel.path_length) r.path_length = std::move(paths.lengths.per_node);
  }
  if (!sel.degree) r.degree.clear();
  return r;
}

const std::vector<Measure>& matrix_columns() {
  static const std::vector<Measure> cols = {
      Measure::kDegree,     Measure::kBetweenness, Measure::kPageRank,
      Measure::kPathLength, Measure::kClustering,  Measure::kKCores,
      Measure::kKMax,       Measure::kAssortativity, Measure::kSMetric,
      Measure::kMaxDegree};
  return cols;
}

const std::vector<Measure>& distributional_measures() {
  static const std::vector<Measure> cols(matrix_columns().begin(),
                                         matrix_columns().begin() + 6);
  return cols;
}

bool is_distributional(Measure m) { return static_cast<int>(m) <= static_cast<int>(Measure::kKCores); }

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::kDegree: return "Degree";
    case Measure::kBetweenness: return "Betweenness";
    case Measure::kPageRank: return "Page Rank";
    case Measure::kPathLength: return "Path Length";
    case Measure::kClustering: return "Clustering";
    case Measure::kKCores: return "K-Cores";
    case Measure::kKMax: return "K-max";
    case Measure::kAssortativity: return "Assortativity";
    case Measure::kSMetric: return "S-Metric";
    case Measure::kMaxDegree: return "Max Degree";
  }
  return "";
}

std::vector<double> measure_sample(const MeasureReport& report, Measure m) {
  auto need = [&](const auto& v) -> const auto& {
    if (v.empty()) {
      throw ConfigError("measure " + std::string(measure_name(m)) + " was not computed");
    }
    return v;
  };
  switch (m) {
    case Measure::kDegree: {
      const auto& d = need(report.degree);
      return {d.begin(), d.end()};
    }
    case Measure::kBetweenness: return need(report.betweenness);
    case Measure::kPageRank: {
      std::vector<double> out = need(report.pagerank);
      const double n = static_cast<double>(out.size());
      for (double& x : out) x *= n;
      return out;
    }
    case Measure::kPathLength: return need(report.path_length);
    case Measure::kClustering: return need(report.clustering);
    case Measure::kKCores: {
      const auto& c = need(report.core_number);
      return {c.begin(), c.end()};
    }
    default:
      throw ConfigError(std::string(measure_name(m)) + " is not a distributional measure");
  }
}

std::optional<double> measure_scalar(const MeasureReport& report, Measure m) {
  switch (m) {
    case Measure::kKMax: return static_cast<double>(report.k_max);
    case Measure::kAssortativity: return report.assortativity;
    case Measure::kSMetric: return report.s_metric_norm;
    case Measure::kMaxDegree: return static_cast<double>(report.max_degree);
    default:
      throw ConfigError(std::string(measure_name(m)) + " is not a scalar measure");
  }
}

CvmResult compare_measure(const MeasureReport& a, const MeasureReport& b, Measure m,
                          const TestSettings& settings) {
  auto sa = measure_sample(a, m);
  auto sb = measure_sample(b, m);
  if (settings.subsample_size > 0) {
    const std::size_t k = std::min({sa.size(), sb.size(), settings.subsample_size});
    // Same seed on both sides: identical inputs give identical draws.
    const auto seed = mix_seed(settings.subsample_seed, static_cast<std::uint64_t>(m));
    sa = subsample(sa, k, seed);
    sb = subsample(sb, k, seed);
  }
  return cvm_test(sa, sb, settings.cvm);
}

std::string_view cell_kind_name(CellKind kind) {
  return kind == CellKind::kStarsScaled ? "stars_scaled" : "relative_error";
}

namespace {

std::vector<Cell> compare_reports(const MeasureReport& ref, const MeasureReport& model,
                                  const TestSettings& settings) {
  std::vector<Cell> cells;
  for (Measure m : matrix_columns()) {
    Cell cell;
    if (is_distributional(m)) {
      const auto result = compare_measure(model, ref, m, settings);
      cell.kind = CellKind::kStarsScaled;
      cell.band = result.band;
      cell.p_value = result.p_value;
      cell.value = stars(result.band) / 4.0;
    } else {
      cell.kind = CellKind::kRelativeError;
      const auto r = measure_scalar(ref, m);
      const auto v = measure_scalar(model, m);
      if (r && v) {
        const double diff = std::abs(*v - *r);
        // A zero reference has no scale; fall back to the absolute error.
        cell.value = *r == 0.0 ? diff : diff / std::abs(*r);
      }
    }
    cells.push_back(cell);
  }
  return cells;
}

}  // namespace

ComparisonMatrix compare_models(const MeasureReport& reference,
                                const std::vector<ModelSource>& rows,
                                const CompareOptions& options) {
  ComparisonMatrix matrix;
  matrix.reference_name = options.reference_name;
  matrix.reference_nodes = reference.node_count;
  matrix.reference_edges = reference.edge_count;
  matrix.settings = options.tests;
  matrix.rows.resize(rows.size());

  ReportOptions report_options;
  report_options.jobs = 1;
  parallel_blocks(rows.size(), options.jobs, [&](std::size_t i) {
    MatrixRow& row = matrix.rows[i];
    try {
      MeasureReport model;
      if (const auto* config = std::get_if<GeneratorConfig>(&rows[i])) {
        row.name = std::string(model_name(config->model));
        row.config = *config;
        if (config->n != reference.node_count && !options.allow_size_mismatch) {
          throw ConfigError("model n=" + std::to_string(config->n) +
                            " differs from reference n=" +
                            std::to_string(reference.node_count));
        }
        model = full_report(generate(*config), report_options);
      } else {
        const auto& named = std::get<NamedGraph>(rows[i]);
        row.name = named.name;
        model = full_report(named.graph, report_options);
      }
      row.cells = compare_reports(reference, model, options.tests);
    } catch (const std::exception& e) {
      row.cells.clear();
      row.error = e.what();
    }
  });
  return matrix;
}

ComparisonMatrix compare_models(const AsGraph& reference, const std::vector<ModelSource>& rows,
                                const CompareOptions& options) {
  ReportOptions report_options;
  report_options.jobs = options.jobs;
  return compare_models(full_report(reference, report_options), rows, options);
}

std::vector<AnnualRow> annual_change_table(const SnapshotSeries& series,
                                           const AnnualOptions& options) {
  std::vector<MonthStamp> chosen;
  for (const auto& [month, snap] : series.months()) {
    if (month.month == options.month_of_year) chosen.push_back(month);
  }
  if (chosen.size() < 2) {
    throw ConfigError("annual change table needs at least two years with month " +
                      std::to_string(options.month_of_year) + ", found " +
                      std::to_string(chosen.size()));
  }
  std::vector<AnnualRow> rows;
  std::optional<MeasureReport> previous;
  for (MonthStamp month : chosen) {
    auto report = full_report(series.graph(month), options.report);
    AnnualRow row;
    row.year = month.year;
    row.month = month;
    row.nodes = report.node_count;
    row.edges = report.edge_count;
    row.k_max = report.k_max;
    row.assortativity = report.assortativity;
    row.s_metric = report.s_metric_norm;
    if (previous) {
      for (Measure m : distributional_measures()) {
        row.changes.push_back(compare_measure(*previous, report, m, options.tests));
      }
    }
    rows.push_back(std::move(row));
    previous = std::move(report);
  }
  return rows;
}

namespace {

// Mean over sampled BFS sources of their mean hop distance.
double sampled_mean_path_length(const AsGraph& g, std::size_t sources, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  if (n < 2) return 0.0;
  std::vector<double> ids(n);
  std::iota(ids.begin(), ids.end(), 0.0);
  const auto picks = subsample(ids, std::min(sources, n), seed);
  std::vector<std::int32_t> dist(n, -1);
  std::vector<NodeIndex> queue;
  double total = 0.0;
  for (double pick : picks) {
    const auto s = static_cast<NodeIndex>(pick);
    queue.assign(1, s);
    dist[s] = 0;
    std::uint64_t hops = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeIndex v = queue[head];
      hops += static_cast<std::uint64_t>(dist[v]);
      for (NodeIndex w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    for (NodeIndex v : queue) dist[v] = -1;
    total += static_cast<double>(hops) / static_cast<double>(n - 1);
  }
  return total / static_cast<double>(picks.size());
}

}  // namespace

std::vector<EvolutionRow> evolution_series(const SnapshotSeries& series,
                                           const EvolutionOptions& options) {
  std::vector<EvolutionRow> rows;
  for (const auto& [month, snap] : series.months()) {
    EvolutionRow row;
    row.month = month;
    const AsGraph g = series.graph(month);
    row.nodes = g.node_count();
    row.edges = g.edge_count();
    if (!g.empty()) {
      row.mean_clustering = clustering(g).mean;
      row.k_max = core_numbers(g).k_max;
      const AsGraph lcc = largest_connected_component(g);
      row.mean_path_length =
          options.path_sources == 0
              ? avg_path_lengths(lcc, options.jobs).mean
              : sampled_mean_path_length(lcc, options.path_sources, options.path_seed);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<TopKRow> topk_degree_series(const SnapshotSeries& series, std::size_t k) {
  if (k == 0) throw ConfigError("top-k needs k >= 1");
  std::vector<TopKRow> rows;
  for (const auto& [month, snap] : series.months()) {
    const AsGraph g = series.graph(month);
    std::vector<std::pair<Asn, std::uint32_t>> ranking;
    ranking.reserve(g.node_count());
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      ranking.emplace_back(g.asn(v), static_cast<std::uint32_t>(g.degree(v)));
    }
    const std::size_t take = std::min(k, ranking.size());
    std::partial_sort(ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(take),
                      ranking.end(), [](const auto& a, const auto& b) {
                        return a.second != b.second ? a.second > b.second : a.first < b.first;
                      });
    ranking.resize(take);
    rows.push_back({month, std::move(ranking)});
  }
  return rows;
}

DeclineStatistics decline_statistics(const SnapshotSeries& series, int min_lifetime_months) {
  if (series.size() < 2) throw ConfigError("decline statistics need at least two months");
  const SnapshotSeries filled = series.filled() ? series : fill_series(series);

  std::unordered_map<Asn, std::uint32_t> previous;
  std::unordered_set<Asn> declined;
  for (const auto& [month, snap] : filled.months()) {
    std::unordered_map<Asn, std::uint32_t> current;
    current.reserve(snap.nodes.size());
    for (Asn asn : snap.nodes) current.emplace(asn, 0);
    for (const auto& [a, b] : snap.edges) {
      ++current[a];
      ++current[b];
    }
    for (const auto& [asn, degree] : current) {
      auto it = previous.find(asn);
      if (it != previous.end() && degree < it->second) declined.insert(asn);
    }
    previous = std::move(current);
  }

  DeclineStatistics out;
  out.min_lifetime_months = min_lifetime_months;
  for (const auto& [asn, life] : filled.node_lifetimes()) {
    ++out.ases;
    const bool fell = declined.contains(asn);
    if (fell) ++out.declined;
    if (life.last.ordinal() - life.first.ordinal() + 1 >= min_lifetime_months) {
      ++out.long_lived;
      if (fell) ++out.long_lived_declined;
    }
  }
  out.fraction_all = out.ases ? static_cast<double>(out.declined) / out.ases : 0.0;
  out.fraction_long_lived =
      out.long_lived ? static_cast<double>(out.long_lived_declined) / out.long_lived : 0.0;
  return out;
}

}  // namespace astopo
