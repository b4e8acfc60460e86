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

#include "astopo/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "astopo/error.hpp"
#include "astopo/parallel.hpp"

namespace astopo {

namespace {

// Sources are split into this many contiguous blocks whatever the worker
// count; per-block partial sums are reduced in block order so results do
// not depend on `jobs`.
constexpr std::size_t kSweepBlocks = 64;

struct SweepOutput {
  std::vector<double> dependency;      // sum over sources, both orientations
  std::vector<std::uint64_t> hop_sum;  // per source
  bool connected = true;
};

SweepOutput all_sources_sweep(const AsGraph& g, unsigned jobs, bool want_dependency) {
  const std::size_t n = g.node_count();
  const std::size_t blocks = std::min(kSweepBlocks, std::max<std::size_t>(n, 1));
  std::vector<std::vector<double>> partial(want_dependency ? blocks : 0);
  SweepOutput out;
  out.hop_sum.assign(n, 0);
  std::vector<char> reached_all(blocks, 1);

  parallel_blocks(blocks, jobs, [&](std::size_t block) {
    const std::size_t begin = block * n / blocks;
    const std::size_t end = (block + 1) * n / blocks;
    std::vector<std::int32_t> dist(n, -1);
    std::vector<double> sigma(want_dependency ? n : 0);
    std::vector<double> delta(want_dependency ? n : 0);
    std::vector<NodeIndex> order;
    order.reserve(n);
    if (want_dependency) partial[block].assign(n, 0.0);

    for (std::size_t s = begin; s < end; ++s) {
      order.clear();
      dist[s] = 0;
      if (want_dependency) sigma[s] = 1.0;
      order.push_back(static_cast<NodeIndex>(s));
      std::uint64_t hops = 0;
      for (std::size_t head = 0; head < order.size(); ++head) {
        const NodeIndex v = order[head];
        hops += static_cast<std::uint64_t>(dist[v]);
        for (NodeIndex w : g.neighbors(v)) {
          if (dist[w] < 0) {
            dist[w] = dist[v] + 1;
            order.push_back(w);
          }
          if (want_dependency && dist[w] == dist[v] + 1) sigma[w] += sigma[v];
        }
      }
      out.hop_sum[s] = hops;
      if (order.size() != n) reached_all[block] = 0;

      if (want_dependency) {
        auto& acc = partial[block];
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
          const NodeIndex w = *it;
          const double coeff = (1.0 + delta[w]) / sigma[w];
          for (NodeIndex v : g.neighbors(w)) {
            if (dist[v] == dist[w] - 1) delta[v] += sigma[v] * coeff;
          }
          if (w != s) acc[w] += delta[w];
        }
      }
      for (NodeIndex v : order) {
        dist[v] = -1;
        if (want_dependency) sigma[v] = delta[v] = 0.0;
      }
    }
  });

  if (want_dependency) {
    out.dependency.assign(n, 0.0);
    for (const auto& p : partial) {
      for (std::size_t v = 0; v < n; ++v) out.dependency[v] += p[v];
    }
  }
  out.connected = std::all_of(reached_all.begin(), reached_all.end(),
                              [](char c) { return c != 0; });
  return out;
}

std::vector<double> normalize_betweenness(const std::vector<double>& raw) {
  const double n = static_cast<double>(raw.size());
  std::vector<double> out(raw.size(), 0.0);
  if (raw.size() < 3) return out;
  const double pairs = (n - 1.0) * (n - 2.0) / 2.0;
  for (std::size_t v = 0; v < raw.size(); ++v) out[v] = raw[v] / pairs;
  return out;
}

PathLengths lengths_from(const SweepOutput& sweep, std::size_t n) {
  PathLengths out;
  out.per_node.assign(n, 0.0);
  if (n < 2) return out;
  double total = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    out.per_node[v] = static_cast<double>(sweep.hop_sum[v]) / static_cast<double>(n - 1);
    total += out.per_node[v];
  }
  out.mean = total / static_cast<double>(n);
  return out;
}

void require_connected(const SweepOutput& sweep) {
  if (!sweep.connected) {
    throw DisconnectedGraphError(
        "average path length is undefined on a disconnected graph; "
        "extract the largest connected component first");
  }
}

std::size_t intersection_size(std::span<const NodeIndex> a, std::span<const NodeIndex> b) {
  if (a.size() > b.size()) std::swap(a, b);
  std::size_t count = 0;
  if (a.size() * 32 < b.size()) {
    auto lo = b.begin();
    for (NodeIndex x : a) {
      lo = std::lower_bound(lo, b.end(), x);
      if (lo == b.end()) break;
      if (*lo == x) ++count;
    }
    return count;
  }
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

std::vector<double> betweenness_raw(const AsGraph& g, unsigned jobs) {
  auto sweep = all_sources_sweep(g, jobs, true);
  for (double& x : sweep.dependency) x /= 2.0;
  return std::move(sweep.dependency);
}

std::vector<double> betweenness(const AsGraph& g, unsigned jobs) {
  return normalize_betweenness(betweenness_raw(g, jobs));
}

PathLengths avg_path_lengths(const AsGraph& g, unsigned jobs) {
  const auto sweep = all_sources_sweep(g, jobs, false);
  require_connected(sweep);
  return lengths_from(sweep, g.node_count());
}

PathMeasures path_measures(const AsGraph& g, unsigned jobs) {
  auto sweep = all_sources_sweep(g, jobs, true);
  require_connected(sweep);
  PathMeasures out;
  out.lengths = lengths_from(sweep, g.node_count());
  for (double& x : sweep.dependency) x /= 2.0;
  out.betweenness = normalize_betweenness(sweep.dependency);
  out.betweenness_raw = std::move(sweep.dependency);
  return out;
}

std::vector<double> pagerank(const AsGraph& g, const PageRankOptions& options) {
  const std::size_t n = g.node_count();
  if (n == 0) throw EmptyInputError("pagerank of an empty graph");
  const double d = options.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, inv_n), next(n), share(n);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double dangling = 0.0;
    for (NodeIndex v = 0; v < n; ++v) {
      const auto deg = g.degree(v);
      if (deg == 0) {
        dangling += rank[v];
        share[v] = 0.0;
      } else {
        share[v] = rank[v] / static_cast<double>(deg);
      }
    }
    const double base = (1.0 - d) * inv_n + d * dangling * inv_n;
    double diff = 0.0;
    for (NodeIndex v = 0; v < n; ++v) {
      double sum = 0.0;
      for (NodeIndex u : g.neighbors(v)) sum += share[u];
      next[v] = base + d * sum;
      diff += std::abs(next[v] - rank[v]);
    }
    rank.swap(next);
    if (diff < options.tolerance) {
      const double total = std::accumulate(rank.begin(), rank.end(), 0.0);
      for (double& x : rank) x /= total;
      return rank;
    }
  }
  throw ConvergenceError("pagerank did not converge within " +
                             std::to_string(options.max_iterations) + " iterations",
                         std::move(rank));
}

Clustering clustering(const AsGraph& g) {
  const std::size_t n = g.node_count();
  Clustering out;
  out.per_node.assign(n, 0.0);
  double total = 0.0;
  for (NodeIndex v = 0; v < n; ++v) {
    const std::size_t d = g.degree(v);
    if (d < 2) continue;
    const auto nv = g.neighbors(v);
    std::size_t twice_links = 0;  // each neighbor-neighbor link seen twice
    for (NodeIndex u : nv) twice_links += intersection_size(nv, g.neighbors(u));
    out.per_node[v] = static_cast<double>(twice_links) / static_cast<double>(d * (d - 1));
    total += out.per_node[v];
  }
  out.mean = n ? total / static_cast<double>(n) : 0.0;
  return out;
}

CoreDecomposition core_numbers(const AsGraph& g) {
  const std::size_t n = g.node_count();
  CoreDecomposition out;
  out.core_number.assign(n, 0);
  if (n == 0) return out;

  std::vector<std::uint32_t> deg = degrees(g);
  const std::uint32_t max_deg = *std::max_element(deg.begin(), deg.end());
  std::vector<std::size_t> bin(max_deg + 1, 0);
  for (auto d : deg) ++bin[d];
  std::size_t start = 0;
  for (auto& b : bin) {
    const std::size_t count = b;
    b = start;
    start += count;
  }
  std::vector<NodeIndex> vert(n);
  std::vector<std::size_t> pos(n);
  for (NodeIndex v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    vert[pos[v]] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const NodeIndex v = vert[i];
    for (NodeIndex u : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        const std::uint32_t du = deg[u];
        const std::size_t pu = pos[u];
        const std::size_t pw = bin[du];
        const NodeIndex w = vert[pw];
        if (u != w) {
          pos[u] = pw;
          vert[pu] = w;
          pos[w] = pu;
          vert[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  out.core_number = std::move(deg);
  out.k_max = *std::max_element(out.core_number.begin(), out.core_number.end());
  return out;
}

double assortativity(const AsGraph& g) {
  if (g.edge_count() == 0) throw UndefinedValueError("assortativity of a graph without edges");
  double sum = 0.0;
  bool uniform = true;
  std::size_t reference = 0;
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    for (NodeIndex v : g.neighbors(u)) {
      if (u > v) continue;
      const auto du = g.degree(u), dv = g.degree(v);
      if (reference == 0) reference = du;
      if (du != reference || dv != reference) uniform = false;
      sum += static_cast<double>(du + dv);
    }
  }
  if (uniform) {
    throw UndefinedValueError(
        "assortativity undefined: every edge endpoint has the same degree");
  }
  const double m = static_cast<double>(g.edge_count());
  const double mean = sum / (2.0 * m);
  double cov = 0.0, var = 0.0;
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    for (NodeIndex v : g.neighbors(u)) {
      if (u > v) continue;
      const double x = static_cast<double>(g.degree(u)) - mean;
      const double y = static_cast<double>(g.degree(v)) - mean;
      cov += 2.0 * x * y;
      var += x * x + y * y;
    }
  }
  return cov / var;
}

std::vector<CcdfPoint> ccdf(std::span<const double> values) {
  if (values.empty()) throw EmptyInputError("ccdf of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double total = static_cast<double>(sorted.size());
  std::vector<CcdfPoint> out;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    out.push_back({sorted[i], static_cast<double>(sorted.size() - i) / total});
    i = j;
  }
  return out;
}

}  // namespace astopo
