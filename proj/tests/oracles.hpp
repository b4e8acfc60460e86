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

// Brute-force reference implementations used by the tests. Each one follows
// the textbook definition as directly as possible and shares no code with
// the library kernels it checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "astopo/graph.hpp"

namespace oracle {

using Adj = std::vector<std::vector<int>>;  // dense 0/1 adjacency matrix

inline Adj adjacency(const astopo::AsGraph& g) {
  const int n = static_cast<int>(g.node_count());
  Adj a(n, std::vector<int>(n, 0));
  for (int u = 0; u < n; ++u) {
    for (auto v : g.neighbors(u)) a[u][v] = 1;
  }
  return a;
}

inline int deg(const Adj& a, int v) {
  return std::accumulate(a[v].begin(), a[v].end(), 0);
}

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// Floyd-Warshall hop distances.
inline std::vector<std::vector<int>> distances(const Adj& a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (int i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (int j = 0; j < n; ++j) {
      if (a[i][j]) d[i][j] = 1;
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  return d;
}

namespace detail {
inline void enumerate_paths(const Adj& a, const std::vector<std::vector<int>>& d, int cur,
                            int t, std::vector<int>& path,
                            std::vector<std::vector<int>>& out) {
  if (cur == t) {
    out.push_back(path);
    return;
  }
  const int n = static_cast<int>(a.size());
  for (int w = 0; w < n; ++w) {
    if (a[cur][w] && d[w][t] == d[cur][t] - 1) {
      path.push_back(w);
      enumerate_paths(a, d, w, t, path, out);
      path.pop_back();
    }
  }
}
}  // namespace detail

// Unnormalized betweenness: for every unordered pair {s,t}, list every
// shortest path explicitly and credit each interior node with the share of
// paths it lies on.
inline std::vector<double> betweenness_raw(const astopo::AsGraph& g) {
  const Adj a = adjacency(g);
  const auto d = distances(a);
  const int n = static_cast<int>(a.size());
  std::vector<double> b(n, 0.0);
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      if (d[s][t] >= kInf) continue;
      std::vector<std::vector<int>> paths;
      std::vector<int> path{s};
      detail::enumerate_paths(a, d, s, t, path, paths);
      for (int v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        std::size_t through = 0;
        for (const auto& p : paths) {
          through += std::count(p.begin(), p.end(), v);
        }
        b[v] += static_cast<double>(through) / static_cast<double>(paths.size());
      }
    }
  }
  return b;
}

inline std::vector<double> betweenness(const astopo::AsGraph& g) {
  auto b = oracle::betweenness_raw(g);
  const double n = static_cast<double>(g.node_count());
  if (n < 3) return std::vector<double>(b.size(), 0.0);
  for (auto& x : b) x /= (n - 1) * (n - 2) / 2;
  return b;
}

// Per-node mean distance to every other node (connected graphs only).
inline std::vector<double> mean_distances(const astopo::AsGraph& g) {
  const auto d = distances(adjacency(g));
  const int n = static_cast<int>(d.size());
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  for (int i = 0; i < n; ++i) {
    long total = 0;
    for (int j = 0; j < n; ++j) total += d[i][j];
    out[i] = static_cast<double>(total) / (n - 1);
  }
  return out;
}

// Check every neighbor pair for adjacency.
inline std::vector<double> clustering(const astopo::AsGraph& g) {
  const Adj a = adjacency(g);
  const int n = static_cast<int>(a.size());
  std::vector<double> c(n, 0.0);
  for (int v = 0; v < n; ++v) {
    std::vector<int> nb;
    for (int w = 0; w < n; ++w) {
      if (a[v][w]) nb.push_back(w);
    }
    const int k = static_cast<int>(nb.size());
    if (k < 2) continue;
    int links = 0;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) links += a[nb[i]][nb[j]];
    }
    c[v] = 2.0 * links / (static_cast<double>(k) * (k - 1));
  }
  return c;
}

// core(v) = largest k such that v survives repeated deletion of nodes with
// degree < k.
inline std::vector<std::uint32_t> core_numbers(const astopo::AsGraph& g) {
  const Adj a = adjacency(g);
  const int n = static_cast<int>(a.size());
  std::vector<std::uint32_t> core(n, 0);
  for (int k = 1; k <= n; ++k) {
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        int d = 0;
        for (int w = 0; w < n; ++w) d += alive[w] && a[v][w];
        if (d < k) {
          alive[v] = false;
          changed = true;
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      if (alive[v]) core[v] = static_cast<std::uint32_t>(k);
    }
  }
  return core;
}

// Two-pass Pearson correlation over the list of directed edge endpoints.
inline double assortativity(const astopo::AsGraph& g) {
  const Adj a = adjacency(g);
  const int n = static_cast<int>(a.size());
  std::vector<double> x, y;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (a[u][v]) {
        x.push_back(deg(a, u));
        y.push_back(deg(a, v));
      }
    }
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

inline double s_raw(const astopo::AsGraph& g) {
  const Adj a = adjacency(g);
  const int n = static_cast<int>(a.size());
  double s = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (a[u][v]) s += static_cast<double>(deg(a, u)) * deg(a, v);
    }
  }
  return s;
}

// Maximum of sum d(u)d(v) over all simple graphs realizing `degrees`,
// by exhaustive backtracking over the upper-triangle pairs. Returns -1 when
// the sequence is not graphical. Intended for n <= 8.
inline double s_max_exhaustive(const std::vector<std::uint32_t>& degrees) {
  const int n = static_cast<int>(degrees.size());
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  std::vector<int> left(degrees.begin(), degrees.end());
  double best = -1;
  auto rec = [&](auto&& self, std::size_t i, double acc) -> void {
    if (i == pairs.size()) {
      if (std::all_of(left.begin(), left.end(), [](int x) { return x == 0; })) {
        best = std::max(best, acc);
      }
      return;
    }
    const auto [u, v] = pairs[i];
    if (left[u] > 0 && left[v] > 0) {
      --left[u];
      --left[v];
      self(self, i + 1, acc + static_cast<double>(degrees[u]) * degrees[v]);
      ++left[u];
      ++left[v];
    }
    if (v == n - 1 && left[u] > 0) return;  // u has no later partners
    self(self, i + 1, acc);
  };
  rec(rec, 0, 0.0);
  return best;
}

// PageRank by solving (I - d P^T) x = (1 - d)/n + dangling share directly
// with Gaussian elimination; the dangling mass is spread uniformly, which
// makes the system x = d (P^T x + D x / n) + (1 - d)/n with D the dangling
// indicator row. Normalized to sum 1.
inline std::vector<double> pagerank_dense(const astopo::AsGraph& g, double damping) {
  const Adj a = adjacency(g);
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
  for (int i = 0; i < n; ++i) {
    m[i][i] = 1.0;
    m[i][n] = (1.0 - damping) / n;
  }
  for (int j = 0; j < n; ++j) {
    const int dj = deg(a, j);
    for (int i = 0; i < n; ++i) {
      if (dj == 0) {
        m[i][j] -= damping / n;
      } else if (a[j][i]) {
        m[i][j] -= damping / dj;
      }
    }
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    std::swap(m[c], m[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (int k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<double> x(n);
  double total = 0;
  for (int i = 0; i < n; ++i) total += x[i] = m[i][n] / m[i][i];
  for (auto& v : x) v /= total;
  return x;
}

// Cramer-von Mises T from its integral definition:
// T = n m / N^2 * sum over pooled points of (F_a(x) - F_b(x))^2, evaluated
// at every pooled observation. Equals the rank formula only without ties.
inline double cvm_ecdf(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = a.size(), m = b.size(), N = n + m;
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  double sum = 0;
  for (double x : pooled) {
    const double fa = std::count_if(a.begin(), a.end(), [&](double v) { return v <= x; }) / n;
    const double fb = std::count_if(b.begin(), b.end(), [&](double v) { return v <= x; }) / m;
    sum += (fa - fb) * (fa - fb);
  }
  return n * m / (N * N) * sum;
}

// Rank formula with midranks computed by pairwise comparison counting.
inline double cvm_midrank(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  auto midrank = [&](double x) {
    double less = 0, equal = 0;
    for (double v : pooled) {
      less += v < x;
      equal += v == x;
    }
    return less + (equal + 1) / 2;
  };
  auto side = [&](std::vector<double> s) {
    std::sort(s.begin(), s.end());
    double acc = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double r = midrank(s[i]) - static_cast<double>(i + 1);
      acc += r * r;
    }
    return acc;
  };
  const double n = a.size(), m = b.size(), N = n + m;
  const double u = n * side(a) + m * side(b);
  return u / (n * m * N) - (4 * m * n - 1) / (6 * N);
}

// Exact permutation p-value: the fraction of all C(N, n) splits of the
// pooled sample whose statistic is >= the observed one. Small N only.
inline double cvm_exact_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = a.size(), N = pooled.size();
  const double observed = cvm_midrank(a, b);
  std::vector<bool> pick(N, false);
  std::fill(pick.begin(), pick.begin() + n, true);
  std::size_t total = 0, extreme = 0;
  do {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < N; ++i) (pick[i] ? x : y).push_back(pooled[i]);
    ++total;
    extreme += cvm_midrank(x, y) >= observed - 1e-9;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return static_cast<double>(extreme) / total;
}

// Exact permutation p-value for heavily tied samples. A split of the pooled
// sample is characterized by how many copies of each distinct value go to
// the first side; each such composition is weighted by its number of
// labelled splits (a product of binomials). Feasible when the pooled sample
// has few distinct values.
inline double cvm_exact_p_grouped(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::sort(pooled.begin(), pooled.end());
  std::vector<double> values;
  std::vector<int> counts;
  for (double x : pooled) {
    if (values.empty() || values.back() != x) {
      values.push_back(x);
      counts.push_back(0);
    }
    ++counts.back();
  }
  const int n = static_cast<int>(a.size());
  const double observed = cvm_midrank(a, b);
  auto log_choose = [](int N, int k) {
    return std::lgamma(N + 1.0) - std::lgamma(k + 1.0) - std::lgamma(N - k + 1.0);
  };
  const double log_total = log_choose(static_cast<int>(pooled.size()), n);
  std::vector<int> take(values.size(), 0);
  double p = 0;
  auto rec = [&](auto&& self, std::size_t i, int left, double log_w) -> void {
    if (i == values.size()) {
      if (left != 0) return;
      std::vector<double> x, y;
      for (std::size_t v = 0; v < values.size(); ++v) {
        x.insert(x.end(), take[v], values[v]);
        y.insert(y.end(), counts[v] - take[v], values[v]);
      }
      if (cvm_midrank(x, y) >= observed - 1e-9) p += std::exp(log_w - log_total);
      return;
    }
    for (int k = 0; k <= std::min(left, counts[i]); ++k) {
      take[i] = k;
      self(self, i + 1, left - k, log_w + log_choose(counts[i], k));
    }
  };
  rec(rec, 0, n, 0.0);
  return p;
}

// Random connected simple graph: a random labelled tree plus extra edges
// with probability p. ASNs are drawn sparse so label order differs from
// insertion order.
inline std::vector<astopo::AsnEdge> random_connected_edges(int n, double p, std::mt19937_64& rng) {
  std::vector<astopo::Asn> label(n);
  std::set<astopo::Asn> used;
  std::uniform_int_distribution<astopo::Asn> pick(1, 100000);
  for (auto& l : label) {
    do {
      l = pick(rng);
    } while (!used.insert(l).second);
  }
  std::set<astopo::AsnEdge> edges;
  for (int v = 1; v < n; ++v) {
    const int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    edges.insert(astopo::canonical(label[u], label[v]));
  }
  std::bernoulli_distribution extra(p);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (extra(rng)) edges.insert(astopo::canonical(label[u], label[v]));
    }
  }
  std::vector<astopo::AsnEdge> out(edges.begin(), edges.end());
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

inline astopo::AsGraph random_connected_graph(int n, double p, std::mt19937_64& rng) {
  const auto edges = random_connected_edges(n, p, rng);
  return astopo::AsGraph::from_edges(edges, {});
}

inline astopo::AsGraph graph_of(std::initializer_list<astopo::AsnEdge> edges) {
  std::vector<astopo::AsnEdge> e(edges);
  return astopo::AsGraph::from_edges(e, {});
}

inline astopo::AsGraph star(int leaves) {
  std::vector<astopo::AsnEdge> e;
  for (int i = 0; i < leaves; ++i) e.emplace_back(1, static_cast<astopo::Asn>(i + 2));
  return astopo::AsGraph::from_edges(e, {});
}

inline astopo::AsGraph path(int n) {
  std::vector<astopo::AsnEdge> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  return astopo::AsGraph::from_edges(e, {});
}

inline astopo::AsGraph cycle(int n) {
  std::vector<astopo::AsnEdge> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(1, n);
  return astopo::AsGraph::from_edges(e, {});
}

inline astopo::AsGraph complete(int n) {
  std::vector<astopo::AsnEdge> e;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) e.emplace_back(i, j);
  }
  return astopo::AsGraph::from_edges(e, {});
}

}  // namespace oracle
