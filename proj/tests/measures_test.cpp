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

#include <algorithm>
#include <cmath>
#include <random>

#include "astopo/error.hpp"
#include "astopo/generators.hpp"
#include "astopo/measures.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace astopo;
using doctest::Approx;

namespace {

constexpr double kEps = 1e-9;

double at(const AsGraph& g, const std::vector<double>& v, Asn asn) {
  return v[*g.index_of(asn)];
}

void check_close(const std::vector<double>& got, const std::vector<double>& want,
                 double eps = kEps) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == Approx(want[i]).epsilon(eps));
}

// Fixed collection of random connected graphs shared by the oracle suites.
std::vector<AsGraph> random_graphs(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<AsGraph> out;
  for (int i = 0; i < count; ++i) {
    const int n = std::uniform_int_distribution<int>(2, 16)(rng);
    const double p = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
    out.push_back(oracle::random_connected_graph(n, p, rng));
  }
  return out;
}

}  // namespace

TEST_CASE("betweenness examples") {
  const auto s = oracle::star(3);
  CHECK(at(s, betweenness(s), 1) == Approx(1.0));
  CHECK(at(s, betweenness(s), 2) == 0.0);

  const auto p = oracle::path(4);
  CHECK(betweenness_raw(p) == std::vector<double>{0, 2, 2, 0});
  CHECK(betweenness(p)[1] == Approx(2.0 / 3.0));

  const auto c = betweenness(oracle::cycle(5));
  for (double x : c) CHECK(x == Approx(c[0]));
  CHECK(c[0] > 0);

  CHECK(betweenness(oracle::path(2)) == std::vector<double>{0, 0});
}

TEST_CASE("betweenness matches all-shortest-path enumeration") {
  for (const auto& g : random_graphs(120, 101)) {
    CAPTURE(g.node_count());
    check_close(betweenness_raw(g), oracle::betweenness_raw(g));
    check_close(betweenness(g), oracle::betweenness(g));
  }
}

TEST_CASE("betweenness is identical for any worker count") {
  std::mt19937_64 rng(2);
  const auto g = oracle::random_connected_graph(200, 0.02, rng);
  const auto one = betweenness_raw(g, 1);
  CHECK(betweenness_raw(g, 3) == one);
  CHECK(betweenness_raw(g, 8) == one);
}

TEST_CASE("average path length examples") {
  const auto k = avg_path_lengths(oracle::complete(6));
  for (double x : k.per_node) CHECK(x == 1.0);

  const auto p = avg_path_lengths(oracle::path(3));
  CHECK(p.per_node == std::vector<double>{1.5, 1.0, 1.5});
  CHECK(p.mean == Approx(4.0 / 3.0));

  const auto s = oracle::star(3);
  const auto sl = avg_path_lengths(s);
  CHECK(at(s, sl.per_node, 1) == 1.0);
  CHECK(at(s, sl.per_node, 3) == Approx(5.0 / 3.0));

  CHECK_THROWS_AS(avg_path_lengths(oracle::graph_of({{1, 2}, {3, 4}})), DisconnectedGraphError);
}

TEST_CASE("average path length matches Floyd-Warshall") {
  for (const auto& g : random_graphs(120, 202)) {
    const auto want = oracle::mean_distances(g);
    const auto got = avg_path_lengths(g);
    check_close(got.per_node, want);
    double mean = 0;
    for (double x : want) mean += x;
    CHECK(got.mean == Approx(mean / want.size()).epsilon(kEps));
  }
}

TEST_CASE("path_measures agrees with the separate kernels") {
  for (const auto& g : random_graphs(20, 303)) {
    const auto both = path_measures(g, 2);
    CHECK(both.betweenness_raw == betweenness_raw(g));
    CHECK(both.lengths.per_node == avg_path_lengths(g).per_node);
  }
}

TEST_CASE("clustering examples") {
  for (double x : clustering(oracle::complete(3)).per_node) CHECK(x == 1.0);
  for (double x : clustering(oracle::star(5)).per_node) CHECK(x == 0.0);

  const auto g = oracle::graph_of({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}});  // K4 minus {3,4}
  const auto c = clustering(g).per_node;
  CHECK(at(g, c, 3) == 1.0);
  CHECK(at(g, c, 4) == 1.0);
  CHECK(at(g, c, 1) == Approx(2.0 / 3.0));
  CHECK(at(g, c, 2) == Approx(2.0 / 3.0));
}

TEST_CASE("clustering matches neighbor-pair counting") {
  for (const auto& g : random_graphs(120, 404)) check_close(clustering(g).per_node, oracle::clustering(g));
}

TEST_CASE("clustering on a hub with many low-degree neighbors") {
  // Exercises the unbalanced intersection path (hub degree >> neighbor degree).
  std::vector<AsnEdge> e;
  for (Asn i = 2; i <= 200; ++i) e.emplace_back(1, i);
  for (Asn i = 2; i < 200; i += 2) e.emplace_back(i, i + 1);
  const auto g = AsGraph::from_edges(e);
  check_close(clustering(g).per_node, oracle::clustering(g));
}

TEST_CASE("core number examples") {
  const auto k4 = core_numbers(oracle::complete(4));
  CHECK(k4.core_number == std::vector<std::uint32_t>(4, 3));
  CHECK(k4.k_max == 3);

  const auto tp = core_numbers(oracle::graph_of({{1, 2}, {2, 3}, {1, 3}, {3, 4}}));
  CHECK(tp.core_number == std::vector<std::uint32_t>{2, 2, 2, 1});
  CHECK(tp.k_max == 2);

  for (auto c : core_numbers(oracle::path(7)).core_number) CHECK(c <= 1);
}

TEST_CASE("core numbers match repeated-deletion oracle") {
  for (const auto& g : random_graphs(120, 505)) {
    const auto got = core_numbers(g);
    CHECK(got.core_number == oracle::core_numbers(g));
    CHECK(got.k_max == *std::max_element(got.core_number.begin(), got.core_number.end()));
  }
}

TEST_CASE("k-cores have minimum degree k") {
  const auto g = generate({Model::kGLP, 3000, 9, {}});
  const auto cores = core_numbers(g);
  for (std::uint32_t k = 1; k <= cores.k_max; ++k) {
    std::vector<NodeIndex> keep;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      if (cores.core_number[v] >= k) keep.push_back(v);
    }
    const auto sub = g.induced(keep);
    REQUIRE(sub.node_count() > 0);
    for (NodeIndex v = 0; v < sub.node_count(); ++v) CHECK(sub.degree(v) >= k);
  }
}

TEST_CASE("assortativity examples") {
  CHECK(assortativity(oracle::star(4)) == Approx(-1.0));
  CHECK_THROWS_AS(assortativity(oracle::cycle(6)), UndefinedValueError);
  CHECK_THROWS_AS(assortativity(oracle::complete(4)), UndefinedValueError);
}

TEST_CASE("assortativity matches two-pass Pearson oracle") {
  int checked = 0;
  for (const auto& g : random_graphs(150, 606)) {
    if (g.edge_count() == 0) continue;
    const auto d = degrees(g);
    bool regular = std::all_of(d.begin(), d.end(), [&](auto x) { return x == d[0]; });
    if (regular) {
      CHECK_THROWS_AS(assortativity(g), UndefinedValueError);
      continue;
    }
    CHECK(assortativity(g) == Approx(oracle::assortativity(g)).epsilon(kEps));
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("assortativity is invariant under relabeling") {
  std::mt19937_64 rng(8);
  const auto edges = oracle::random_connected_edges(40, 0.1, rng);
  std::vector<AsnEdge> relabeled;
  for (auto [a, b] : edges) relabeled.emplace_back(1000000 - a, 1000000 - b);
  CHECK(assortativity(AsGraph::from_edges(edges)) ==
        Approx(assortativity(AsGraph::from_edges(relabeled))).epsilon(1e-12));
}

TEST_CASE("s-metric examples") {
  CHECK(s_metric(oracle::star(3)).raw == 9);
  CHECK(s_metric(oracle::path(3)).raw == 4);
  // A star is the only realization of its degree sequence.
  CHECK(s_metric(oracle::star(6)).normalized == Approx(1.0));
}

TEST_CASE("s-metric raw matches the edge sum oracle") {
  for (const auto& g : random_graphs(120, 707)) CHECK(s_metric(g).raw == oracle::s_raw(g));
}

TEST_CASE("greedy s_max never exceeds the exhaustive maximum") {
  std::mt19937_64 rng(808);
  int equal = 0, total = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 8)(rng);
    const auto g = oracle::random_connected_graph(n, 0.4, rng);
    const auto d = degrees(g);
    const double exact = oracle::s_max_exhaustive(d);
    const auto s = s_metric(g);
    CHECK(s.raw <= exact);
    CHECK(s.max_estimate <= exact);
    CHECK(s.max_estimate >= s.raw);
    CHECK(s.normalized <= 1.0);
    CHECK(s.normalized > 0.0);
    equal += s.max_estimate == exact;
    ++total;
  }
  // Greedy pairing is a heuristic; it found the exhaustive maximum on most
  // of these graphs when this test was written.
  CHECK(equal * 10 >= total * 7);
}

TEST_CASE("greedy s_max on sequences where it is exact") {
  CHECK(s_max_greedy(std::vector<std::uint32_t>{3, 1, 1, 1}) == 9);
  CHECK(s_max_greedy(std::vector<std::uint32_t>{2, 2, 2}) == 12);
  CHECK(s_max_greedy(std::vector<std::uint32_t>{3, 3, 3, 3}) ==
        oracle::s_max_exhaustive({3, 3, 3, 3}));
}

TEST_CASE("s-metric normalized on a 200-node BA graph stays in (0, 1]") {
  const auto g = generate({Model::kBA, 200, 1, {}});
  const auto s = s_metric(g);
  CHECK(s.normalized > 0.0);
  CHECK(s.normalized <= 1.0);
}

TEST_CASE("pagerank examples") {
  for (double x : pagerank(oracle::cycle(4))) CHECK(x == Approx(0.25).epsilon(1e-12));
  const auto e = pagerank(oracle::graph_of({{1, 2}}));
  CHECK(e[0] == Approx(0.5).epsilon(1e-12));
  CHECK(e[1] == Approx(0.5).epsilon(1e-12));

  const auto s = oracle::star(3);
  const auto want = oracle::pagerank_dense(s, 0.85);
  CHECK(std::abs(pagerank(s)[0] - want[0]) < 1e-8);
}

TEST_CASE("pagerank matches the dense linear solve and its fixed point") {
  for (const auto& g : random_graphs(120, 909)) {
    const auto pr = pagerank(g);
    const auto want = oracle::pagerank_dense(g, 0.85);
    double sum = 0;
    for (std::size_t i = 0; i < pr.size(); ++i) {
      CHECK(std::abs(pr[i] - want[i]) < 1e-8);
      sum += pr[i];
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);

    // One more application of the update must not move the vector.
    const std::size_t n = g.node_count();
    std::vector<double> next(n, 0.15 / n);
    double dangling = 0;
    for (NodeIndex u = 0; u < n; ++u) {
      if (g.degree(u) == 0) dangling += pr[u];
      for (auto v : g.neighbors(u)) next[v] += 0.85 * pr[u] / g.degree(u);
    }
    double residual = 0;
    for (std::size_t i = 0; i < n; ++i) residual += std::abs(next[i] + 0.85 * dangling / n - pr[i]);
    CHECK(residual < 1e-9);
  }
}

TEST_CASE("pagerank handles isolated nodes") {
  const std::vector<AsnEdge> e = {{1, 2}, {2, 3}};
  const std::vector<Asn> extra = {10, 11};
  const auto g = AsGraph::from_edges(e, extra);
  const auto pr = pagerank(g);
  const auto want = oracle::pagerank_dense(g, 0.85);
  for (std::size_t i = 0; i < pr.size(); ++i) CHECK(std::abs(pr[i] - want[i]) < 1e-8);
}

TEST_CASE("pagerank reports non-convergence with the last iterate") {
  PageRankOptions opts;
  opts.max_iterations = 2;
  opts.tolerance = 1e-15;
  try {
    pagerank(oracle::star(5), opts);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.iterate().size() == 6);
  }
}

TEST_CASE("ccdf examples") {
  const std::vector<double> a = {1, 1, 2};
  CHECK(ccdf(a) == std::vector<CcdfPoint>{{1, 1.0}, {2, 1.0 / 3.0}});
  const std::vector<double> b = {5};
  CHECK(ccdf(b) == std::vector<CcdfPoint>{{5, 1.0}});
  const std::vector<double> d = {3, 1, 1, 1};
  CHECK(ccdf(d) == std::vector<CcdfPoint>{{1, 1.0}, {3, 0.25}});
  CHECK_THROWS_AS(ccdf(std::vector<double>{}), EmptyInputError);
}

TEST_CASE("ccdf fractions are nonincreasing") {
  std::mt19937_64 rng(1);
  std::vector<double> v(500);
  for (auto& x : v) x = std::uniform_int_distribution<int>(0, 40)(rng);
  const auto c = ccdf(v);
  CHECK(c.front().fraction == 1.0);
  for (std::size_t i = 1; i < c.size(); ++i) {
    CHECK(c[i].value > c[i - 1].value);
    CHECK(c[i].fraction < c[i - 1].fraction);
  }
}
