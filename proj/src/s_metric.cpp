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
#include <numeric>
#include <unordered_set>

#include "astopo/measures.hpp"

namespace astopo {

// Stubs are paired greedily: nodes are visited in descending degree order
// and each one spends its free stubs on the highest-degree nodes that still
// have free stubs, skipping itself and partners it already has. Nodes with
// no free stubs leave a doubly linked list so each visit only walks live
// candidates.
double s_max_greedy(std::span<const std::uint32_t> degrees) {
  const std::size_t n = degrees.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return degrees[a] > degrees[b];
  });

  std::vector<std::uint32_t> free_stubs(degrees.begin(), degrees.end());
  constexpr std::size_t kNil = static_cast<std::size_t>(-1);
  std::vector<std::size_t> next(n), prev(n);
  for (std::size_t i = 0; i < n; ++i) {
    next[i] = i + 1 < n ? i + 1 : kNil;
    prev[i] = i > 0 ? i - 1 : kNil;
  }
  std::size_t head = n ? 0 : kNil;
  auto unlink = [&](std::size_t i) {
    if (prev[i] != kNil) next[prev[i]] = next[i]; else head = next[i];
    if (next[i] != kNil) prev[next[i]] = prev[i];
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (free_stubs[order[i]] == 0) unlink(i);
  }

  std::unordered_set<std::uint64_t> paired;
  auto key = [](std::uint64_t a, std::uint64_t b) {
    return a < b ? (a << 32) | b : (b << 32) | a;
  };
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t u = order[i];
    if (free_stubs[u] == 0) continue;
    for (std::size_t j = head; j != kNil && free_stubs[u] > 0;) {
      const std::size_t following = next[j];
      const std::uint32_t v = order[j];
      if (v != u && paired.insert(key(u, v)).second) {
        total += static_cast<double>(degrees[u]) * static_cast<double>(degrees[v]);
        if (--free_stubs[v] == 0) unlink(j);
        if (--free_stubs[u] == 0) unlink(i);
      }
      j = following;
    }
  }
  return total;
}

SMetric s_metric(const AsGraph& g) {
  SMetric out;
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    for (NodeIndex v : g.neighbors(u)) {
      if (u < v) {
        out.raw += static_cast<double>(g.degree(u)) * static_cast<double>(g.degree(v));
      }
    }
  }
  const auto deg = degrees(g);
  out.max_estimate = std::max(s_max_greedy(deg), out.raw);
  out.normalized = out.max_estimate > 0.0 ? out.raw / out.max_estimate : 0.0;
  return out;
}

}  // namespace astopo
