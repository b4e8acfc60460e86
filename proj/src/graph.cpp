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

#include "astopo/graph.hpp"

#include <algorithm>
#include <queue>

#include "astopo/error.hpp"

namespace astopo {

AsGraph AsGraph::from_edges(std::span<const AsnEdge> edges,
                            std::span<const Asn> extra_nodes) {
  std::vector<AsnEdge> canon;
  canon.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a != b) canon.push_back(canonical(a, b));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

  AsGraph g;
  g.asns_.reserve(canon.size() * 2 + extra_nodes.size());
  for (const auto& [a, b] : canon) {
    g.asns_.push_back(a);
    g.asns_.push_back(b);
  }
  g.asns_.insert(g.asns_.end(), extra_nodes.begin(), extra_nodes.end());
  std::sort(g.asns_.begin(), g.asns_.end());
  g.asns_.erase(std::unique(g.asns_.begin(), g.asns_.end()), g.asns_.end());

  const std::size_t n = g.asns_.size();
  auto index = [&](Asn asn) {
    return static_cast<NodeIndex>(
        std::lower_bound(g.asns_.begin(), g.asns_.end(), asn) - g.asns_.begin());
  };

  std::vector<std::size_t> deg(n, 0);
  std::vector<std::pair<NodeIndex, NodeIndex>> idx;
  idx.reserve(canon.size());
  for (const auto& [a, b] : canon) {
    const NodeIndex u = index(a), v = index(b);
    idx.emplace_back(u, v);
    ++deg[u];
    ++deg[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.targets_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : idx) {
    g.targets_[cursor[u]++] = v;
    g.targets_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  return g;
}

std::optional<NodeIndex> AsGraph::index_of(Asn asn) const {
  auto it = std::lower_bound(asns_.begin(), asns_.end(), asn);
  if (it == asns_.end() || *it != asn) return std::nullopt;
  return static_cast<NodeIndex>(it - asns_.begin());
}

bool AsGraph::has_edge(NodeIndex u, NodeIndex v) const {
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<AsnEdge> AsGraph::edges() const {
  std::vector<AsnEdge> out;
  out.reserve(edge_count());
  for (NodeIndex u = 0; u < node_count(); ++u) {
    for (NodeIndex v : neighbors(u)) {
      if (u < v) out.emplace_back(asns_[u], asns_[v]);
    }
  }
  // Ascending index order is ascending ASN order, so this is already sorted.
  return out;
}

AsGraph AsGraph::induced(std::span<const NodeIndex> nodes) const {
  std::vector<bool> keep(node_count(), false);
  for (NodeIndex v : nodes) keep[v] = true;
  std::vector<AsnEdge> sub;
  std::vector<Asn> members;
  members.reserve(nodes.size());
  for (NodeIndex u = 0; u < node_count(); ++u) {
    if (!keep[u]) continue;
    members.push_back(asns_[u]);
    for (NodeIndex v : neighbors(u)) {
      if (u < v && keep[v]) sub.emplace_back(asns_[u], asns_[v]);
    }
  }
  return from_edges(sub, members);
}

BuildResult build_graph(std::span<const EdgeObservation> observations,
                        bool keep_self_loops) {
  if (observations.empty()) throw EmptyInputError("no edge observations");
  BuildResult result;
  std::vector<AsnEdge> pairs;
  pairs.reserve(observations.size());
  for (const auto& obs : observations) {
    if (obs.is_self_loop()) {
      ++result.self_loop_observations;
      if (keep_self_loops) result.self_loop_asns.push_back(obs.a);
      continue;
    }
    pairs.push_back(canonical(obs.a, obs.b));
  }
  if (pairs.empty()) {
    throw EmptyInputError("no edges remain after dropping " +
                          std::to_string(result.self_loop_observations) +
                          " self-loop observations");
  }
  std::sort(result.self_loop_asns.begin(), result.self_loop_asns.end());
  result.self_loop_asns.erase(
      std::unique(result.self_loop_asns.begin(), result.self_loop_asns.end()),
      result.self_loop_asns.end());
  result.graph = AsGraph::from_edges(pairs);
  return result;
}

std::vector<std::vector<NodeIndex>> connected_components(const AsGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<NodeIndex>> components;
  std::vector<NodeIndex> stack;
  for (NodeIndex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<NodeIndex> comp;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeIndex u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (NodeIndex v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

AsGraph largest_connected_component(const AsGraph& g) {
  if (g.empty()) throw EmptyInputError("largest component of an empty graph");
  auto components = connected_components(g);
  // Components are discovered in ascending order of their smallest index,
  // i.e. smallest ASN, so the first maximum wins ties.
  std::size_t best = 0;
  for (std::size_t i = 1; i < components.size(); ++i) {
    if (components[i].size() > components[best].size()) best = i;
  }
  if (components[best].size() == g.node_count()) return g;
  return g.induced(components[best]);
}

bool is_connected(const AsGraph& g) {
  return g.node_count() <= 1 || connected_components(g).size() == 1;
}

std::vector<std::uint32_t> degrees(const AsGraph& g) {
  std::vector<std::uint32_t> out(g.node_count());
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    out[v] = static_cast<std::uint32_t>(g.degree(v));
  }
  return out;
}

}  // namespace astopo
