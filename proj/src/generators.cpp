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

#include "astopo/generators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "astopo/error.hpp"
#include "astopo/random.hpp"

namespace astopo {

namespace {

struct ModelInfo {
  Model model;
  std::string_view name;
  ModelParams defaults;
};

const std::vector<ModelInfo>& model_table() {
  static const std::vector<ModelInfo> table = {
      {Model::kBA, "BA", {{"m", 2}}},
      {Model::kFKP, "FKP", {{"alpha", 10}}},
      {Model::kGLP, "GLP", {{"m", 1}, {"p", 0.4695}, {"beta", 0.6447}}},
      {Model::kUFKP, "UFKP", {{"m", 1}, {"candidates", 8}}},
      {Model::kBFKP, "BFKP", {{"m", 1}, {"candidates", 8}, {"alpha", 10}}},
      {Model::kMFKP, "MFKP",
       {{"m", 1}, {"candidates", 8}, {"alpha", 10}, {"attract_weight", 1}}},
      {Model::kIG, "IG", {{"p", 0.4}}},
      {Model::kPFP1, "PFP1", {{"p", 0.4}, {"delta", 0.048}}},
      {Model::kPFP2, "PFP2", {{"p", 0.3}, {"q", 0.1}, {"delta", 0.048}}},
  };
  return table;
}

const ModelInfo& info(Model model) {
  for (const auto& i : model_table()) {
    if (i.model == model) return i;
  }
  throw ConfigError("unknown model");
}

// IG-family start from a ring so every early host has non-neighbours to
// take as peers.
constexpr std::size_t kRingSeed = 8;

// Fenwick tree over node weights for exact proportional sampling with
// O(log n) updates.
class WeightTree {
 public:
  explicit WeightTree(std::size_t capacity) : tree_(capacity + 1, 0.0) {
    step_ = 1;
    while (step_ * 2 <= capacity) step_ *= 2;
  }

  void add(std::size_t index, double delta) {
    for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  // Sum of weights at indices 0..index.
  double prefix(std::size_t index) const {
    double sum = 0.0;
    for (std::size_t i = index + 1; i > 0; i -= i & (~i + 1)) sum += tree_[i];
    return sum;
  }

  double total() const {
    double sum = 0.0;
    for (std::size_t i = tree_.size() - 1; i > 0; i -= i & (~i + 1)) sum += tree_[i];
    return sum;
  }

  // Smallest index whose inclusive prefix sum exceeds `target`.
  std::size_t find(double target) const {
    std::size_t pos = 0;
    for (std::size_t step = step_; step > 0; step >>= 1) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return pos;
  }

 private:
  std::vector<double> tree_;
  std::size_t step_;
};

class GrowingGraph {
 public:
  using WeightFn = std::function<double(std::uint32_t degree)>;

  GrowingGraph(std::size_t capacity, WeightFn weight)
      : weight_(std::move(weight)), tree_(weight_ ? capacity : 0) {
    degree_.reserve(capacity);
  }

  NodeIndex add_node() {
    const auto v = static_cast<NodeIndex>(degree_.size());
    degree_.push_back(0);
    adj_.emplace_back();
    if (weight_) set_weight(v, weight_(0));
    return v;
  }

  std::size_t node_count() const { return degree_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::uint32_t degree(NodeIndex v) const { return degree_[v]; }
  double weight(NodeIndex v) const { return current_[v]; }

  bool has_edge(NodeIndex u, NodeIndex v) const { return keys_.contains(key(u, v)); }

  // Sorted by index.
  std::span<const NodeIndex> neighbors(NodeIndex v) const { return adj_[v]; }

  void add_edge(NodeIndex u, NodeIndex v) {
    keys_.insert(key(u, v));
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
    edges_.emplace_back(u + 1, v + 1);
    bump(u);
    bump(v);
  }

  bool saturated(NodeIndex v, std::size_t spare) const {
    return degree_[v] + 1 + spare > degree_.size();
  }

  // Node drawn with probability proportional to its weight, never one of
  // `excluded` (sorted, unique). Binary search over prefix sums with the
  // excluded weight subtracted, so the cost does not depend on how much of
  // the total the excluded nodes hold.
  NodeIndex sample_excluding(Rng& rng, std::span<const NodeIndex> excluded) const {
    std::vector<double> cut(excluded.size() + 1, 0.0);
    for (std::size_t k = 0; k < excluded.size(); ++k) cut[k + 1] = cut[k] + current_[excluded[k]];
    const double allowed = tree_.total() - cut.back();
    if (!(allowed > 0.0)) throw Error("generator: no admissible node left to sample");
    const double target = rng.unit() * allowed;
    auto mass_through = [&](NodeIndex v) {
      const auto k = std::upper_bound(excluded.begin(), excluded.end(), v) - excluded.begin();
      return tree_.prefix(v) - cut[static_cast<std::size_t>(k)];
    };
    NodeIndex lo = 0, hi = static_cast<NodeIndex>(degree_.size() - 1);
    while (lo < hi) {
      const NodeIndex mid = lo + (hi - lo) / 2;
      if (mass_through(mid) > target) hi = mid; else lo = mid + 1;
    }
    // Rounding can land on an excluded or weightless node; move to the next
    // admissible one, wrapping once.
    for (std::size_t step = 0; step < degree_.size(); ++step) {
      const auto v = static_cast<NodeIndex>((lo + step) % degree_.size());
      if (current_[v] > 0.0 && !std::binary_search(excluded.begin(), excluded.end(), v)) {
        return v;
      }
    }
    throw Error("generator: no admissible node left to sample");
  }

  // Node drawn with probability proportional to its weight.
  NodeIndex sample(Rng& rng) const {
    const double target = rng.unit() * tree_.total();
    const std::size_t v = tree_.find(target);
    return static_cast<NodeIndex>(std::min(v, degree_.size() - 1));
  }

  AsGraph finish() const {
    std::vector<Asn> nodes(degree_.size());
    std::iota(nodes.begin(), nodes.end(), Asn{1});
    return AsGraph::from_edges(edges_, nodes);
  }

 private:
  static std::uint64_t key(NodeIndex u, NodeIndex v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  void bump(NodeIndex v) {
    ++degree_[v];
    if (weight_) set_weight(v, weight_(degree_[v]));
  }

  void set_weight(NodeIndex v, double w) {
    if (current_.size() <= v) current_.resize(v + 1, 0.0);
    tree_.add(v, w - current_[v]);
    current_[v] = w;
  }

  WeightFn weight_;
  WeightTree tree_;
  std::vector<std::uint32_t> degree_;
  std::vector<double> current_;
  std::vector<AsnEdge> edges_;
  std::vector<std::vector<NodeIndex>> adj_;
  std::unordered_set<std::uint64_t> keys_;
};

std::size_t as_count(const ModelParams& p, const std::string& key) {
  return static_cast<std::size_t>(std::llround(p.at(key)));
}

void seed_complete(GrowingGraph& g, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) g.add_node();
  for (NodeIndex u = 0; u < k; ++u) {
    for (NodeIndex v = u + 1; v < k; ++v) g.add_edge(u, v);
  }
}

void seed_ring(GrowingGraph& g, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) g.add_node();
  for (NodeIndex u = 0; u < k; ++u) g.add_edge(u, static_cast<NodeIndex>((u + 1) % k));
}

constexpr int kRejectionTries = 64;
constexpr int kPeerTries = 16;

// Node drawn by preference among those `rejected` does not exclude. Plain
// rejection first; when the allowed set carries little of the total weight
// (a hub host whose neighbours hold most of it), fall back to an exact scan.
template <typename Rejected>
NodeIndex sample_allowed(const GrowingGraph& g, Rng& rng, Rejected&& rejected) {
  for (int attempt = 0; attempt < kRejectionTries; ++attempt) {
    const NodeIndex v = g.sample(rng);
    if (!rejected(v)) return v;
  }
  const auto n = static_cast<NodeIndex>(g.node_count());
  double total = 0.0;
  for (NodeIndex v = 0; v < n; ++v) {
    if (!rejected(v)) total += g.weight(v);
  }
  if (total <= 0.0) throw Error("generator: no admissible node left to sample");
  const double target = rng.unit() * total;
  double acc = 0.0;
  NodeIndex last = 0;
  for (NodeIndex v = 0; v < n; ++v) {
    if (rejected(v)) continue;
    acc += g.weight(v);
    last = v;
    if (target < acc) return v;
  }
  return last;
}

// `count` distinct nodes by preference, excluding `excluded`.
std::vector<NodeIndex> distinct_targets(const GrowingGraph& g, Rng& rng, std::size_t count,
                                        std::span<const NodeIndex> excluded = {}) {
  std::vector<NodeIndex> picked;
  while (picked.size() < count) {
    picked.push_back(sample_allowed(g, rng, [&](NodeIndex v) {
      return std::find(picked.begin(), picked.end(), v) != picked.end() ||
             std::find(excluded.begin(), excluded.end(), v) != excluded.end();
    }));
  }
  return picked;
}

AsGraph generate_ba(const GeneratorConfig& c, const ModelParams& p) {
  const std::size_t m = as_count(p, "m");
  Rng rng(c.seed);
  GrowingGraph g(c.n, [](std::uint32_t d) { return static_cast<double>(d); });
  seed_complete(g, m + 1);
  while (g.node_count() < c.n) {
    const auto targets = distinct_targets(g, rng, m);
    const NodeIndex v = g.add_node();
    for (NodeIndex t : targets) g.add_edge(v, t);
  }
  return g.finish();
}

AsGraph generate_fkp(const GeneratorConfig& c, const ModelParams& p) {
  const double alpha = p.at("alpha");
  Rng rng(c.seed);
  GrowingGraph g(c.n, nullptr);
  std::vector<double> x(c.n), y(c.n), hops(c.n, 0.0);
  x[0] = rng.unit();
  y[0] = rng.unit();
  g.add_node();
  for (NodeIndex j = 1; j < c.n; ++j) {
    x[j] = rng.unit();
    y[j] = rng.unit();
    NodeIndex best = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    for (NodeIndex i = 0; i < j; ++i) {
      const double cost = alpha * std::hypot(x[i] - x[j], y[i] - y[j]) + hops[i];
      if (cost < best_cost) {
        best_cost = cost;
        best = i;
      }
    }
    g.add_node();
    g.add_edge(j, best);
    hops[j] = hops[best] + 1.0;
  }
  return g.finish();
}

// UFKP / BFKP / MFKP: score = -log(d+1) [+ alpha * distance]
// [- attract_weight * attractiveness]; lowest scores win.
AsGraph generate_fkp_family(const GeneratorConfig& c, const ModelParams& p) {
  const std::size_t m = as_count(p, "m");
  const std::size_t want = as_count(p, "candidates");
  const bool use_distance = c.model != Model::kUFKP;
  const bool use_attract = c.model == Model::kMFKP;
  const double alpha = use_distance ? p.at("alpha") : 0.0;
  const double attract_weight = use_attract ? p.at("attract_weight") : 0.0;

  Rng rng(c.seed);
  GrowingGraph g(c.n, nullptr);
  std::vector<double> x(c.n), y(c.n), attract(c.n);
  auto place = [&](NodeIndex v) {
    x[v] = rng.unit();
    y[v] = rng.unit();
    attract[v] = rng.unit();
  };
  seed_complete(g, m + 1);
  for (NodeIndex v = 0; v <= m; ++v) place(v);

  std::vector<NodeIndex> pool;
  std::vector<std::pair<double, NodeIndex>> scored;
  while (g.node_count() < c.n) {
    const auto j = static_cast<NodeIndex>(g.node_count());
    place(j);
    const std::size_t existing = g.node_count();
    pool.resize(existing);
    std::iota(pool.begin(), pool.end(), NodeIndex{0});
    std::size_t take = existing;
    if (want != 0 && want < existing) {
      take = std::max(want, m);
      for (std::size_t i = 0; i < take; ++i) {
        std::swap(pool[i], pool[i + rng.below(existing - i)]);
      }
    }
    scored.clear();
    for (std::size_t i = 0; i < take; ++i) {
      const NodeIndex v = pool[i];
      double score = -std::log(static_cast<double>(g.degree(v)) + 1.0);
      if (use_distance) score += alpha * std::hypot(x[v] - x[j], y[v] - y[j]);
      if (use_attract) score -= attract_weight * attract[v];
      scored.emplace_back(score, v);
    }
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(m),
                      scored.end());
    g.add_node();
    for (std::size_t k = 0; k < m; ++k) g.add_edge(j, scored[k].second);
  }
  return g.finish();
}

AsGraph generate_glp(const GeneratorConfig& c, const ModelParams& p) {
  const std::size_t m = as_count(p, "m");
  const double prob = p.at("p");
  const double beta = p.at("beta");
  Rng rng(c.seed);
  GrowingGraph g(c.n, [beta](std::uint32_t d) {
    return d == 0 ? 0.0 : static_cast<double>(d) - beta;
  });
  seed_complete(g, m + 1);
  constexpr int kMaxTries = 1000;
  while (g.node_count() < c.n) {
    if (rng.bernoulli(prob)) {
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t nodes = g.node_count();
        if (g.edge_count() == nodes * (nodes - 1) / 2) break;
        for (int attempt = 0; attempt < kMaxTries; ++attempt) {
          const NodeIndex u = g.sample(rng);
          const NodeIndex v = g.sample(rng);
          if (u != v && !g.has_edge(u, v)) {
            g.add_edge(u, v);
            break;
          }
        }
      }
    } else {
      const auto targets = distinct_targets(g, rng, m);
      const NodeIndex v = g.add_node();
      for (NodeIndex t : targets) g.add_edge(v, t);
    }
  }
  return g.finish();
}

double pfp_weight(std::uint32_t degree, double delta) {
  // Unattached nodes count as degree 1 so they are never locked out.
  const double d = degree == 0 ? 1.0 : static_cast<double>(degree);
  return std::pow(d, 1.0 + delta * std::log10(d));
}

// Host drawn by preference that still has `peers` non-neighbours to link to.
NodeIndex pick_host(const GrowingGraph& g, Rng& rng, std::size_t peers) {
  return sample_allowed(g, rng, [&](NodeIndex h) { return g.saturated(h, peers); });
}

std::vector<NodeIndex> pick_peers(const GrowingGraph& g, Rng& rng, NodeIndex host,
                                  std::size_t count) {
  std::vector<NodeIndex> peers;
  std::vector<NodeIndex> excluded;
  for (std::size_t i = 0; i < count; ++i) {
    NodeIndex v = 0;
    bool found = false;
    for (int attempt = 0; attempt < kPeerTries && !found; ++attempt) {
      v = g.sample(rng);
      found = v != host && !g.has_edge(host, v) &&
              std::find(peers.begin(), peers.end(), v) == peers.end();
    }
    if (!found) {
      std::vector<NodeIndex> extra(peers);
      extra.push_back(host);
      std::sort(extra.begin(), extra.end());
      const auto nb = g.neighbors(host);
      excluded.clear();
      std::set_union(nb.begin(), nb.end(), extra.begin(), extra.end(),
                     std::back_inserter(excluded));
      v = g.sample_excluding(rng, excluded);
    }
    peers.push_back(v);
  }
  return peers;
}

// Interactive growth skeleton shared by IG, PFP1 and PFP2. Each step adds one
// node. Branches:
//   one_host_two_peers   new->host, host->2 peers          (3 edges)
//   one_host_one_peer    new->host, host->1 peer           (2 edges)
//   two_hosts_one_peer   new->h1, new->h2, h1->1 peer      (3 edges)
AsGraph generate_interactive(const GeneratorConfig& c, double p_two_peers,
                             double p_one_peer, GrowingGraph::WeightFn weight) {
  Rng rng(c.seed);
  GrowingGraph g(c.n, std::move(weight));
  seed_ring(g, kRingSeed);
  while (g.node_count() < c.n) {
    const double r = rng.unit();
    std::vector<std::pair<NodeIndex, NodeIndex>> internal;
    std::vector<NodeIndex> hosts;
    if (r < p_two_peers) {
      const NodeIndex h = pick_host(g, rng, 2);
      hosts = {h};
      for (NodeIndex peer : pick_peers(g, rng, h, 2)) internal.emplace_back(h, peer);
    } else if (r < p_two_peers + p_one_peer) {
      const NodeIndex h = pick_host(g, rng, 1);
      hosts = {h};
      for (NodeIndex peer : pick_peers(g, rng, h, 1)) internal.emplace_back(h, peer);
    } else {
      const NodeIndex h1 = pick_host(g, rng, 1);
      const NodeIndex h2 = distinct_targets(g, rng, 1, std::span(&h1, 1)).front();
      hosts = {h1, h2};
      for (NodeIndex peer : pick_peers(g, rng, h1, 1)) internal.emplace_back(h1, peer);
    }
    const NodeIndex v = g.add_node();
    for (NodeIndex h : hosts) g.add_edge(v, h);
    for (const auto& [a, b] : internal) g.add_edge(a, b);
  }
  return g.finish();
}

}  // namespace

const std::vector<Model>& all_models() {
  static const std::vector<Model> models = {Model::kBA,   Model::kFKP,  Model::kGLP,
                                            Model::kUFKP, Model::kBFKP, Model::kMFKP,
                                            Model::kIG,   Model::kPFP1, Model::kPFP2};
  return models;
}

std::string_view model_name(Model model) { return info(model).name; }

std::optional<Model> parse_model(std::string_view name) {
  std::string upper(name);
  for (char& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (const auto& i : model_table()) {
    if (i.name == upper) return i.model;
  }
  return std::nullopt;
}

bool is_approximate_model(Model model) {
  return model == Model::kUFKP || model == Model::kBFKP || model == Model::kMFKP;
}

ModelParams resolved_params(const GeneratorConfig& config) {
  ModelParams out = info(config.model).defaults;
  for (const auto& [key, value] : config.params) {
    if (!out.contains(key)) {
      throw ConfigError("model " + std::string(model_name(config.model)) +
                        " has no parameter '" + key + "'");
    }
    out[key] = value;
  }
  return out;
}

std::size_t seed_graph_size(const GeneratorConfig& config) {
  const auto p = resolved_params(config);
  switch (config.model) {
    case Model::kFKP: return 1;
    case Model::kIG:
    case Model::kPFP1:
    case Model::kPFP2: return kRingSeed;
    default: return as_count(p, "m") + 1;
  }
}

void validate(const GeneratorConfig& config) {
  const auto p = resolved_params(config);
  const std::string name(model_name(config.model));
  auto require = [&](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(name + ": " + what);
  };
  auto probability = [&](const char* key) {
    const double v = p.at(key);
    require(v >= 0.0 && v <= 1.0, std::string(key) + " must lie in [0, 1]");
  };
  auto whole = [&](const char* key, double min) {
    const double v = p.at(key);
    require(v >= min && v == std::floor(v),
            std::string(key) + " must be an integer >= " + std::to_string(int(min)));
  };

  if (p.contains("m")) whole("m", 1);
  if (p.contains("candidates")) whole("candidates", 0);
  if (p.contains("p")) probability("p");
  if (p.contains("q")) probability("q");
  if (p.contains("alpha")) require(p.at("alpha") >= 0.0, "alpha must be nonnegative");
  if (p.contains("delta")) require(p.at("delta") >= 0.0, "delta must be nonnegative");
  switch (config.model) {
    case Model::kGLP:
      // New nodes enter with degree m, the smallest degree the model produces.
      require(p.at("beta") < p.at("m"), "beta must be below m, the minimum degree");
      require(p.at("p") < 1.0, "p must be below 1 or no node is ever added");
      break;
    case Model::kPFP2:
      require(p.at("p") + p.at("q") <= 1.0, "p + q must not exceed 1");
      break;
    case Model::kUFKP:
    case Model::kBFKP:
    case Model::kMFKP:
      require(p.at("candidates") == 0 || p.at("candidates") >= p.at("m"),
              "candidates must be 0 (all nodes) or at least m");
      break;
    default:
      break;
  }
  const std::size_t minimum = seed_graph_size(config);
  require(config.n >= minimum, "n must be at least " + std::to_string(minimum));
  require(config.n < std::numeric_limits<NodeIndex>::max(), "n too large");
}

AsGraph generate(const GeneratorConfig& config) {
  validate(config);
  const auto p = resolved_params(config);
  switch (config.model) {
    case Model::kBA: return generate_ba(config, p);
    case Model::kFKP: return generate_fkp(config, p);
    case Model::kUFKP:
    case Model::kBFKP:
    case Model::kMFKP: return generate_fkp_family(config, p);
    case Model::kGLP: return generate_glp(config, p);
    case Model::kIG:
      return generate_interactive(config, p.at("p"), 0.0,
                                  [](std::uint32_t d) { return static_cast<double>(d); });
    case Model::kPFP1:
    case Model::kPFP2: {
      const double delta = p.at("delta");
      const double q = config.model == Model::kPFP2 ? p.at("q") : 0.0;
      return generate_interactive(config, p.at("p"), q,
                                  [delta](std::uint32_t d) { return pfp_weight(d, delta); });
    }
  }
  throw ConfigError("unknown model");
}

EdgeBudget edge_budget(const GeneratorConfig& config) {
  validate(config);
  const auto p = resolved_params(config);
  const double n = static_cast<double>(config.n);
  switch (config.model) {
    case Model::kFKP: return {n - 1.0, true};
    case Model::kBA:
    case Model::kUFKP:
    case Model::kBFKP:
    case Model::kMFKP: {
      const double m = p.at("m");
      return {m * (m + 1.0) / 2.0 + m * (n - m - 1.0), true};
    }
    case Model::kGLP: {
      // Each node-adding step is preceded by p/(1-p) internal steps on average.
      const double m = p.at("m");
      const double seed_edges = m * (m + 1.0) / 2.0;
      return {seed_edges + (n - m - 1.0) * m / (1.0 - p.at("p")), false};
    }
    case Model::kIG:
    case Model::kPFP1:
      return {static_cast<double>(kRingSeed) + 3.0 * (n - kRingSeed), true};
    case Model::kPFP2:
      return {static_cast<double>(kRingSeed) + (3.0 - p.at("q")) * (n - kRingSeed),
              p.at("q") == 0.0};
  }
  return {};
}

}  // namespace astopo
