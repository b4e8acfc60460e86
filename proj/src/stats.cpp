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

#include "astopo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "astopo/error.hpp"
#include "astopo/parallel.hpp"
#include "astopo/random.hpp"

namespace astopo {

Band band_for(double p) {
  if (p < 0.001) return Band::kFour;
  if (p < 0.01) return Band::kThree;
  if (p < 0.05) return Band::kTwo;
  if (p < 0.1) return Band::kOne;
  return Band::kNS;
}

std::string_view band_label(Band band) {
  switch (band) {
    case Band::kNS: return "NS";
    case Band::kOne: return "*";
    case Band::kTwo: return "**";
    case Band::kThree: return "***";
    case Band::kFour: return "****";
  }
  return "NS";
}

std::optional<Band> parse_band(std::string_view label) {
  for (int s = 0; s <= 4; ++s) {
    if (band_label(static_cast<Band>(s)) == label) return static_cast<Band>(s);
  }
  return std::nullopt;
}

namespace {

using Wide = unsigned __int128;

// Pooled sample in ascending order with doubled midranks (always integers).
struct Pooled {
  std::vector<std::int64_t> twice_rank;
  std::vector<char> from_first;  // original labels in sorted order
  std::size_t n = 0;
  std::size_t m = 0;
};

Pooled pool(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw EmptyInputError("Cramér-von Mises needs two nonempty samples");
  const std::size_t total = a.size() + b.size();
  std::vector<std::pair<double, char>> z;
  z.reserve(total);
  for (double x : a) z.emplace_back(x, 1);
  for (double x : b) z.emplace_back(x, 0);
  std::sort(z.begin(), z.end(), [](const auto& l, const auto& r) { return l.first < r.first; });

  Pooled p;
  p.n = a.size();
  p.m = b.size();
  p.twice_rank.resize(total);
  p.from_first.resize(total);
  for (std::size_t i = 0; i < total;) {
    std::size_t j = i;
    while (j < total && z[j].first == z[i].first) ++j;
    // positions i..j-1 share the midrank ((i+1)+j)/2
    const auto twice = static_cast<std::int64_t>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      p.twice_rank[k] = twice;
      p.from_first[k] = z[k].second;
    }
    i = j;
  }
  return p;
}

// 4U, exact.
Wide scaled_u(const Pooled& p, const std::vector<char>& labels) {
  Wide sum_a = 0, sum_b = 0;
  std::int64_t ia = 0, ib = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k]) {
      ++ia;
      const std::int64_t d = p.twice_rank[k] - 2 * ia;
      sum_a += static_cast<Wide>(d * d);
    } else {
      ++ib;
      const std::int64_t d = p.twice_rank[k] - 2 * ib;
      sum_b += static_cast<Wide>(d * d);
    }
  }
  return static_cast<Wide>(p.n) * sum_a + static_cast<Wide>(p.m) * sum_b;
}

double statistic_from(Wide four_u, std::size_t n, std::size_t m) {
  const double N = static_cast<double>(n + m);
  const double nm = static_cast<double>(n) * static_cast<double>(m);
  const double u = static_cast<double>(four_u) / 4.0;
  return u / (nm * N) - (4.0 * nm - 1.0) / (6.0 * N);
}

double asymptotic_p(double t, std::size_t n, std::size_t m) {
  const double N = static_cast<double>(n + m);
  const double k = static_cast<double>(n) * static_cast<double>(m);
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  const double et = (1.0 + 1.0 / N) / 6.0;
  const double vt = (N + 1.0) * (4.0 * k * N - 3.0 * (nn * nn + mm * mm) - 2.0 * k) /
                    (45.0 * N * N * 4.0 * k);
  if (vt <= 0.0) return 1.0;
  const double tn = 1.0 / 6.0 + (t - et) / std::sqrt(45.0 * vt);
  if (tn < 0.003) return 1.0;
  return std::clamp(1.0 - cvm_limit_cdf(tn), 0.0, 1.0);
}

}  // namespace

double cvm_statistic(std::span<const double> a, std::span<const double> b) {
  const Pooled p = pool(a, b);
  return statistic_from(scaled_u(p, p.from_first), p.n, p.m);
}

// Series in modified Bessel functions of the second kind (Csörgő & Faraway).
double cvm_limit_cdf(double x) {
  if (x <= 0.0) return 0.0;
  const double pi = std::numbers::pi;
  double total = 0.0;
  for (int k = 0; k < 500; ++k) {
    const double u = std::exp(std::lgamma(k + 0.5) - std::lgamma(k + 1.0)) /
                     (std::pow(pi, 1.5) * std::sqrt(x));
    const double y = 4.0 * k + 1.0;
    const double q = y * y / (16.0 * x);
    // exp(-q) * K(q) underflows harmlessly once q is large.
    if (q > 700.0) break;
    const double term = u * std::sqrt(y) * std::exp(-q) * std::cyl_bessel_k(0.25, q);
    total += term;
    if (std::abs(term) < 1e-14) break;
  }
  return std::min(total, 1.0);
}

CvmResult cvm_test(std::span<const double> a, std::span<const double> b,
                   const CvmOptions& options) {
  const Pooled p = pool(a, b);
  const Wide observed = scaled_u(p, p.from_first);

  CvmResult result;
  result.statistic = statistic_from(observed, p.n, p.m);
  result.method = options.method;
  result.n = p.n;
  result.m = p.m;

  if (options.method == CvmMethod::kAsymptotic) {
    result.p_value = asymptotic_p(result.statistic, p.n, p.m);
    result.band = band_for(result.p_value);
    return result;
  }

  if (options.permutations < 99) {
    throw ConfigError("at least 99 permutations are required, got " +
                      std::to_string(options.permutations));
  }
  const std::size_t B = options.permutations;
  constexpr std::size_t kBlocks = 64;
  std::vector<std::size_t> exceed(kBlocks, 0);
  parallel_blocks(kBlocks, options.jobs, [&](std::size_t block) {
    std::vector<char> labels(p.n + p.m);
    for (std::size_t r = block * B / kBlocks; r < (block + 1) * B / kBlocks; ++r) {
      std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(p.n), 1);
      std::fill(labels.begin() + static_cast<std::ptrdiff_t>(p.n), labels.end(), 0);
      Rng rng(mix_seed(options.seed, r));
      for (std::size_t i = labels.size() - 1; i > 0; --i) {
        std::swap(labels[i], labels[rng.below(i + 1)]);
      }
      if (scaled_u(p, labels) >= observed) ++exceed[block];
    }
  });
  const std::size_t count = std::accumulate(exceed.begin(), exceed.end(), std::size_t{0});
  result.p_value = static_cast<double>(1 + count) / static_cast<double>(B + 1);
  result.band = band_for(result.p_value);
  result.permutations = B;
  result.seed = options.seed;
  return result;
}

std::vector<double> subsample(std::span<const double> values, std::size_t size,
                              std::uint64_t seed) {
  if (size > values.size()) {
    throw ConfigError("subsample of " + std::to_string(size) + " from " +
                      std::to_string(values.size()) + " values");
  }
  std::vector<double> pool(values.begin(), values.end());
  Rng rng(seed);
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(size);
  return pool;
}

}  // namespace astopo
