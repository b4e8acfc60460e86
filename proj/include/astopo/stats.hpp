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
#include <string_view>
#include <vector>

namespace astopo {

// Significance bands, rendered exactly as "NS", "*", "**", "***", "****".
enum class Band { kNS = 0, kOne = 1, kTwo = 2, kThree = 3, kFour = 4 };

Band band_for(double p_value);
std::string_view band_label(Band band);
std::optional<Band> parse_band(std::string_view label);
inline int stars(Band band) { return static_cast<int>(band); }

/// Two-sample Cramér-von Mises T from pooled midranks.
///
/// With the sorted pooled ranks r_i of the first sample (size n) and s_j of
/// the second (size m), N = n + m:
///   U = n * sum (r_i - i)^2 + m * sum (s_j - j)^2
///   T = U / (n m N) - (4 m n - 1) / (6 N)
double cvm_statistic(std::span<const double> a, std::span<const double> b);

/// Limiting distribution of the one-sample omega^2 statistic, which is also
/// the large-sample law of T.
double cvm_limit_cdf(double x);

enum class CvmMethod { kPermutation, kAsymptotic };

struct CvmOptions {
  CvmMethod method = CvmMethod::kPermutation;
  std::size_t permutations = 9999;
  std::uint64_t seed = 20100601;
  unsigned jobs = 1;
};

struct CvmResult {
  double statistic = 0.0;
  double p_value = 1.0;
  Band band = Band::kNS;
  CvmMethod method = CvmMethod::kPermutation;
  std::size_t n = 0;  // first sample
  std::size_t m = 0;  // second sample
  std::size_t permutations = 0;
  std::uint64_t seed = 0;
};

/// Permutation p = (1 + #{replicates with T >= observed}) / (B + 1); each
/// replicate draws from its own seed-derived substream, so the result is
/// bit-identical for any `jobs`. Throws ConfigError when B < 99.
CvmResult cvm_test(std::span<const double> a, std::span<const double> b,
                   const CvmOptions& options = {});

/// Uniform draw of `size` elements without replacement, deterministic per
/// seed, in draw order. Throws ConfigError when size exceeds the input.
std::vector<double> subsample(std::span<const double> values, std::size_t size,
                              std::uint64_t seed);

}  // namespace astopo
