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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "astopo/graph.hpp"

namespace astopo {

enum class Model { kBA, kFKP, kUFKP, kBFKP, kMFKP, kGLP, kIG, kPFP1, kPFP2 };

// All nine, oldest first (the row order of a comparison matrix).
const std::vector<Model>& all_models();
std::string_view model_name(Model model);          // "BA", "FKP", ...
std::optional<Model> parse_model(std::string_view name);  // case-insensitive

// Parameters keyed by name; anything absent takes the model default.
//   BA    m=2
//   FKP   alpha=10
//   UFKP  m=1 candidates=8
//   BFKP  m=1 candidates=8 alpha=10
//   MFKP  m=1 candidates=8 alpha=10 attract_weight=1
//   GLP   m=1 p=0.4695 beta=0.6447
//   IG    p=0.4
//   PFP1  p=0.4 delta=0.048
//   PFP2  p=0.3 q=0.1 delta=0.048
using ModelParams = std::map<std::string, double>;

struct GeneratorConfig {
  Model model = Model::kBA;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  ModelParams params;
};

// Defaults merged with overrides. Throws ConfigError for unknown keys.
ModelParams resolved_params(const GeneratorConfig& config);

// Throws ConfigError on out-of-range parameters or n below the seed graph.
void validate(const GeneratorConfig& config);

// Nodes of the seed graph the model starts from.
std::size_t seed_graph_size(const GeneratorConfig& config);

// True for models whose objective is a documented approximation of the
// cited family rather than a published form (UFKP, BFKP, MFKP).
bool is_approximate_model(Model model);

/// Grows a connected simple graph of exactly `n` nodes labelled 1..n.
/// Identical configs give identical graphs.
AsGraph generate(const GeneratorConfig& config);

struct EdgeBudget {
  double edges = 0.0;
  bool exact = false;  // false: expectation over seeds
};

EdgeBudget edge_budget(const GeneratorConfig& config);

}  // namespace astopo
