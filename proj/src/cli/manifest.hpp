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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace astopo::cli {

std::string sha256_hex(std::string_view data);
std::string file_sha256(const std::filesystem::path& path);

// manifest.json written into every output directory.
class RunManifest {
 public:
  RunManifest(std::string command, std::vector<std::string> args);

  void add_input(const std::filesystem::path& path);
  void set_config(nlohmann::json config) { config_ = std::move(config); }
  void add_seed(const std::string& name, std::uint64_t seed) { seeds_[name] = seed; }

  // Overwrites <dir>/manifest.json.
  void write(const std::filesystem::path& dir) const;

 private:
  std::string command_;
  std::vector<std::string> args_;
  nlohmann::json config_ = nlohmann::json::object();
  std::map<std::string, std::string> inputs_;
  std::map<std::string, std::uint64_t> seeds_;
  std::string started_at_;
};

}  // namespace astopo::cli
