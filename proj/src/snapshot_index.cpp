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

#include <fstream>

#include "astopo/edge_list.hpp"
#include "astopo/error.hpp"
#include "astopo/ingest.hpp"
#include "json.hpp"

namespace astopo {

using nlohmann::json;

namespace {

json stats_to_json(const ParseStats& s) {
  return {{"lines", s.lines},
          {"rejected_lines", s.rejected_lines},
          {"skipped_set_pairs", s.skipped_set_pairs},
          {"private_pairs", s.private_pairs},
          {"self_loops", s.self_loops}};
}

ParseStats stats_from_json(const json& j) {
  ParseStats s;
  s.lines = j.value("lines", std::size_t{0});
  s.rejected_lines = j.value("rejected_lines", std::size_t{0});
  s.skipped_set_pairs = j.value("skipped_set_pairs", std::size_t{0});
  s.private_pairs = j.value("private_pairs", std::size_t{0});
  s.self_loops = j.value("self_loops", std::size_t{0});
  return s;
}

}  // namespace

SnapshotIndex SnapshotIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open snapshot index " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("snapshot index " + path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("months") || !doc["months"].is_object()) {
    throw ParseError("snapshot index " + path.string() + ": missing \"months\" object");
  }
  SnapshotIndex index;
  index.filled = doc.value("filled", false);
  for (const auto& [stamp, entry] : doc["months"].items()) {
    if (!entry.is_object() || !entry.contains("path") || !entry["path"].is_string()) {
      throw ParseError("snapshot index entry " + stamp + " lacks a \"path\" string");
    }
    IndexEntry e{entry["path"].get<std::string>(), std::nullopt};
    if (entry.contains("stats")) e.stats = stats_from_json(entry["stats"]);
    index.months.emplace(MonthStamp::parse(stamp), std::move(e));
  }
  return index;
}

void SnapshotIndex::save(const std::filesystem::path& path) const {
  json months = json::object();
  for (const auto& [stamp, entry] : this->months) {
    json e = {{"path", entry.path}};
    if (entry.stats) e["stats"] = stats_to_json(*entry.stats);
    months[stamp.str()] = std::move(e);
  }
  json doc = {{"filled", filled}, {"months", std::move(months)}};
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write " + tmp);
    out << doc.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

SnapshotSeries load_series(const std::filesystem::path& index_path) {
  const auto index = SnapshotIndex::load(index_path);
  const auto base = index_path.parent_path();
  SnapshotSeries series;
  for (const auto& [stamp, entry] : index.months) {
    std::filesystem::path p(entry.path);
    if (p.is_relative()) p = base / p;
    series.add_month(stamp, Snapshot::from_graph(read_edge_list(p)));
  }
  series.set_filled(index.filled);
  return series;
}

}  // namespace astopo
