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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "astopo/cli.hpp"
#include "astopo/edge_list.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = astopo::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("astopo_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

json load_json(const std::string& path) { return json::parse(slurp(path)); }

std::size_t line_count(const std::string& path) {
  const auto text = slurp(path);
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("help, usage errors and unknown subcommands") {
  CHECK(run({"--help"}).code == astopo::cli::kExitOk);
  CHECK(run({}).code == astopo::cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == astopo::cli::kExitUsage);
  CHECK(run({"measure"}).code == astopo::cli::kExitUsage);
  CHECK(run({"generate", "BA", "--n", "10", "--out", "x", "--bogus"}).code ==
        astopo::cli::kExitUsage);
}

TEST_CASE("ingest writes a snapshot and updates the index") {
  TempDir d;
  write(d / "dump.txt", "1 2 3\n");
  const auto r = run({"ingest", "--month", "2002-01", "--store", d / "store", d / "dump.txt"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const auto g = astopo::read_edge_list(fs::path(d / "store/2002-01.edges"));
  CHECK(g.edge_count() == 2);
  const auto idx = load_json(d / "store/index.json");
  CHECK(idx["months"]["2002-01"]["path"] == "2002-01.edges");
  CHECK(idx["filled"] == false);
  CHECK(fs::exists(d / "store/manifest.json"));

  SUBCASE("duplicate month is refused without --force") {
    write(d / "dump2.txt", "1 2 3 4\n");
    CHECK(run({"ingest", "--month", "2002-01", "--store", d / "store", d / "dump2.txt"}).code == 2);
    CHECK(astopo::read_edge_list(fs::path(d / "store/2002-01.edges")).edge_count() == 2);
    CHECK(run({"ingest", "--month", "2002-01", "--store", d / "store", "--force", d / "dump2.txt"})
              .code == 0);
    CHECK(astopo::read_edge_list(fs::path(d / "store/2002-01.edges")).edge_count() == 3);
  }
  SUBCASE("missing input leaves the index untouched") {
    const auto before = slurp(d / "store/index.json");
    const auto r2 =
        run({"ingest", "--month", "2002-02", "--store", d / "store", d / "nope.txt"});
    CHECK(r2.code == 2);
    CHECK(r2.err.find("nope.txt") != std::string::npos);
    CHECK(slurp(d / "store/index.json") == before);
    CHECK_FALSE(fs::exists(d / "store/2002-02.edges"));
  }
}

TEST_CASE("ingest rejects malformed lines unless lenient") {
  TempDir d;
  write(d / "dump.txt", "1 2 3\n1 x 3\n");
  const auto strict = run({"ingest", "--month", "2002-01", "--store", d / "s", d / "dump.txt"});
  CHECK(strict.code == 2);
  CHECK(strict.err.find("1 rejected") != std::string::npos);
  CHECK_FALSE(fs::exists(d / "s/index.json"));
  CHECK(run({"ingest", "--month", "2002-01", "--store", d / "s", "--lenient", d / "dump.txt"})
            .code == 0);
  CHECK(load_json(d / "s/index.json")["months"]["2002-01"]["stats"]["rejected_lines"] == 1);
  CHECK(run({"ingest", "--month", "2002-13", "--store", d / "s", d / "dump.txt"}).code == 64);
}

TEST_CASE("measure writes vectors, CCDFs and a summary") {
  TempDir d;
  write(d / "tri.edges", "1 2\n2 3\n1 3\n");
  REQUIRE(run({"measure", d / "tri.edges", "--out", d / "m"}).code == 0);
  const auto summary = load_json(d / "m/summary.json");
  CHECK(summary["k_max"] == 2);
  CHECK(summary["nodes"] == 3);
  CHECK(summary["edges"] == 3);
  CHECK(summary["mean_clustering"] == 1.0);
  CHECK(summary["assortativity"].is_null());
  for (const char* key : {"max_degree", "s_metric_raw", "s_metric_norm", "mean_path_length"}) {
    CHECK(summary.contains(key));
  }
  CHECK(slurp(d / "m/degree.csv") == "asn,degree\n1,2\n2,2\n3,2\n");
  CHECK(slurp(d / "m/degree_ccdf.csv") == "value,fraction\n2,1\n");
  for (const char* f : {"betweenness", "pagerank", "path_length", "clustering", "core_number"}) {
    CHECK(fs::exists(d / (std::string("m/") + f + ".csv")));
  }
  CHECK(fs::exists(d / "m/betweenness_raw.csv"));
  CHECK(fs::exists(d / "m/manifest.json"));
}

TEST_CASE("measure on a disconnected graph notes component coverage") {
  TempDir d;
  write(d / "g.edges", "1 2\n2 3\n3 1\n10 11\n");
  REQUIRE(run({"measure", d / "g.edges", "--out", d / "m", "--lcc"}).code == 0);
  const auto meta = load_json(d / "m/summary.json")["metadata"];
  CHECK(meta["path_coverage"] == doctest::Approx(0.6));
  CHECK(meta["path_graph"] == "largest_component");
  CHECK(line_count(d / "m/betweenness.csv") == 4);
  CHECK(line_count(d / "m/degree.csv") == 6);
  CHECK(run({"measure", d / "g.edges", "--out", d / "w", "--whole-graph"}).code == 2);
}

TEST_CASE("measure --only restricts the emitted vectors") {
  TempDir d;
  write(d / "g.edges", "1 2\n2 3\n3 4\n4 1\n1 3\n");
  REQUIRE(run({"measure", d / "g.edges", "--out", d / "m", "--only", "degree,clustering"}).code == 0);
  CHECK(fs::exists(d / "m/degree.csv"));
  CHECK(fs::exists(d / "m/clustering.csv"));
  for (const char* f : {"betweenness", "pagerank", "path_length", "core_number"}) {
    CHECK_FALSE(fs::exists(d / (std::string("m/") + f + ".csv")));
  }
  CHECK(run({"measure", d / "g.edges", "--out", d / "m2", "--only", "diameter"}).code == 64);
  CHECK(run({"measure", d / "missing.edges", "--out", d / "m3"}).code == 2);
}

TEST_CASE("generate writes a reproducible edge list with a sidecar") {
  TempDir d;
  REQUIRE(run({"generate", "ba", "--n", "10", "--m", "1", "--seed", "7", "--out", d / "a.edges"})
              .code == 0);
  REQUIRE(run({"generate", "BA", "--n", "10", "--m", "1", "--seed", "7", "--out", d / "b.edges"})
              .code == 0);
  const auto g = astopo::read_edge_list(fs::path(d / "a.edges"));
  CHECK(g.node_count() == 10);
  CHECK(g.edge_count() == 9);
  CHECK(slurp(d / "a.edges") == slurp(d / "b.edges"));
  const auto side = load_json(d / "a.edges.json");
  CHECK(side["model"] == "BA");
  CHECK(side["seed"] == 7);
  CHECK(side["params"]["m"] == 1.0);
  CHECK(side["edges"] == 9);

  CHECK(run({"generate", "asim", "--n", "10", "--out", d / "c.edges"}).code == 64);
  CHECK(run({"generate", "glp", "--n", "100", "--beta", "3", "--out", d / "c.edges"}).code == 64);
  CHECK(run({"generate", "ig", "--n", "100", "--param", "gamma=1", "--out", d / "c.edges"}).code ==
        64);
  CHECK_FALSE(fs::exists(d / "c.edges"));
  REQUIRE(run({"generate", "pfp2", "--n", "200", "--param", "q=0.2", "--out", d / "p.edges"})
              .code == 0);
  CHECK(load_json(d / "p.edges.json")["params"]["q"] == 0.2);
}

TEST_CASE("compare batches, row errors and byte-identical reruns") {
  TempDir d;
  REQUIRE(run({"generate", "glp", "--n", "300", "--seed", "1", "--out", d / "ref.edges"}).code == 0);
  json models = json::array();
  for (const char* m : {"BA", "FKP", "GLP", "UFKP", "BFKP", "MFKP", "IG", "PFP1", "PFP2"}) {
    models.push_back({{"model", m}, {"seed", 3}});
  }
  write(d / "nine.json", json{{"models", models}}.dump());
  const std::vector<std::string> args = {"compare", d / "ref.edges", "--models", d / "nine.json",
                                         "--out", d / "c1", "--permutations", "199"};
  REQUIRE(run(args).code == 0);
  auto matrix = load_json(d / "c1/matrix.json");
  CHECK(matrix["rows"].size() == 9);
  CHECK(matrix["errors"].empty());
  CHECK(line_count(d / "c1/matrix.csv") == 1 + 9 * 10);
  CHECK(matrix["rows"][0]["cells"]["Degree"]["kind"] == "stars_scaled");
  CHECK(matrix["rows"][0]["cells"]["K-max"]["kind"] == "relative_error");

  auto rerun = args;
  rerun[5] = d / "c2";
  REQUIRE(run(rerun).code == 0);
  CHECK(slurp(d / "c1/matrix.csv") == slurp(d / "c2/matrix.csv"));
  CHECK(slurp(d / "c1/matrix.json") == slurp(d / "c2/matrix.json"));

  models[4]["params"] = {{"alpha", -1}, {"m", 0}};
  write(d / "broken.json", json{{"models", models}}.dump());
  REQUIRE(run({"compare", d / "ref.edges", "--models", d / "broken.json", "--out", d / "c3",
               "--permutations", "199"})
              .code == 0);
  matrix = load_json(d / "c3/matrix.json");
  CHECK(matrix["rows"].size() == 8);
  REQUIRE(matrix["errors"].size() == 1);
  CHECK(matrix["errors"][0]["row"] == 4);
  CHECK(fs::exists(d / "c3/manifest.json"));
}

TEST_CASE("compare against the reference itself") {
  TempDir d;
  REQUIRE(run({"generate", "ig", "--n", "300", "--out", d / "ref.edges"}).code == 0);
  write(d / "self.json", R"({"models": [{"model": "reference"}]})");
  REQUIRE(run({"compare", d / "ref.edges", "--models", d / "self.json", "--out", d / "c",
               "--permutations", "199"})
              .code == 0);
  const auto csv = slurp(d / "c/matrix.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "model,measure,value,kind,band,p_value");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.find(",0,") != std::string::npos);
  }
  CHECK(rows == 10);
  CHECK(run({"compare", d / "ref.edges", "--models", d / "none.json", "--out", d / "x"}).code == 2);
  CHECK(run({"compare", d / "ref.edges", "--models", d / "self.json", "--out", d / "x",
             "--method", "bootstrap"})
            .code == 64);
}

TEST_CASE("evolve over a toy index") {
  TempDir d;
  write(d / "a.txt", "1 2 3\n3 4\n");
  write(d / "b.txt", "1 2 3\n2 4\n");
  REQUIRE(run({"ingest", "--month", "2009-06", "--store", d / "s", d / "a.txt"}).code == 0);
  REQUIRE(run({"ingest", "--month", "2010-06", "--store", d / "s", d / "b.txt"}).code == 0);
  REQUIRE(run({"evolve", d / "s/index.json", "--out", d / "e", "--topk", "3", "--annual",
               "--permutations", "199"})
              .code == 0);
  CHECK(line_count(d / "e/series.csv") == 3);
  CHECK(slurp(d / "e/topk.csv").rfind("month,rank_1,rank_2,rank_3\n", 0) == 0);
  CHECK(line_count(d / "e/topk.csv") == 3);
  CHECK(fs::exists(d / "e/declines.json"));
  CHECK(line_count(d / "e/annual.csv") == 3);
  CHECK(slurp(d / "e/annual.csv").find("NS") != std::string::npos);
  CHECK(fs::exists(d / "e/manifest.json"));
}

TEST_CASE("evolve --annual with a single month is an error") {
  TempDir d;
  write(d / "a.txt", "1 2 3\n");
  REQUIRE(run({"ingest", "--month", "2009-06", "--store", d / "s", d / "a.txt"}).code == 0);
  const auto r = run({"evolve", d / "s/index.json", "--out", d / "e", "--annual"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"evolve", d / "s/index.json", "--out", d / "e2", "--month-of-year", "13"}).code == 64);
}

TEST_CASE("cvm subcommand reads value files") {
  TempDir d;
  std::string a = "asn,degree\n", b;
  for (int i = 1; i <= 100; ++i) {
    a += std::to_string(i) + "," + std::to_string(i) + "\n";
    b += std::to_string(i + 200) + "\n";
  }
  write(d / "a.csv", a);
  write(d / "b.txt", b);
  const auto r = run({"cvm", d / "a.csv", d / "b.txt", "--permutations", "999"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["band"] == "***");
  CHECK(j["n"] == 100);
  CHECK(j["method"] == "permutation");
  CHECK(run({"cvm", d / "a.csv", d / "b.txt", "--permutations", "10"}).code == 64);
  CHECK(run({"cvm", d / "a.csv", d / "nothing.txt"}).code == 2);
}
