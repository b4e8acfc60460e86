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
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "astopo/cli.hpp"
#include "astopo/compare.hpp"
#include "astopo/edge_list.hpp"
#include "astopo/error.hpp"
#include "astopo/generators.hpp"
#include "astopo/ingest.hpp"
#include "astopo/measures.hpp"
#include "astopo/stats.hpp"
#include "json.hpp"
#include "manifest.hpp"

namespace astopo::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Problems with the command line itself (exit 64), as opposed to data.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json optional_json(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory " + dir.string() + ": " + ec.message());
}

std::string cvm_method_name(CvmMethod m) {
  return m == CvmMethod::kPermutation ? "permutation" : "asymptotic";
}

CvmMethod parse_cvm_method(const std::string& name) {
  if (name == "permutation") return CvmMethod::kPermutation;
  if (name == "asymptotic") return CvmMethod::kAsymptotic;
  throw UsageError("unknown test method '" + name + "'");
}

json cvm_json(const CvmResult& r) {
  json j = {{"statistic", r.statistic},      {"p_value", r.p_value},
            {"band", band_label(r.band)},    {"method", cvm_method_name(r.method)},
            {"n", r.n},                      {"m", r.m}};
  if (r.method == CvmMethod::kPermutation) {
    j["permutations"] = r.permutations;
    j["seed"] = r.seed;
  }
  return j;
}

// Shared statistical-test flags.
struct TestFlags {
  std::size_t subsample = 2000;
  std::uint64_t seed = 20100601;
  std::size_t permutations = 9999;
  std::string method = "permutation";

  void attach(CLI::App* app) {
    app->add_option("--subsample", subsample,
                    "Subsample both sides to min(n, m, this) before testing; 0 disables")
        ->capture_default_str();
    app->add_option("--seed", seed, "Seed for subsampling and permutations")
        ->capture_default_str();
    app->add_option("--permutations", permutations, "Permutation replicates")
        ->capture_default_str();
    app->add_option("--method", method, "permutation or asymptotic")->capture_default_str();
  }

  TestSettings settings(unsigned jobs) const {
    TestSettings t;
    t.subsample_size = subsample;
    t.subsample_seed = seed;
    t.cvm.method = parse_cvm_method(method);
    t.cvm.permutations = permutations;
    t.cvm.seed = seed;
    t.cvm.jobs = jobs;
    return t;
  }

  json describe() const {
    return {{"subsample", subsample},
            {"seed", seed},
            {"permutations", permutations},
            {"method", method}};
  }
};

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

struct IngestFlags {
  std::vector<std::string> files;
  std::string month;
  std::string store;
  bool force = false;
  bool filter_private = false;
  bool expand_sets = false;
  bool lenient = false;
};

int cmd_ingest(const IngestFlags& f, const std::vector<std::string>& argv, std::ostream& err) {
  MonthStamp month;
  try {
    month = MonthStamp::parse(f.month);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  for (const auto& file : f.files) {
    if (!fs::is_regular_file(file)) {
      err << "ingest: missing input file " << file << '\n';
      return kExitDataError;
    }
  }
  const fs::path store(f.store);
  const fs::path index_path = store / "index.json";
  SnapshotIndex index;
  if (fs::exists(index_path)) index = SnapshotIndex::load(index_path);
  if (index.months.contains(month) && !f.force) {
    err << "ingest: month " << month.str() << " already in " << index_path.string()
        << "; pass --force to replace it\n";
    return kExitDataError;
  }

  std::vector<std::ifstream> files;
  std::vector<std::istream*> streams;
  files.reserve(f.files.size());
  for (const auto& file : f.files) {
    files.emplace_back(file);
    streams.push_back(&files.back());
  }
  ParseOptions options{f.expand_sets, f.filter_private};
  const auto compiled = compile_month(streams, month, options);
  const auto& st = compiled.stats;
  err << "ingest " << month.str() << ": " << st.lines << " paths, " << st.rejected_lines
      << " rejected, " << st.skipped_set_pairs << " AS-set pairs skipped, "
      << st.self_loops << " self-loops, " << st.private_pairs << " private pairs dropped\n";
  if (st.rejected_lines > 0 && !f.lenient) {
    err << "ingest: " << st.rejected_lines
        << " lines rejected; nothing written (use --lenient to accept)\n";
    return kExitDataError;
  }
  const auto built = build_graph(compiled.observations);

  ensure_dir(store);
  const std::string edge_file = month.str() + ".edges";
  write_edge_list(store / edge_file, built.graph);
  index.months[month] = IndexEntry{edge_file, st};
  index.save(index_path);
  err << "ingest " << month.str() << ": " << built.graph.node_count() << " nodes, "
      << built.graph.edge_count() << " edges\n";

  RunManifest manifest("ingest", argv);
  for (const auto& file : f.files) manifest.add_input(file);
  manifest.set_config({{"month", month.str()},
                       {"filter_private", f.filter_private},
                       {"expand_sets", f.expand_sets},
                       {"lenient", f.lenient}});
  manifest.write(store);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// measure
// ---------------------------------------------------------------------------

struct MeasureFlags {
  std::string graph;
  std::string out;
  bool lcc = false;
  bool whole_graph = false;
  std::vector<std::string> only;
  unsigned jobs = 1;
  double damping = 0.85;
};

template <typename T>
void write_vector(const fs::path& path, const std::string& name, std::span<const Asn> asns,
                  const std::vector<T>& values) {
  auto out = open_out(path);
  out << "asn," << name << '\n';
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << asns[i] << ',' << num(static_cast<double>(values[i])) << '\n';
  }
}

template <typename T>
void write_ccdf(const fs::path& path, const std::vector<T>& values) {
  std::vector<double> v(values.begin(), values.end());
  auto out = open_out(path);
  out << "value,fraction\n";
  for (const auto& p : ccdf(v)) out << num(p.value) << ',' << num(p.fraction) << '\n';
}

int cmd_measure(const MeasureFlags& f, const std::vector<std::string>& argv, std::ostream& err) {
  if (f.lcc && f.whole_graph) throw UsageError("--lcc and --whole-graph are exclusive");
  MeasureSelection sel;
  if (!f.only.empty()) {
    sel = MeasureSelection{false, false, false, false, false, false};
    for (const auto& name : f.only) {
      if (name == "degree") sel.degree = true;
      else if (name == "betweenness") sel.betweenness = true;
      else if (name == "pagerank") sel.pagerank = true;
      else if (name == "path_length") sel.path_length = true;
      else if (name == "clustering") sel.clustering = true;
      else if (name == "core_number") sel.core_number = true;
      else throw UsageError("unknown measure '" + name + "' for --only");
    }
  }
  const AsGraph g = read_edge_list(fs::path(f.graph));
  ReportOptions options;
  options.jobs = f.jobs;
  options.path_on_largest_component = !f.whole_graph;
  options.selection = sel;
  options.pagerank.damping = f.damping;
  err << "measure: " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";
  const auto r = full_report(g, options);

  const fs::path dir(f.out);
  ensure_dir(dir);
  auto emit = [&](const std::string& name, const auto& values, std::span<const Asn> asns) {
    if (values.empty()) return;
    write_vector(dir / (name + ".csv"), name, asns, values);
    write_ccdf(dir / (name + "_ccdf.csv"), values);
  };
  emit("degree", r.degree, r.asns);
  emit("pagerank", r.pagerank, r.asns);
  emit("clustering", r.clustering, r.asns);
  emit("core_number", r.core_number, r.asns);
  emit("betweenness", r.betweenness, r.path_asns);
  emit("path_length", r.path_length, r.path_asns);
  if (!r.betweenness_raw.empty()) {
    write_vector(dir / "betweenness_raw.csv", "betweenness_raw", r.path_asns, r.betweenness_raw);
  }

  json summary = {
      {"nodes", r.node_count},
      {"edges", r.edge_count},
      {"max_degree", r.max_degree},
      {"k_max", r.k_max},
      {"assortativity", optional_json(r.assortativity)},
      {"s_metric_raw", r.s_metric_raw},
      {"s_metric_norm", r.s_metric_norm},
      {"mean_path_length", optional_json(r.mean_path_length)},
      {"mean_clustering", r.mean_clustering},
      {"metadata",
       {{"path_graph", f.whole_graph ? "whole_graph" : "largest_component"},
        {"path_coverage", r.paths_computed ? json(r.path_coverage) : json(nullptr)},
        {"path_nodes", r.path_asns.size()},
        {"s_metric_normalization", "greedy_stub_pairing"},
        {"betweenness_normalization", "(n-1)(n-2)/2"},
        {"pagerank_damping", f.damping}}},
  };
  open_out(dir / "summary.json") << summary.dump(2) << '\n';
  if (r.paths_computed && r.path_coverage < 1.0) {
    err << "measure: path measures on the largest component, coverage "
        << num(r.path_coverage) << '\n';
  }

  RunManifest manifest("measure", argv);
  manifest.add_input(f.graph);
  manifest.set_config({{"only", f.only},
                       {"whole_graph", f.whole_graph},
                       {"damping", f.damping}});
  manifest.write(dir);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateFlags {
  std::string model;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::map<std::string, double> named;
  std::vector<std::string> params;
};

json config_json(const GeneratorConfig& c) {
  return {{"model", model_name(c.model)},
          {"n", c.n},
          {"seed", c.seed},
          {"params", resolved_params(c)},
          {"approximate", is_approximate_model(c.model)}};
}

int cmd_generate(const GenerateFlags& f, const std::vector<std::string>& argv,
                 std::ostream& err) {
  const auto model = parse_model(f.model);
  if (!model) throw UsageError("unknown model '" + f.model + "'");
  GeneratorConfig config{*model, f.n, f.seed, f.named};
  for (const auto& kv : f.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--param expects key=value, got " + kv);
    try {
      config.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--param value is not a number: " + kv);
    }
  }
  EdgeBudget budget;
  try {
    validate(config);
    budget = edge_budget(config);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const AsGraph g = generate(config);

  const fs::path out(f.out);
  if (out.has_parent_path()) ensure_dir(out.parent_path());
  write_edge_list(out, g);
  json sidecar = config_json(config);
  sidecar["nodes"] = g.node_count();
  sidecar["edges"] = g.edge_count();
  sidecar["edge_budget"] = {{"edges", budget.edges}, {"exact", budget.exact}};
  sidecar["seed_graph_nodes"] = seed_graph_size(config);
  open_out(fs::path(out.string() + ".json")) << sidecar.dump(2) << '\n';
  err << "generate " << model_name(config.model) << ": " << g.node_count() << " nodes, "
      << g.edge_count() << " edges\n";

  RunManifest manifest("generate", argv);
  manifest.set_config(config_json(config));
  manifest.add_seed("generator", config.seed);
  manifest.write(out.has_parent_path() ? out.parent_path() : fs::path("."));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

struct CompareFlags {
  std::string reference;
  std::string models;
  std::string out;
  unsigned jobs = 1;
  bool allow_size_mismatch = false;
  TestFlags tests;
};

// One matrix row from a config entry; malformed entries become error rows.
struct RowSpec {
  std::optional<ModelSource> source;
  std::string name;
  std::string error;
};

RowSpec parse_row(const json& entry, const AsGraph& reference, const fs::path& base) {
  RowSpec spec;
  try {
    if (!entry.is_object() || !entry.contains("model")) {
      throw ConfigError("model entry needs a \"model\" field");
    }
    const auto name = entry["model"].get<std::string>();
    spec.name = entry.value("name", name);
    if (name == "reference") {
      spec.source = NamedGraph{spec.name, reference};
      return spec;
    }
    if (name == "graph") {
      fs::path p(entry.at("path").get<std::string>());
      if (p.is_relative()) p = base / p;
      spec.source = NamedGraph{spec.name, read_edge_list(p)};
      return spec;
    }
    const auto model = parse_model(name);
    if (!model) throw ConfigError("unknown model '" + name + "'");
    GeneratorConfig config;
    config.model = *model;
    config.n = entry.value("n", reference.node_count());
    config.seed = entry.value("seed", std::uint64_t{1});
    if (entry.contains("params")) {
      for (const auto& [k, v] : entry["params"].items()) config.params[k] = v.get<double>();
    }
    validate(config);
    spec.name = entry.value("name", std::string(model_name(*model)));
    spec.source = config;
  } catch (const std::exception& e) {
    spec.error = e.what();
  }
  return spec;
}

int cmd_compare(const CompareFlags& f, const std::vector<std::string>& argv, std::ostream& err) {
  const TestSettings settings = f.tests.settings(f.jobs);
  std::ifstream cfg_in(f.models);
  if (!cfg_in) {
    err << "compare: cannot open model config " << f.models << '\n';
    return kExitDataError;
  }
  json cfg;
  try {
    cfg = json::parse(cfg_in);
  } catch (const json::exception& e) {
    throw ParseError("model config " + f.models + ": " + e.what());
  }
  if (!cfg.contains("models") || !cfg["models"].is_array()) {
    throw ParseError("model config " + f.models + " needs a \"models\" array");
  }

  const AsGraph reference = read_edge_list(fs::path(f.reference));
  const fs::path base = fs::path(f.models).parent_path();
  std::vector<RowSpec> specs;
  for (const auto& entry : cfg["models"]) specs.push_back(parse_row(entry, reference, base));
  std::map<std::string, int> name_uses;
  for (const auto& s : specs) ++name_uses[s.name];
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (name_uses[specs[i].name] > 1) specs[i].name += "#" + std::to_string(i);
  }

  std::vector<ModelSource> sources;
  std::vector<std::size_t> source_row;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (specs[i].source) {
      sources.push_back(*specs[i].source);
      source_row.push_back(i);
    }
  }
  CompareOptions options;
  options.tests = settings;
  options.jobs = f.jobs;
  options.allow_size_mismatch = f.allow_size_mismatch;
  options.reference_name = f.reference;
  err << "compare: " << sources.size() << " models against " << reference.node_count()
      << " nodes\n";
  const auto matrix = compare_models(reference, sources, options);

  std::vector<json> errors;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!specs[i].source) {
      errors.push_back({{"row", i}, {"name", specs[i].name}, {"error", specs[i].error}});
    }
  }
  json rows = json::array();
  const fs::path dir(f.out);
  ensure_dir(dir);
  auto csv = open_out(dir / "matrix.csv");
  csv << "model,measure,value,kind,band,p_value\n";
  for (std::size_t k = 0; k < matrix.rows.size(); ++k) {
    const auto& row = matrix.rows[k];
    const std::size_t i = source_row[k];
    const std::string& name = specs[i].name;
    if (row.error) {
      errors.push_back({{"row", i}, {"name", name}, {"error", *row.error}});
      continue;
    }
    json cells = json::object();
    for (std::size_t c = 0; c < row.cells.size(); ++c) {
      const auto& cell = row.cells[c];
      const std::string measure(measure_name(matrix_columns()[c]));
      json jc = {{"kind", cell_kind_name(cell.kind)}, {"value", optional_json(cell.value)}};
      if (cell.band) jc["band"] = band_label(*cell.band);
      if (cell.p_value) jc["p_value"] = *cell.p_value;
      cells[measure] = jc;
      csv << name << ',' << measure << ',' << (cell.value ? num(*cell.value) : "") << ','
          << cell_kind_name(cell.kind) << ',' << (cell.band ? band_label(*cell.band) : "")
          << ',' << (cell.p_value ? num(*cell.p_value) : "") << '\n';
    }
    json jr = {{"row", i}, {"name", name}, {"cells", cells}};
    if (row.config) jr["config"] = config_json(*row.config);
    rows.push_back(jr);
  }
  std::sort(errors.begin(), errors.end(),
            [](const json& a, const json& b) { return a["row"] < b["row"]; });
  for (const auto& e : errors) {
    err << "compare: row " << e["row"].get<std::size_t>() << " ("
        << e["name"].get<std::string>() << ") failed: " << e["error"].get<std::string>()
        << '\n';
  }
  json doc = {{"reference", {{"path", f.reference},
                             {"nodes", matrix.reference_nodes},
                             {"edges", matrix.reference_edges}}},
              {"columns", json::array()},
              {"tests", f.tests.describe()},
              {"rows", rows},
              {"errors", errors}};
  for (Measure m : matrix_columns()) doc["columns"].push_back(measure_name(m));
  open_out(dir / "matrix.json") << doc.dump(2) << '\n';

  RunManifest manifest("compare", argv);
  manifest.add_input(f.reference);
  manifest.add_input(f.models);
  manifest.set_config({{"models", cfg}, {"tests", f.tests.describe()},
                       {"allow_size_mismatch", f.allow_size_mismatch}});
  manifest.add_seed("tests", f.tests.seed);
  manifest.write(dir);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------

struct EvolveFlags {
  std::string index;
  std::string out;
  std::size_t topk = 0;
  bool annual = false;
  int month_of_year = 6;
  bool no_fill = false;
  std::size_t path_sources = 0;
  int min_lifetime = 60;
  unsigned jobs = 1;
  TestFlags tests;
};

int cmd_evolve(const EvolveFlags& f, const std::vector<std::string>& argv, std::ostream& err) {
  if (f.month_of_year < 1 || f.month_of_year > 12) {
    throw UsageError("--month-of-year must be 1..12");
  }
  const TestSettings settings = f.tests.settings(f.jobs);
  SnapshotSeries series = load_series(fs::path(f.index));
  if (series.empty()) throw EmptyInputError("snapshot index lists no months");
  if (!series.filled() && !f.no_fill) series = fill_series(series);
  err << "evolve: " << series.size() << " months"
      << (series.filled() ? " (filled)" : " (raw)") << '\n';

  std::vector<AnnualRow> annual;
  if (f.annual) {
    AnnualOptions options;
    options.month_of_year = f.month_of_year;
    options.report.jobs = f.jobs;
    options.tests = settings;
    annual = annual_change_table(series, options);
  }

  const fs::path dir(f.out);
  ensure_dir(dir);
  {
    auto out = open_out(dir / "counts.csv");
    out << "month,nodes,edges,isolated_nodes\n";
    for (const auto& c : series_counts(series)) {
      out << c.month.str() << ',' << c.nodes << ',' << c.edges << ',' << c.isolated_nodes << '\n';
    }
  }
  {
    EvolutionOptions options;
    options.jobs = f.jobs;
    options.path_sources = f.path_sources;
    options.path_seed = f.tests.seed;
    auto out = open_out(dir / "series.csv");
    out << "month,mean_path_length,mean_clustering,k_max,nodes,edges\n";
    for (const auto& r : evolution_series(series, options)) {
      out << r.month.str() << ',' << (r.mean_path_length ? num(*r.mean_path_length) : "")
          << ',' << num(r.mean_clustering) << ',' << r.k_max << ',' << r.nodes << ','
          << r.edges << '\n';
    }
  }
  if (f.topk > 0) {
    auto out = open_out(dir / "topk.csv");
    out << "month";
    for (std::size_t k = 1; k <= f.topk; ++k) out << ",rank_" << k;
    out << '\n';
    for (const auto& row : topk_degree_series(series, f.topk)) {
      out << row.month.str();
      for (std::size_t k = 0; k < f.topk; ++k) {
        out << ',';
        if (k < row.ranking.size()) out << row.ranking[k].first << ':' << row.ranking[k].second;
      }
      out << '\n';
    }
  }
  if (series.size() >= 2) {
    const auto d = decline_statistics(series, f.min_lifetime);
    json doc = {{"fraction_all", d.fraction_all},
                {"fraction_long_lived", d.fraction_long_lived},
                {"ases", d.ases},
                {"declined", d.declined},
                {"long_lived", d.long_lived},
                {"long_lived_declined", d.long_lived_declined},
                {"min_lifetime_months", d.min_lifetime_months}};
    open_out(dir / "declines.json") << doc.dump(2) << '\n';
  }
  if (f.annual) {
    auto out = open_out(dir / "annual.csv");
    out << "year,month,nodes,edges";
    for (Measure m : distributional_measures()) out << ',' << measure_name(m);
    out << ",K-max,Assort.,S-Metric\n";
    for (const auto& row : annual) {
      out << row.year << ',' << row.month.str() << ',' << row.nodes << ',' << row.edges;
      for (std::size_t i = 0; i < distributional_measures().size(); ++i) {
        out << ',';
        if (i < row.changes.size()) out << band_label(row.changes[i].band);
      }
      out << ',' << row.k_max << ','
          << (row.assortativity ? num(*row.assortativity) : "") << ','
          << num(row.s_metric) << '\n';
    }
  }

  RunManifest manifest("evolve", argv);
  manifest.add_input(f.index);
  manifest.set_config({{"topk", f.topk},
                       {"annual", f.annual},
                       {"month_of_year", f.month_of_year},
                       {"fill", !f.no_fill},
                       {"path_sources", f.path_sources},
                       {"min_lifetime_months", f.min_lifetime},
                       {"tests", f.tests.describe()}});
  manifest.add_seed("tests", f.tests.seed);
  manifest.write(dir);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// cvm
// ---------------------------------------------------------------------------

// One value per line; a CSV line contributes its last field. Lines that do
// not parse as numbers (headers) are skipped.
std::vector<double> read_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open value file " + path);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    const auto comma = line.rfind(',');
    std::string field = comma == std::string::npos ? line : line.substr(comma + 1);
    std::istringstream s(field);
    double x;
    std::string rest;
    if (s >> x && !(s >> rest)) values.push_back(x);
  }
  if (values.empty()) throw EmptyInputError("no numeric values in " + path);
  return values;
}

struct CvmFlags {
  std::string a;
  std::string b;
  unsigned jobs = 1;
  TestFlags tests{0};
};

int cmd_cvm(const CvmFlags& f, std::ostream& out) {
  auto a = read_values(f.a);
  auto b = read_values(f.b);
  const auto settings = f.tests.settings(f.jobs);
  if (settings.subsample_size > 0) {
    const std::size_t k = std::min({a.size(), b.size(), settings.subsample_size});
    a = subsample(a, k, settings.subsample_seed);
    b = subsample(b, k, settings.subsample_seed);
  }
  CvmResult result;
  try {
    result = cvm_test(a, b, settings.cvm);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  out << cvm_json(result).dump() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"AS-level topology analysis: ingest, measure, generate, compare, evolve"};
  app.name("astopo");
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::function<int()> action;
  const std::vector<std::string> argv = args;

  IngestFlags ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Compile ASPATH dumps into a monthly snapshot");
  ingest_cmd->add_option("files", ingest.files, "ASPATH text files")->required();
  ingest_cmd->add_option("--month", ingest.month, "Month stamp YYYY-MM")->required();
  ingest_cmd->add_option("--store", ingest.store, "Snapshot directory holding index.json")
      ->required();
  ingest_cmd->add_flag("--force", ingest.force, "Replace an existing month");
  ingest_cmd->add_flag("--filter-private", ingest.filter_private, "Drop pairs with private ASNs");
  ingest_cmd->add_flag("--expand-sets", ingest.expand_sets, "Expand AS-sets into adjacencies");
  ingest_cmd->add_flag("--lenient", ingest.lenient, "Write the snapshot despite rejected lines");
  ingest_cmd->callback([&] { action = [&] { return cmd_ingest(ingest, argv, err); }; });

  MeasureFlags measure;
  auto* measure_cmd = app.add_subcommand("measure", "Compute every measure on one graph");
  measure_cmd->add_option("graph", measure.graph, "Edge-list file")->required();
  measure_cmd->add_option("--out", measure.out, "Output directory")->required();
  measure_cmd->add_flag("--lcc", measure.lcc, "Path measures on the largest component (default)");
  measure_cmd->add_flag("--whole-graph", measure.whole_graph,
                        "Path measures on the whole graph (must be connected)");
  measure_cmd->add_option("--only", measure.only, "Subset of per-node measures")
      ->delimiter(',');
  measure_cmd->add_option("--jobs", measure.jobs, "Worker threads")->capture_default_str();
  measure_cmd->add_option("--damping", measure.damping, "PageRank damping")
      ->capture_default_str();
  measure_cmd->callback([&] { action = [&] { return cmd_measure(measure, argv, err); }; });

  GenerateFlags gen;
  auto* gen_cmd = app.add_subcommand("generate", "Grow a synthetic topology");
  gen_cmd->add_option("model", gen.model,
                      "BA, FKP, GLP, UFKP, BFKP, MFKP, IG, PFP1 or PFP2")->required();
  gen_cmd->add_option("--n", gen.n, "Node count")->required();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Edge-list output path")->required();
  for (const char* key : {"m", "alpha", "p", "q", "beta", "delta", "candidates"}) {
    gen_cmd->add_option_function<double>(
        std::string("--") + key, [&gen, key](double v) { gen.named[key] = v; },
        std::string("Model parameter ") + key);
  }
  gen_cmd->add_option_function<double>(
      "--attract-weight", [&gen](double v) { gen.named["attract_weight"] = v; },
      "MFKP attractiveness weight");
  gen_cmd->add_option("--param", gen.params, "Extra parameter key=value");
  gen_cmd->callback([&] { action = [&] { return cmd_generate(gen, argv, err); }; });

  CompareFlags cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Evaluate models against a reference graph");
  cmp_cmd->add_option("reference", cmp.reference, "Reference edge list")->required();
  cmp_cmd->add_option("--models", cmp.models, "Model batch config (JSON)")->required();
  cmp_cmd->add_option("--out", cmp.out, "Output directory")->required();
  cmp_cmd->add_option("--jobs", cmp.jobs, "Worker threads")->capture_default_str();
  cmp_cmd->add_flag("--allow-size-mismatch", cmp.allow_size_mismatch,
                    "Accept models whose n differs from the reference");
  cmp.tests.attach(cmp_cmd);
  cmp_cmd->callback([&] { action = [&] { return cmd_compare(cmp, argv, err); }; });

  EvolveFlags evo;
  auto* evo_cmd = app.add_subcommand("evolve", "Time series over a snapshot index");
  evo_cmd->add_option("index", evo.index, "Snapshot index.json")->required();
  evo_cmd->add_option("--out", evo.out, "Output directory")->required();
  evo_cmd->add_option("--topk", evo.topk, "Track the k highest-degree ASes");
  evo_cmd->add_flag("--annual", evo.annual, "Year-over-year change table");
  evo_cmd->add_option("--month-of-year", evo.month_of_year, "Month used per year")
      ->capture_default_str();
  evo_cmd->add_flag("--no-fill", evo.no_fill, "Skip first-to-last persistence fill");
  evo_cmd->add_option("--path-sources", evo.path_sources,
                      "Sampled BFS sources for mean path length; 0 is exact")
      ->capture_default_str();
  evo_cmd->add_option("--min-lifetime", evo.min_lifetime,
                      "Months alive to count as long-lived in decline statistics")
      ->capture_default_str();
  evo_cmd->add_option("--jobs", evo.jobs, "Worker threads")->capture_default_str();
  evo.tests.attach(evo_cmd);
  evo_cmd->callback([&] { action = [&] { return cmd_evolve(evo, argv, err); }; });

  CvmFlags cvm;
  auto* cvm_cmd = app.add_subcommand("cvm", "Two-sample Cramér-von Mises test on value files");
  cvm_cmd->add_option("a", cvm.a, "First sample file")->required();
  cvm_cmd->add_option("b", cvm.b, "Second sample file")->required();
  cvm_cmd->add_option("--jobs", cvm.jobs, "Worker threads")->capture_default_str();
  cvm.tests.attach(cvm_cmd);
  cvm_cmd->callback([&] { action = [&] { return cmd_cvm(cvm, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "astopo: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "astopo: " << e.what() << '\n';
    return kExitDataError;
  }
}

}  // namespace astopo::cli
