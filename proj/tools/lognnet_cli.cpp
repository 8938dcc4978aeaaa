// lognnet — command-line front door for the chaotic-reservoir classifier.
//
// Subcommands:
//   train         search (optional) + final training; writes model + reports
//   evaluate      k-fold or holdout protocol, or score a saved model
//   predict       classify one inline vector or a batch file with a saved model
//   estimate-ram  byte-exact deployment cost of an N:P:H:M architecture
//   export        binary model -> editable JSON description
//   import        JSON description -> byte-identical binary model
//
// train and evaluate consume one declarative run configuration: a JSON file
// (--config) whose keys are mirrored one-to-one by flags (--learning-rate
// overrides "learning_rate", and so on). Flags win over the file, the file
// wins over defaults. A manifest written by a previous run is itself a valid
// --config argument, which is what makes runs replayable.
//
// All randomness flows from exactly two named seeds: training_seed (weight
// init, epoch shuffling, and fold assignment) and search_seed (the swarm).
//
// Exit status is 0 iff every requested artifact was written; any failure
// removes the artifacts written so far, prints a human-readable line and a
// machine-readable JSON error record to stderr, and exits nonzero.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lognnet/budget.hpp"
#include "lognnet/data.hpp"
#include "lognnet/metrics.hpp"
#include "lognnet/model_io.hpp"
#include "lognnet/pipeline.hpp"
#include "lognnet/protocols.hpp"
#include "lognnet/search.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lognnet;

namespace {

constexpr const char* kToolVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Run configuration: flat key set, defaults, file overlay, flag overrides.
// ---------------------------------------------------------------------------

json default_config() {
  return json{{"dataset", ""},
              {"loader", ""},
              {"schema_sidecar", ""},
              {"arch", ""},
              {"map", "logistic"},
              {"params", json::array()},
              {"divisor", 784.0},
              {"search", false},
              {"epochs", 50},
              {"learning_rate", 0.05},
              {"shuffle", false},
              {"particles", 20},
              {"iterations", 30},
              {"inertia", 0.729},
              {"cognitive", 1.49445},
              {"social", 1.49445},
              {"target_metric", nullptr},
              {"search_epochs", 0},
              {"protocol", ""},
              {"kfold_k", 5},
              {"training_seed", 1},
              {"search_seed", 2},
              {"output_dir", ""}};
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("'" + path + "': " + e.what());
  }
  return j;
}

// Accepts either a plain config object or a manifest from a previous run
// (recognized by its embedded "config" object), validates every key against
// the default set, and overlays the result onto `cfg`.
void overlay_config_file(json& cfg, const std::string& path) {
  json file = parse_json_file(path);
  if (file.is_object() && file.contains("config") && file["config"].is_object())
    file = file["config"];
  if (!file.is_object()) throw std::runtime_error("config '" + path + "': expected a JSON object");

  const json defaults = default_config();
  for (const auto& [key, value] : file.items()) {
    if (!defaults.contains(key))
      throw std::runtime_error("config '" + path + "': unknown key '" + key + "'");
    const json& d = defaults[key];
    bool ok = true;
    if (key == "params")
      ok = value.is_array() &&
           std::all_of(value.begin(), value.end(), [](const json& v) { return v.is_number(); });
    else if (key == "target_metric")
      ok = value.is_null() || value.is_number();
    else if (d.is_string())
      ok = value.is_string();
    else if (d.is_boolean())
      ok = value.is_boolean();
    else if (d.is_number())
      ok = value.is_number() && !(d.is_number_unsigned() && value.is_number() &&
                                  value.get<double>() < 0.0);
    if (!ok)
      throw std::runtime_error("config '" + path + "': bad value for '" + key + "'");
    cfg[key] = value;
  }
}

// Bound flag storage for the config-mirroring options of train/evaluate.
struct ConfigFlags {
  CLI::App* sub = nullptr;
  std::string config_path;
  std::string dataset, loader, schema_sidecar, arch, map, params_text, protocol, output_dir;
  double divisor = 784.0, learning_rate = 0.05, inertia = 0.729, cognitive = 1.49445,
         social = 1.49445, target_metric = 0.0;
  bool search = false, shuffle = false;
  std::size_t epochs = 50, particles = 20, iterations = 30, search_epochs = 0, kfold_k = 5;
  std::uint64_t training_seed = 1, search_seed = 2;
};

void add_config_options(CLI::App* sub, ConfigFlags& f) {
  f.sub = sub;
  sub->add_option("--config", f.config_path,
                  "JSON run configuration (or a manifest from a previous run)");
  sub->add_option("--dataset", f.dataset, "dataset file path");
  sub->add_option("--loader", f.loader, "loader kind: ctg | covid | generic-csv");
  sub->add_option("--schema-sidecar", f.schema_sidecar,
                  "loader sidecar JSON (covid column mapping / generic-csv schema)");
  sub->add_option("--arch", f.arch, "architecture N:P:H:M");
  sub->add_option("--map", f.map, "chaotic map kind");
  sub->add_option("--params", f.params_text, "explicit map parameters, comma-separated");
  sub->add_option("--divisor", f.divisor, "seed wavelength divisor (sine-seeded map only)");
  sub->add_flag("--search,!--no-search", f.search, "swarm-search the map parameters");
  sub->add_option("--epochs", f.epochs, "final training epochs");
  sub->add_option("--learning-rate", f.learning_rate, "SGD learning rate");
  sub->add_flag("--shuffle,!--no-shuffle", f.shuffle, "reshuffle examples each epoch");
  sub->add_option("--particles", f.particles, "swarm size");
  sub->add_option("--iterations", f.iterations, "swarm iterations");
  sub->add_option("--inertia", f.inertia, "swarm inertia weight");
  sub->add_option("--cognitive", f.cognitive, "swarm cognitive constant");
  sub->add_option("--social", f.social, "swarm social constant");
  sub->add_option("--target-metric", f.target_metric,
                  "stop the search early at this fitness");
  sub->add_option("--search-epochs", f.search_epochs,
                  "shortened epoch budget per fitness evaluation (0 = full)");
  sub->add_option("--protocol", f.protocol, "evaluation protocol: kfold | holdout");
  sub->add_option("--kfold-k", f.kfold_k, "number of folds");
  sub->add_option("--training-seed", f.training_seed,
                  "seed for weight init, shuffling, and fold assignment");
  sub->add_option("--search-seed", f.search_seed, "seed for the swarm");
  sub->add_option("--output-dir", f.output_dir, "artifact directory");
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
    if (used != token.size() || token.empty())
      throw std::runtime_error("bad number '" + token + "' in list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

json resolve_config(const ConfigFlags& f) {
  json cfg = default_config();
  if (!f.config_path.empty()) overlay_config_file(cfg, f.config_path);
  auto given = [&](const char* flag) { return f.sub->count(flag) > 0; };
  if (given("--dataset")) cfg["dataset"] = f.dataset;
  if (given("--loader")) cfg["loader"] = f.loader;
  if (given("--schema-sidecar")) cfg["schema_sidecar"] = f.schema_sidecar;
  if (given("--arch")) cfg["arch"] = f.arch;
  if (given("--map")) cfg["map"] = f.map;
  if (given("--params")) cfg["params"] = parse_double_list(f.params_text);
  if (given("--divisor")) cfg["divisor"] = f.divisor;
  if (given("--search") || given("--no-search")) cfg["search"] = f.search;
  if (given("--epochs")) cfg["epochs"] = f.epochs;
  if (given("--learning-rate")) cfg["learning_rate"] = f.learning_rate;
  if (given("--shuffle") || given("--no-shuffle")) cfg["shuffle"] = f.shuffle;
  if (given("--particles")) cfg["particles"] = f.particles;
  if (given("--iterations")) cfg["iterations"] = f.iterations;
  if (given("--inertia")) cfg["inertia"] = f.inertia;
  if (given("--cognitive")) cfg["cognitive"] = f.cognitive;
  if (given("--social")) cfg["social"] = f.social;
  if (given("--target-metric")) cfg["target_metric"] = f.target_metric;
  if (given("--search-epochs")) cfg["search_epochs"] = f.search_epochs;
  if (given("--protocol")) cfg["protocol"] = f.protocol;
  if (given("--kfold-k")) cfg["kfold_k"] = f.kfold_k;
  if (given("--training-seed")) cfg["training_seed"] = f.training_seed;
  if (given("--search-seed")) cfg["search_seed"] = f.search_seed;
  if (given("--output-dir")) cfg["output_dir"] = f.output_dir;
  return cfg;
}

// ---------------------------------------------------------------------------
// Dataset loading with the per-loader sidecar.
// ---------------------------------------------------------------------------

Dataset load_dataset(const json& cfg) {
  const std::string path = cfg["dataset"].get<std::string>();
  const std::string loader = cfg["loader"].get<std::string>();
  const std::string sidecar = cfg["schema_sidecar"].get<std::string>();
  if (path.empty()) throw std::runtime_error("config: 'dataset' is required");
  if (!fs::exists(path)) throw std::runtime_error("dataset file '" + path + "' does not exist");
  if (loader == "ctg") {
    return load_ctg(path);
  }
  if (loader == "covid") {
    CovidColumns cols;
    if (!sidecar.empty()) {
      const json j = parse_json_file(sidecar);
      auto get = [&](const char* key, std::string& into) {
        if (j.contains(key)) into = j[key].get<std::string>();
      };
      get("date", cols.date);
      get("gender", cols.gender);
      get("age", cols.age);
      get("cough", cols.cough);
      get("fever", cols.fever);
      get("sore_throat", cols.sore_throat);
      get("shortness_of_breath", cols.shortness_of_breath);
      get("head_ache", cols.head_ache);
      get("test_indication", cols.test_indication);
      get("corona_result", cols.corona_result);
      if (j.contains("day_first_dates")) cols.day_first_dates = j["day_first_dates"].get<bool>();
    }
    return load_covid(path, cols);
  }
  if (loader == "generic-csv") {
    std::string schema_id = "generic", label_column;
    if (!sidecar.empty()) {
      const json j = parse_json_file(sidecar);
      if (j.contains("id")) schema_id = j["id"].get<std::string>();
      if (j.contains("label_column")) label_column = j["label_column"].get<std::string>();
    }
    return load_generic_csv(path, schema_id, label_column);
  }
  throw std::runtime_error("config: unknown loader '" + loader +
                           "' (expected ctg, covid, or generic-csv)");
}

// ---------------------------------------------------------------------------
// Recipe construction and validation against the dataset schema.
// ---------------------------------------------------------------------------

std::string known_map_names() {
  std::string names;
  for (MapKind k : all_map_kinds()) {
    if (!names.empty()) names += ", ";
    names += map_name(k);
  }
  return names;
}

ModelRecipe build_recipe(const json& cfg, const Schema& schema) {
  const std::string arch_text = cfg["arch"].get<std::string>();
  if (arch_text.empty()) throw std::runtime_error("config: 'arch' is required (N:P:H:M)");
  ModelRecipe recipe;
  recipe.arch = parse_architecture(arch_text);
  if (recipe.arch.n != schema.features())
    throw std::runtime_error("architecture expects N=" + std::to_string(recipe.arch.n) +
                             " inputs but schema '" + schema.id + "' has " +
                             std::to_string(schema.features()) + " features");
  if (recipe.arch.m != schema.classes())
    throw std::runtime_error("architecture expects M=" + std::to_string(recipe.arch.m) +
                             " classes but schema '" + schema.id + "' has " +
                             std::to_string(schema.classes()));

  const std::string map = cfg["map"].get<std::string>();
  if (!map_from_name(map, recipe.kind))
    throw std::runtime_error("unknown map '" + map + "' (known: " + known_map_names() + ")");

  const bool search = cfg["search"].get<bool>();
  std::vector<double> params = cfg["params"].get<std::vector<double>>();
  if (search && !params.empty())
    throw std::runtime_error("config: explicit 'params' and 'search' are mutually exclusive");
  if (!search && params.empty())
    throw std::runtime_error("config: provide explicit 'params' or enable 'search'");

  recipe.train.epochs = cfg["epochs"].get<std::size_t>();
  recipe.train.learning_rate = cfg["learning_rate"].get<double>();
  recipe.train.rng_seed = cfg["training_seed"].get<std::uint64_t>();
  recipe.train.shuffle = cfg["shuffle"].get<bool>();

  const double divisor = cfg["divisor"].get<double>();
  if (search) {
    if (divisor != 784.0)
      throw std::runtime_error(
          "config: 'divisor' applies to explicit params only; the search keeps it at 784");
    SwarmConfig sc;
    sc.particles = cfg["particles"].get<std::size_t>();
    sc.iterations = cfg["iterations"].get<std::size_t>();
    sc.inertia = cfg["inertia"].get<double>();
    sc.cognitive = cfg["cognitive"].get<double>();
    sc.social = cfg["social"].get<double>();
    sc.rng_seed = cfg["search_seed"].get<std::uint64_t>();
    if (!cfg["target_metric"].is_null())
      sc.target_metric = cfg["target_metric"].get<double>();
    recipe.swarm = sc;
    recipe.search_epochs = cfg["search_epochs"].get<std::size_t>();
  } else {
    MapParams mp;
    mp.values = std::move(params);
    mp.divisor = divisor;
    const std::vector<std::string> bad = validate_params(recipe.kind, mp);
    if (!bad.empty()) {
      std::string msg = "map '" + map + "': parameters out of range:";
      for (const std::string& b : bad) msg += " " + b;
      throw std::runtime_error(msg);
    }
    recipe.explicit_params = std::move(mp);
  }
  return recipe;
}

std::string require_protocol(const json& cfg) {
  const std::string protocol = cfg["protocol"].get<std::string>();
  if (protocol != "kfold" && protocol != "holdout")
    throw std::runtime_error("config: 'protocol' must be 'kfold' or 'holdout'");
  return protocol;
}

// ---------------------------------------------------------------------------
// Artifacts: all-or-nothing file writing with rollback on failure.
// ---------------------------------------------------------------------------

class ArtifactSink {
 public:
  explicit ArtifactSink(const std::string& dir) : dir_(dir) {
    if (dir.empty()) throw std::runtime_error("config: 'output_dir' is required");
    fs::create_directories(dir_);
  }

  fs::path path(const std::string& name) const { return dir_ / name; }

  // For files an API writes directly (save_model): register before writing so
  // a partial file is removed on failure.
  void note(const std::string& name) { written_.push_back(path(name)); }

  void write_text(const std::string& name, const std::string& content) {
    note(name);
    std::ofstream out(path(name), std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write '" + path(name).string() + "'");
  }

  void write_lines(const std::string& name, const std::vector<json>& lines) {
    std::string text;
    for (const json& line : lines) {
      text += line.dump();
      text += '\n';
    }
    write_text(name, text);
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const fs::path& p : written_) out.push_back(p.filename().string());
    return out;
  }

  void report(std::ostream& out) const {
    for (const fs::path& p : written_) out << "wrote " << p.string() << "\n";
  }

  void rollback() {
    std::error_code ec;
    for (const fs::path& p : written_) fs::remove(p, ec);
    written_.clear();
  }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
};

std::string iso_utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json make_manifest(const std::string& command, const json& cfg,
                   const std::vector<std::string>& artifacts) {
  return json{{"tool", "lognnet"},
              {"tool_version", kToolVersion},
              {"model_file_version", kModelFileVersion},
              {"command", command},
              {"created", iso_utc_now()},
              {"seeds",
               {{"training", cfg.contains("training_seed") ? cfg["training_seed"] : json()},
                {"search", cfg.contains("search_seed") ? cfg["search_seed"] : json()}}},
              {"config", cfg},
              {"artifacts", artifacts}};
}

// ---------------------------------------------------------------------------
// Report serialization.
// ---------------------------------------------------------------------------

json metrics_to_json(const MetricsReport& r, const std::vector<std::string>& classes,
                     const std::string& kind) {
  json confusion = json::array();
  for (const auto& row : r.confusion.counts) confusion.push_back(row);
  return json{{"kind", kind},
              {"accuracy", r.accuracy},
              {"precision", r.precision},
              {"recall", r.recall},
              {"f1", r.f1},
              {"precision_undefined", r.precision_undefined},
              {"recall_undefined", r.recall_undefined},
              {"f1_undefined", r.f1_undefined},
              {"confusion", confusion},
              {"classes", classes},
              {"examples", r.confusion.total()}};
}

std::vector<json> search_trace_lines(const SearchResult& s) {
  std::vector<json> lines;
  for (const SearchRecord& rec : s.trace)
    lines.push_back(json{{"kind", "eval"},
                         {"iteration", rec.iteration},
                         {"particle", rec.particle},
                         {"position", rec.position},
                         {"fitness", rec.fitness}});
  lines.push_back(json{{"kind", "best"},
                       {"params", s.best_params.values},
                       {"divisor", s.best_params.divisor},
                       {"fitness", s.best_fitness},
                       {"history", s.history}});
  return lines;
}

std::string format_params(const std::vector<double>& values) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ", ";
    out << std::setprecision(6) << values[i];
  }
  out << "]";
  return out.str();
}

void print_search_summary(const SearchResult& s) {
  std::cout << "search: " << s.trace.size() << " evaluations, best fitness " << std::fixed
            << std::setprecision(4) << s.best_fitness << " at "
            << format_params(s.best_params.values) << "\n"
            << std::defaultfloat << std::setprecision(6);
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

int cmd_train(const json& cfg) {
  const std::string protocol = require_protocol(cfg);
  const Dataset ds = load_dataset(cfg);
  std::cout << format_load_summary(ds);
  const ModelRecipe recipe = build_recipe(cfg, ds.schema);
  const std::string model_name = cfg["map"].get<std::string>() + " " + recipe.arch.str();

  Model model;
  std::vector<json> metric_lines;
  std::optional<SearchResult> search;
  std::string tables;

  if (protocol == "holdout") {
    if (!ds.pre_split)
      throw std::runtime_error("holdout protocol requires a dataset with a train/test split; '" +
                               ds.schema.id + "' yields a single corpus (use kfold)");
    HoldoutOutcome out = holdout_evaluate(ds.records, ds.test, ds.schema, recipe);
    if (out.overlap_warning)
      std::cout << "warning: identical row id present in both splits\n";
    model = std::move(out.model);
    search = std::move(out.search);
    metric_lines.push_back(metrics_to_json(out.validation, ds.schema.class_names, "validation"));
    metric_lines.push_back(metrics_to_json(out.test_report, ds.schema.class_names, "test"));
    tables = format_metrics_table(out.validation, ds.schema.class_names, model_name + " validation") +
             format_metrics_table(out.test_report, ds.schema.class_names, model_name + " test");
  } else {
    // kfold protocol: fold-wise scoring belongs to `evaluate`; train always
    // produces one model from the full training corpus.
    FitOutcome out = train_with_recipe(ds.records, ds.schema, recipe);
    model = std::move(out.model);
    search = std::move(out.search);
    metric_lines.push_back(metrics_to_json(out.validation, ds.schema.class_names, "validation"));
    tables = format_metrics_table(out.validation, ds.schema.class_names, model_name + " validation");
  }

  if (search) print_search_summary(*search);
  std::cout << tables;
  const RamBreakdown ram = estimate(recipe.arch);
  const std::string ram_table = format_ram_breakdown(recipe.arch, ram);
  std::cout << ram_table;

  ArtifactSink sink(cfg["output_dir"].get<std::string>());
  try {
    sink.note("model.bin");
    save_model(model, sink.path("model.bin").string());
    sink.write_lines("metrics.jsonl", metric_lines);
    if (search) sink.write_lines("search_trace.jsonl", search_trace_lines(*search));
    sink.write_text("ram.txt", ram_table);
    std::vector<std::string> names = sink.names();
    names.push_back("manifest.json");
    sink.write_text("manifest.json", make_manifest("train", cfg, names).dump(2) + "\n");
  } catch (...) {
    sink.rollback();
    throw;
  }
  sink.report(std::cout);
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

int cmd_evaluate(const json& cfg, const std::string& model_path) {
  const Dataset ds = load_dataset(cfg);
  std::cout << format_load_summary(ds);

  std::vector<json> metric_lines;
  std::optional<SearchResult> search;
  std::string tables;

  if (!model_path.empty()) {
    const Model model = load_model(model_path);
    if (model.schema_id != ds.schema.id || model.arch.n != ds.schema.features() ||
        model.arch.m != ds.schema.classes())
      throw std::runtime_error(
          "model/dataset mismatch: model was trained on schema '" + model.schema_id + "' (" +
          std::to_string(model.arch.n) + " features, " + std::to_string(model.arch.m) +
          " classes); dataset is '" + ds.schema.id + "' (" +
          std::to_string(ds.schema.features()) + " features, " +
          std::to_string(ds.schema.classes()) + " classes)");
    const std::vector<Record>& split = ds.pre_split ? ds.test : ds.records;
    const MetricsReport report = test_model(model, ds.schema, split);
    const std::string name = map_name(model.spec.kind) + " " + model.arch.str();
    metric_lines.push_back(metrics_to_json(report, ds.schema.class_names, "test"));
    tables = format_metrics_table(report, ds.schema.class_names, name + " test");
  } else {
    const std::string protocol = require_protocol(cfg);
    const ModelRecipe recipe = build_recipe(cfg, ds.schema);
    const std::string model_name = cfg["map"].get<std::string>() + " " + recipe.arch.str();
    if (protocol == "kfold") {
      const std::size_t k = cfg["kfold_k"].get<std::size_t>();
      const MetricsReport report = kfold_evaluate(ds.records, ds.schema, k, recipe,
                                                  cfg["training_seed"].get<std::uint64_t>());
      for (std::size_t f = 0; f < report.per_fold.size(); ++f) {
        json line = metrics_to_json(report.per_fold[f], ds.schema.class_names, "fold");
        line["fold"] = f + 1;
        metric_lines.push_back(std::move(line));
      }
      json mean = metrics_to_json(report, ds.schema.class_names, "mean");
      mean["folds"] = k;
      metric_lines.push_back(std::move(mean));
      tables = format_metrics_table(report, ds.schema.class_names, model_name);
    } else {
      if (!ds.pre_split)
        throw std::runtime_error("holdout protocol requires a dataset with a train/test split; '" +
                                 ds.schema.id + "' yields a single corpus (use kfold)");
      HoldoutOutcome out = holdout_evaluate(ds.records, ds.test, ds.schema, recipe);
      if (out.overlap_warning)
        std::cout << "warning: identical row id present in both splits\n";
      search = std::move(out.search);
      metric_lines.push_back(metrics_to_json(out.validation, ds.schema.class_names, "validation"));
      metric_lines.push_back(metrics_to_json(out.test_report, ds.schema.class_names, "test"));
      tables = format_metrics_table(out.test_report, ds.schema.class_names, model_name + " test");
    }
  }

  if (search) print_search_summary(*search);
  std::cout << tables;

  ArtifactSink sink(cfg["output_dir"].get<std::string>());
  try {
    sink.write_lines("metrics.jsonl", metric_lines);
    if (search) sink.write_lines("search_trace.jsonl", search_trace_lines(*search));
    json cfg_with_model = cfg;
    if (!model_path.empty()) cfg_with_model["model"] = model_path;
    std::vector<std::string> names = sink.names();
    names.push_back("manifest.json");
    sink.write_text("manifest.json", make_manifest("evaluate", cfg_with_model, names).dump(2) + "\n");
  } catch (...) {
    sink.rollback();
    throw;
  }
  sink.report(std::cout);
  return 0;
}

// ---------------------------------------------------------------------------
// predict
// ---------------------------------------------------------------------------

Schema schema_for_model(const Model& model) {
  if (model.schema_id == "ctg") return ctg_schema();
  if (model.schema_id == "covid") return covid_schema();
  Schema s;  // generic models carry no vocabulary; synthesize a real-valued one
  s.id = model.schema_id;
  for (std::size_t i = 1; i <= model.arch.n; ++i) s.feature_names.push_back("f" + std::to_string(i));
  s.domains.assign(model.arch.n, DomainKind::Real);
  for (std::size_t k = 0; k < model.arch.m; ++k) s.class_names.push_back("class" + std::to_string(k));
  return s;
}

// Splits on commas, semicolons, and whitespace; an unparseable token becomes
// NaN so schema validation names the offending feature.
std::vector<double> parse_vector_line(const std::string& line) {
  std::vector<double> out;
  std::string token;
  auto flush = [&]() {
    if (token.empty()) return;
    std::size_t used = 0;
    double v = std::numeric_limits<double>::quiet_NaN();
    try {
      v = std::stod(token, &used);
      if (used != token.size()) v = std::numeric_limits<double>::quiet_NaN();
    } catch (const std::exception&) {
    }
    out.push_back(v);
    token.clear();
  };
  for (char c : line) {
    if (c == ',' || c == ';' || std::isspace(static_cast<unsigned char>(c)))
      flush();
    else
      token += c;
  }
  flush();
  return out;
}

int cmd_predict(const std::string& model_path, const std::string& inline_vector,
                const std::string& input_path, const std::string& output_dir) {
  const Model model = load_model(model_path);
  const Schema schema = schema_for_model(model);

  std::vector<std::pair<std::size_t, std::vector<double>>> vectors;
  if (!inline_vector.empty()) {
    vectors.emplace_back(1, parse_vector_line(inline_vector));
  } else {
    std::ifstream in(input_path);
    if (!in) throw std::runtime_error("cannot open '" + input_path + "'");
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
      ++row;
      const std::vector<double> v = parse_vector_line(line);
      if (!v.empty()) vectors.emplace_back(row, v);
    }
    if (vectors.empty()) throw std::runtime_error("'" + input_path + "' contains no vectors");
  }

  const bool batch = inline_vector.empty();
  std::vector<json> lines;
  bool any_invalid = false;
  for (const auto& [row, v] : vectors) {
    std::ostringstream prefix;
    if (batch) prefix << "row=" << row << " ";
    const std::vector<std::string> violations = validate_vector(schema, v);
    if (!violations.empty()) {
      any_invalid = true;
      std::cout << prefix.str() << "invalid:";
      for (const std::string& name : violations) std::cout << " " << name;
      std::cout << "\n";
      lines.push_back(json{{"row", row}, {"violations", violations}});
      continue;
    }
    const Prediction p = predict_patient(model, schema, v);
    std::cout << prefix.str() << "class=" << p.cls << " label=" << p.label << " scores=";
    std::cout << std::fixed << std::setprecision(6);
    for (std::size_t i = 0; i < p.scores.size(); ++i)
      std::cout << (i ? "," : "") << p.scores[i];
    std::cout << std::defaultfloat << std::setprecision(6) << "\n";
    lines.push_back(json{{"row", row}, {"class", p.cls}, {"label", p.label}, {"scores", p.scores}});
  }

  if (!output_dir.empty()) {
    ArtifactSink sink(output_dir);
    try {
      sink.write_lines("predictions.jsonl", lines);
      const json cfg{{"model", model_path},
                     {"vector", inline_vector},
                     {"input", input_path},
                     {"output_dir", output_dir}};
      std::vector<std::string> names = sink.names();
      names.push_back("manifest.json");
      sink.write_text("manifest.json", make_manifest("predict", cfg, names).dump(2) + "\n");
    } catch (...) {
      sink.rollback();
      throw;
    }
    sink.report(std::cout);
  }
  return any_invalid ? 1 : 0;
}

// ---------------------------------------------------------------------------
// estimate-ram / export / import
// ---------------------------------------------------------------------------

int cmd_estimate_ram(const std::string& arch_text, std::optional<std::size_t> limit) {
  const Architecture arch = parse_architecture(arch_text);
  const RamBreakdown b = estimate(arch);
  std::cout << format_ram_breakdown(arch, b);
  if (limit) {
    const FitsResult s = fits(arch, *limit, RamMode::Streaming);
    const FitsResult m = fits(arch, *limit, RamMode::Materialized);
    std::cout << "limit " << *limit << " B: streaming fits = " << (s.fits ? "yes" : "no")
              << " (headroom " << s.headroom << " B), materialized fits = "
              << (m.fits ? "yes" : "no") << " (headroom " << m.headroom << " B)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lognnet — chaotic-reservoir classifier"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  ConfigFlags train_flags, eval_flags;
  CLI::App* train_cmd = app.add_subcommand(
      "train", "search (optional) + final training; writes model and reports");
  add_config_options(train_cmd, train_flags);

  CLI::App* eval_cmd =
      app.add_subcommand("evaluate", "run the kfold/holdout protocol, or score a saved model");
  add_config_options(eval_cmd, eval_flags);
  std::string eval_model;
  eval_cmd->add_option("--model", eval_model, "score this saved model instead of training");

  CLI::App* predict_cmd =
      app.add_subcommand("predict", "classify vectors with a saved model");
  std::string predict_model, predict_vector, predict_input, predict_outdir;
  predict_cmd->add_option("--model", predict_model, "saved model file")->required();
  CLI::Option* vec_opt =
      predict_cmd->add_option("--vector", predict_vector, "one inline vector, comma-separated");
  CLI::Option* input_opt =
      predict_cmd->add_option("--input", predict_input, "batch file, one vector per line");
  vec_opt->excludes(input_opt);
  input_opt->excludes(vec_opt);
  predict_cmd->add_option("--output-dir", predict_outdir,
                          "also write predictions.jsonl and a manifest here");

  CLI::App* ram_cmd =
      app.add_subcommand("estimate-ram", "deployment RAM breakdown for an architecture");
  std::string ram_arch;
  std::size_t ram_limit = 0;
  ram_cmd->add_option("arch", ram_arch, "architecture N:P:H:M")->required();
  CLI::Option* limit_opt = ram_cmd->add_option("--limit", ram_limit, "RAM budget in bytes");

  CLI::App* export_cmd =
      app.add_subcommand("export", "binary model -> editable JSON description");
  std::string export_model, export_json;
  export_cmd->add_option("model", export_model, "binary model file")->required();
  export_cmd->add_option("json", export_json, "JSON output path")->required();

  CLI::App* import_cmd =
      app.add_subcommand("import", "JSON description -> byte-identical binary model");
  std::string import_json, import_model;
  import_cmd->add_option("json", import_json, "JSON description file")->required();
  import_cmd->add_option("model", import_model, "binary model output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*train_cmd) return cmd_train(resolve_config(train_flags));
    if (*eval_cmd) return cmd_evaluate(resolve_config(eval_flags), eval_model);
    if (*predict_cmd)
      return cmd_predict(predict_model, predict_vector, predict_input, predict_outdir);
    if (*ram_cmd)
      return cmd_estimate_ram(ram_arch, limit_opt->count() ? std::optional<std::size_t>(ram_limit)
                                                           : std::nullopt);
    if (*export_cmd) {
      export_model_json(export_model, export_json);
      std::cout << "wrote " << export_json << "\n";
      return 0;
    }
    if (*import_cmd) {
      import_model_json(import_json, import_model);
      std::cout << "wrote " << import_model << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n"
              << json{{"error", {{"command", command}, {"message", e.what()}}}}.dump() << "\n";
    return 1;
  }
  return 0;
}
