#include "lognnet/pipeline.hpp"

#include <map>
#include <stdexcept>

namespace lognnet {

namespace {

void require_schema(const Model& model, const Schema& schema) {
  if (schema.id != model.schema_id)
    throw std::invalid_argument("model was trained on schema '" + model.schema_id +
                                "', got '" + schema.id + "'");
  if (schema.features() != model.arch.n)
    throw std::invalid_argument("schema feature count does not match model");
}

std::size_t classify(const Model& model, const Matrix& w,
                     const std::vector<double>& features,
                     std::vector<double>* scores_out) {
  const std::vector<double> y = normalize_input(features, model.input_scaler);
  const std::vector<double> s_prime = project(w, y);
  const std::vector<double> s_h = reservoir_output(s_prime, model.reservoir_scaler);
  ForwardResult f = forward(s_h, model.head);
  if (scores_out) *scores_out = std::move(f.s_out);
  return f.cls;
}

}  // namespace

std::vector<std::size_t> balance_indices(const std::vector<Record>& train) {
  if (train.empty()) throw std::invalid_argument("balance: empty training set");
  std::map<std::size_t, std::vector<std::size_t>> groups;  // ascending label
  for (std::size_t i = 0; i < train.size(); ++i)
    groups[train[i].label].push_back(i);
  std::size_t max_size = 0;
  for (const auto& [label, members] : groups)
    if (members.size() > max_size) max_size = members.size();

  std::vector<std::size_t> out;
  out.reserve(max_size * groups.size());
  for (std::size_t round = 0; round < max_size; ++round)
    for (const auto& [label, members] : groups)
      out.push_back(members[round % members.size()]);
  return out;
}

std::vector<Record> balance(const std::vector<Record>& train) {
  std::vector<Record> out;
  const std::vector<std::size_t> idx = balance_indices(train);
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(train[i]);
  return out;
}

TrainOutcome train_model(const std::vector<Record>& train, const Schema& schema,
                         const Architecture& arch, const MapSpec& spec,
                         const TrainConfig& cfg) {
  if (train.empty()) throw std::invalid_argument("train_model: empty training set");
  if (schema.features() != arch.n)
    throw std::invalid_argument("train_model: schema has " +
                                std::to_string(schema.features()) +
                                " features, architecture expects " +
                                std::to_string(arch.n));
  if (schema.classes() != arch.m)
    throw std::invalid_argument("train_model: schema has " +
                                std::to_string(schema.classes()) +
                                " classes, architecture expects " +
                                std::to_string(arch.m));
  {
    const std::vector<std::string> violations = validate_params(spec.kind, spec.params);
    if (!violations.empty()) {
      std::string msg = "train_model: map parameters out of range:";
      for (const std::string& v : violations) msg += " " + v;
      throw std::invalid_argument(msg);
    }
  }
  for (const Record& r : train) {
    if (r.features.size() != arch.n)
      throw std::invalid_argument("train_model: record length mismatch");
    if (r.label >= arch.m)
      throw std::invalid_argument("train_model: label outside [0, M)");
  }

  Model model;
  model.arch = arch;
  model.spec = spec;
  model.schema_id = schema.id;
  model.train_seed = cfg.rng_seed;

  std::vector<std::vector<double>> raw;
  raw.reserve(train.size());
  for (const Record& r : train) raw.push_back(r.features);
  model.input_scaler = calibrate_input_scaler(raw);

  const Matrix w = fill_matrix(spec, arch.n, arch.p);

  std::vector<std::vector<double>> projections;
  projections.reserve(train.size());
  for (const Record& r : train)
    projections.push_back(project(w, normalize_input(r.features, model.input_scaler)));
  model.reservoir_scaler = calibrate_reservoir_scaler(projections);

  std::vector<std::vector<double>> s_h;
  s_h.reserve(train.size());
  for (const std::vector<double>& sp : projections)
    s_h.push_back(reservoir_output(sp, model.reservoir_scaler));

  const std::vector<std::size_t> order = balance_indices(train);
  std::vector<HeadExample> balanced;
  balanced.reserve(order.size());
  for (std::size_t i : order) balanced.push_back({s_h[i], train[i].label});

  model.head = fit(balanced, arch.h, arch.m, cfg);

  ConfusionMatrix cm(arch.m);
  for (std::size_t i = 0; i < train.size(); ++i)
    ++cm.at(train[i].label, forward(s_h[i], model.head).cls);

  TrainOutcome out;
  out.model = std::move(model);
  out.validation = metrics(cm);
  return out;
}

MetricsReport test_model(const Model& model, const Schema& schema,
                         const std::vector<Record>& test) {
  require_schema(model, schema);
  if (test.empty()) throw std::invalid_argument("test_model: empty test set");
  const Matrix w = fill_matrix(model.spec, model.arch.n, model.arch.p);
  ConfusionMatrix cm(model.arch.m);
  for (const Record& r : test) {
    if (r.features.size() != model.arch.n)
      throw std::invalid_argument("test_model: record length mismatch");
    ++cm.at(r.label, classify(model, w, r.features, nullptr));
  }
  return metrics(cm);
}

Prediction predict_patient(const Model& model, const Schema& schema,
                           const std::vector<double>& v) {
  require_schema(model, schema);
  const std::vector<std::string> violations = validate_vector(schema, v);
  if (!violations.empty()) {
    std::string msg = "feature vector rejected:";
    for (const std::string& name : violations) msg += " " + name;
    throw std::invalid_argument(msg);
  }
  const Matrix w = fill_matrix(model.spec, model.arch.n, model.arch.p);
  Prediction p;
  p.cls = classify(model, w, v, &p.scores);
  p.label = p.cls < schema.class_names.size() ? schema.class_names[p.cls]
                                              : std::to_string(p.cls);
  return p;
}

}  // namespace lognnet
