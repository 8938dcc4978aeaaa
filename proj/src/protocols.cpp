#include "lognnet/protocols.hpp"

#include <map>
#include <set>
#include <stdexcept>

#include "lognnet/rng.hpp"

namespace lognnet {

namespace {

TrainConfig shortened(const ModelRecipe& recipe) {
  TrainConfig cfg = recipe.train;
  if (recipe.search_epochs > 0) cfg.epochs = recipe.search_epochs;
  return cfg;
}

}  // namespace

FitOutcome train_with_recipe(const std::vector<Record>& train, const Schema& schema,
                             const ModelRecipe& recipe) {
  if (recipe.explicit_params.has_value() == recipe.swarm.has_value())
    throw std::invalid_argument(
        "recipe must provide either explicit map parameters or a search config");
  FitOutcome out;
  MapParams params;
  if (recipe.swarm) {
    const TrainConfig fitness_cfg = shortened(recipe);
    out.search = optimize(
        [&](const MapParams& p) {
          return fitness_of(train, schema, recipe.arch, recipe.kind, p, fitness_cfg);
        },
        recipe.kind, *recipe.swarm);
    params = out.search->best_params;
  } else {
    params = *recipe.explicit_params;
  }
  TrainOutcome trained =
      train_model(train, schema, recipe.arch, {recipe.kind, params}, recipe.train);
  out.model = std::move(trained.model);
  out.validation = std::move(trained.validation);
  return out;
}

MetricsReport kfold_evaluate(const std::vector<Record>& records, const Schema& schema,
                             std::size_t k, const ModelRecipe& recipe,
                             std::uint64_t fold_seed) {
  if (k < 2) throw std::invalid_argument("kfold: K must be >= 2");
  if (records.size() < k) throw std::invalid_argument("kfold: fewer records than folds");

  // Stratified assignment: shuffle within each class, deal round-robin.
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < records.size(); ++i) groups[records[i].label].push_back(i);
  Rng rng(fold_seed);
  std::vector<std::size_t> fold_of(records.size(), 0);
  for (auto& [label, members] : groups) {
    rng.shuffle(members);
    for (std::size_t t = 0; t < members.size(); ++t) fold_of[members[t]] = t % k;
  }
  for (std::size_t fold = 0; fold < k; ++fold) {
    for (const auto& [label, members] : groups) {
      std::size_t in_training = 0;
      for (std::size_t i : members)
        if (fold_of[i] != fold) ++in_training;
      if (in_training == 0)
        throw std::invalid_argument("kfold: class " + std::to_string(label) +
                                    " absent from the training split of fold " +
                                    std::to_string(fold));
    }
  }

  MetricsReport mean;
  ConfusionMatrix pooled(schema.classes());
  for (std::size_t fold = 0; fold < k; ++fold) {
    std::vector<Record> train_part, test_part;
    for (std::size_t i = 0; i < records.size(); ++i)
      (fold_of[i] == fold ? test_part : train_part).push_back(records[i]);
    const FitOutcome fitted = train_with_recipe(train_part, schema, recipe);
    MetricsReport fold_report = test_model(fitted.model, schema, test_part);
    for (std::size_t a = 0; a < pooled.classes(); ++a)
      for (std::size_t b = 0; b < pooled.classes(); ++b)
        pooled.at(a, b) += fold_report.confusion.at(a, b);
    mean.per_fold.push_back(std::move(fold_report));
  }

  const std::size_t m = schema.classes();
  const double kf = static_cast<double>(k);
  mean.precision.assign(m, 0.0);
  mean.recall.assign(m, 0.0);
  mean.f1.assign(m, 0.0);
  mean.precision_undefined.assign(m, false);
  mean.recall_undefined.assign(m, false);
  mean.f1_undefined.assign(m, false);
  for (const MetricsReport& f : mean.per_fold) {
    mean.accuracy += f.accuracy / kf;
    for (std::size_t c = 0; c < m; ++c) {
      mean.precision[c] += f.precision[c] / kf;
      mean.recall[c] += f.recall[c] / kf;
      mean.f1[c] += f.f1[c] / kf;
      if (f.precision_undefined[c]) mean.precision_undefined[c] = true;
      if (f.recall_undefined[c]) mean.recall_undefined[c] = true;
      if (f.f1_undefined[c]) mean.f1_undefined[c] = true;
    }
  }
  mean.confusion = pooled;
  return mean;
}

HoldoutOutcome holdout_evaluate(const std::vector<Record>& train,
                                const std::vector<Record>& test,
                                const Schema& schema, const ModelRecipe& recipe) {
  HoldoutOutcome out;
  std::set<std::size_t> train_ids;
  for (const Record& r : train) train_ids.insert(r.row_id);
  for (const Record& r : test)
    if (train_ids.count(r.row_id)) {
      out.overlap_warning = true;
      break;
    }
  FitOutcome fitted = train_with_recipe(train, schema, recipe);
  out.test_report = test_model(fitted.model, schema, test);
  out.model = std::move(fitted.model);
  out.validation = std::move(fitted.validation);
  out.search = std::move(fitted.search);
  return out;
}

}  // namespace lognnet
