#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lognnet/pipeline.hpp"
#include "lognnet/search.hpp"

namespace lognnet {

// How to produce one trained model: either explicit map parameters or a
// particle-swarm search over the map's box. `search_epochs` shortens the
// per-fitness training budget (0 keeps the full epoch count); the final
// model is always retrained at the full budget with the winning parameters.
struct ModelRecipe {
  Architecture arch;
  MapKind kind = MapKind::Logistic;
  std::optional<MapParams> explicit_params;
  TrainConfig train;
  std::optional<SwarmConfig> swarm;
  std::size_t search_epochs = 0;
};

struct FitOutcome {
  Model model;
  MetricsReport validation;
  std::optional<SearchResult> search;
};

// Search (when enabled) then final full-budget training on `train`.
FitOutcome train_with_recipe(const std::vector<Record>& train, const Schema& schema,
                             const ModelRecipe& recipe);

// Seeded stratified K-fold: per-class index groups are shuffled (one
// generator, ascending label order) and dealt round-robin, keeping class
// ratios within one example. Each fold is tested with a model trained —
// including balancing and any search — on the other K−1 folds only; the
// test fold is never balanced. Scalar metrics of the returned report are
// unweighted fold means (undefined-flagged values contribute their 0 and
// set the mean's flag); `per_fold` holds the individual reports and
// `confusion` the pooled counts. A class absent from any training split is
// an error before training.
MetricsReport kfold_evaluate(const std::vector<Record>& records, const Schema& schema,
                             std::size_t k, const ModelRecipe& recipe,
                             std::uint64_t fold_seed);

struct HoldoutOutcome {
  Model model;
  MetricsReport test_report;
  MetricsReport validation;
  std::optional<SearchResult> search;
  bool overlap_warning = false;  // identical row id present in both splits
};

// One train (plus optional search) on the training split, one evaluation on
// the untouched test split.
HoldoutOutcome holdout_evaluate(const std::vector<Record>& train,
                                const std::vector<Record>& test,
                                const Schema& schema, const ModelRecipe& recipe);

}  // namespace lognnet
