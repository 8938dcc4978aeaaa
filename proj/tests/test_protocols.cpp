#include <cstddef>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "lognnet/protocols.hpp"
#include "lognnet/rng.hpp"

using namespace lognnet;

namespace {

Schema toy_schema() {
  Schema s;
  s.id = "toy";
  s.feature_names = {"u", "v"};
  s.domains = {DomainKind::Real, DomainKind::Real};
  s.class_names = {"lo", "hi"};
  return s;
}

// `count` records alternating between two well-separated jittered clusters.
std::vector<Record> clusters(std::size_t count, std::uint64_t seed,
                             std::size_t first_row_id = 1) {
  Rng rng(seed);
  std::vector<Record> out;
  for (std::size_t i = 0; i < count; ++i) {
    const bool hi = i % 2 == 1;
    Record r;
    r.features = {(hi ? 0.9 : 0.1) + rng.uniform(-0.05, 0.05),
                  (hi ? 0.8 : 0.2) + rng.uniform(-0.05, 0.05)};
    r.label = hi ? 1 : 0;
    r.row_id = first_row_id + i;
    out.push_back(r);
  }
  return out;
}

ModelRecipe explicit_recipe() {
  ModelRecipe recipe;
  recipe.arch = {2, 4, 4, 2};
  recipe.kind = MapKind::Logistic;
  recipe.explicit_params = MapParams{{0.52, 3.99}};
  return recipe;
}

std::size_t confusion_total(const ConfusionMatrix& cm) {
  std::size_t sum = 0;
  for (std::size_t a = 0; a < cm.classes(); ++a)
    for (std::size_t b = 0; b < cm.classes(); ++b) sum += cm.at(a, b);
  return sum;
}

std::size_t row_total(const ConfusionMatrix& cm, std::size_t row) {
  std::size_t sum = 0;
  for (std::size_t b = 0; b < cm.classes(); ++b) sum += cm.at(row, b);
  return sum;
}

}  // namespace

TEST_SUITE("protocols") {

TEST_CASE("a recipe must pick exactly one parameter source") {
  const std::vector<Record> train = clusters(40, 5);
  const Schema schema = toy_schema();

  ModelRecipe both = explicit_recipe();
  both.swarm = SwarmConfig{};
  CHECK_THROWS_AS(train_with_recipe(train, schema, both), std::invalid_argument);

  ModelRecipe neither = explicit_recipe();
  neither.explicit_params.reset();
  CHECK_THROWS_AS(train_with_recipe(train, schema, neither), std::invalid_argument);
}

TEST_CASE("explicit parameters train directly, with no search attached") {
  const FitOutcome out =
      train_with_recipe(clusters(40, 5), toy_schema(), explicit_recipe());
  CHECK(out.validation.accuracy == 1.0);
  CHECK_FALSE(out.search.has_value());
  CHECK(out.model.spec.params.values == std::vector<double>{0.52, 3.99});
}

TEST_CASE("a swarm recipe searches, then retrains at the full budget") {
  const std::vector<Record> train = clusters(40, 5);
  const Schema schema = toy_schema();

  ModelRecipe recipe;
  recipe.arch = {2, 4, 4, 2};
  recipe.kind = MapKind::Logistic;
  SwarmConfig swarm;
  swarm.particles = 3;
  swarm.iterations = 2;
  recipe.swarm = swarm;
  recipe.search_epochs = 5;

  const FitOutcome out = train_with_recipe(train, schema, recipe);
  REQUIRE(out.search.has_value());
  CHECK(out.search->trace.size() == 3 * (2 + 1));
  // The deployed model carries the winning parameters.
  CHECK(out.model.spec.params.values == out.search->best_params.values);
  CHECK(out.model.spec.kind == MapKind::Logistic);
  CHECK(out.validation.accuracy >= 0.5);

  const FitOutcome again = train_with_recipe(train, schema, recipe);
  CHECK(again.search->best_params.values == out.search->best_params.values);
  CHECK(again.validation.accuracy == out.validation.accuracy);
}

TEST_CASE("stratified folds partition the data and keep class ratios") {
  const std::vector<Record> records = clusters(100, 7);
  const MetricsReport report =
      kfold_evaluate(records, toy_schema(), 5, explicit_recipe(), 11);

  REQUIRE(report.fold_count() == 5);
  CHECK(confusion_total(report.confusion) == 100);
  for (const MetricsReport& fold : report.per_fold) {
    CHECK(confusion_total(fold.confusion) == 20);
    // 50/50 classes dealt into 5 folds: 10 of each per fold, exactly.
    CHECK(row_total(fold.confusion, 0) == 10);
    CHECK(row_total(fold.confusion, 1) == 10);
  }
}

TEST_CASE("fold means average scalar metrics over folds") {
  const std::vector<Record> records = clusters(100, 7);
  const MetricsReport report =
      kfold_evaluate(records, toy_schema(), 5, explicit_recipe(), 11);

  double acc = 0.0, rec0 = 0.0;
  for (const MetricsReport& fold : report.per_fold) {
    acc += fold.accuracy / 5.0;
    rec0 += fold.recall[0] / 5.0;
  }
  CHECK(report.accuracy == acc);
  CHECK(report.recall[0] == rec0);
  // Separable clusters: every fold should be perfect.
  CHECK(report.accuracy == 1.0);
  CHECK(report.precision_undefined == std::vector<bool>{false, false});
  CHECK(report.recall_undefined == std::vector<bool>{false, false});
}

TEST_CASE("cross-validation is reproducible for a fixed fold seed") {
  const std::vector<Record> records = clusters(60, 7);
  const MetricsReport a =
      kfold_evaluate(records, toy_schema(), 3, explicit_recipe(), 21);
  const MetricsReport b =
      kfold_evaluate(records, toy_schema(), 3, explicit_recipe(), 21);
  CHECK(a.accuracy == b.accuracy);
  CHECK(a.confusion.counts == b.confusion.counts);
  REQUIRE(a.fold_count() == b.fold_count());
  for (std::size_t f = 0; f < a.fold_count(); ++f)
    CHECK(a.per_fold[f].confusion.counts == b.per_fold[f].confusion.counts);
}

TEST_CASE("fold counts and class coverage are validated") {
  const Schema schema = toy_schema();
  const ModelRecipe recipe = explicit_recipe();

  CHECK_THROWS_AS(kfold_evaluate(clusters(40, 5), schema, 1, recipe, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(kfold_evaluate(clusters(4, 5), schema, 9, recipe, 1),
                  std::invalid_argument);

  // A one-member class starves the training split of the fold holding it.
  std::vector<Record> lopsided = clusters(9, 5);
  for (Record& r : lopsided) r.label = 0;
  lopsided[4].label = 1;
  CHECK_THROWS_WITH_AS(kfold_evaluate(lopsided, schema, 2, recipe, 1),
                       doctest::Contains("absent"), std::invalid_argument);
}

TEST_CASE("holdout trains once and evaluates the untouched split") {
  const std::vector<Record> train = clusters(40, 5, 1);
  const std::vector<Record> test = clusters(20, 6, 100);
  const HoldoutOutcome out =
      holdout_evaluate(train, test, toy_schema(), explicit_recipe());

  CHECK(out.test_report.accuracy == 1.0);
  CHECK(confusion_total(out.test_report.confusion) == 20);
  CHECK_FALSE(out.overlap_warning);
  CHECK_FALSE(out.search.has_value());
  CHECK(out.validation.accuracy == 1.0);
}

TEST_CASE("holdout flags row ids that appear on both sides") {
  const std::vector<Record> train = clusters(40, 5, 1);
  std::vector<Record> test = clusters(20, 6, 100);
  test[3].row_id = train[17].row_id;
  const HoldoutOutcome out =
      holdout_evaluate(train, test, toy_schema(), explicit_recipe());
  CHECK(out.overlap_warning);
  CHECK(out.test_report.accuracy == 1.0);  // a warning, not an error
}

TEST_CASE("search nested inside cross-validation runs per fold") {
  const std::vector<Record> records = clusters(20, 7);
  ModelRecipe recipe;
  recipe.arch = {2, 3, 3, 2};
  recipe.kind = MapKind::Sine;
  SwarmConfig swarm;
  swarm.particles = 2;
  swarm.iterations = 1;
  recipe.swarm = swarm;
  recipe.search_epochs = 3;

  const MetricsReport report =
      kfold_evaluate(records, toy_schema(), 2, recipe, 31);
  CHECK(report.fold_count() == 2);
  CHECK(confusion_total(report.confusion) == 20);
}

}  // TEST_SUITE
