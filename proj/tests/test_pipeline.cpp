#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "lognnet/pipeline.hpp"
#include "lognnet/rng.hpp"

using namespace lognnet;

namespace {

std::vector<Record> records_from_labels(const std::vector<std::size_t>& labels) {
  std::vector<Record> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    Record r;
    r.features = {static_cast<double>(i + 1)};  // marker value: position + 1
    r.label = labels[i];
    r.row_id = i + 1;
    out.push_back(r);
  }
  return out;
}

Schema two_feature_schema() {
  Schema s;
  s.id = "toy";
  s.feature_names = {"u", "v"};
  s.domains = {DomainKind::Real, DomainKind::Real};
  s.class_names = {"lo", "hi"};
  return s;
}

// Two well-separated jittered clusters, 20 points per class.
std::vector<Record> separable_train(std::uint64_t seed = 5) {
  Rng rng(seed);
  std::vector<Record> train;
  for (std::size_t i = 0; i < 40; ++i) {
    const bool hi = i % 2 == 1;
    Record r;
    const double cx = hi ? 0.9 : 0.1;
    const double cy = hi ? 0.8 : 0.2;
    r.features = {cx + rng.uniform(-0.05, 0.05), cy + rng.uniform(-0.05, 0.05)};
    r.label = hi ? 1 : 0;
    r.row_id = i + 1;
    train.push_back(r);
  }
  return train;
}

const MapSpec kToyMap{MapKind::Logistic, {{0.52, 3.99}}};
const Architecture kToyArch{2, 4, 4, 2};

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("balancing a 10-record 3-class set duplicates into round-robin order") {
  const std::vector<Record> train =
      records_from_labels({0, 0, 1, 0, 2, 2, 0, 1, 1, 0});
  const std::vector<std::size_t> idx = balance_indices(train);
  const std::vector<std::size_t> expected = {0, 2, 4, 1, 7, 5, 3, 8, 4,
                                             6, 2, 5, 9, 7, 4};
  CHECK(idx == expected);

  const std::vector<Record> out = balance(train);
  REQUIRE(out.size() == 15);
  const std::vector<double> expected_markers = {1, 3, 5, 2, 8, 6, 4, 9,
                                                5, 7, 3, 6, 10, 8, 5};
  for (std::size_t k = 0; k < out.size(); ++k) {
    CHECK(out[k].label == k % 3);
    CHECK(out[k].features[0] == expected_markers[k]);
  }
}

TEST_CASE("an already-balanced set passes through as pure interleaving") {
  const std::vector<Record> train = records_from_labels({0, 1, 0, 1});
  const std::vector<std::size_t> idx = balance_indices(train);
  CHECK(idx == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("balance properties hold for random label assignments") {
  Rng rng(99);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t classes = 2 + rng.below(3);
    const std::size_t n = classes + rng.below(25);
    std::vector<std::size_t> labels;
    for (std::size_t c = 0; c < classes; ++c) labels.push_back(c);  // nonempty
    while (labels.size() < n) labels.push_back(rng.below(classes));
    rng.shuffle(labels);

    const std::vector<Record> train = records_from_labels(labels);
    const std::vector<std::size_t> idx = balance_indices(train);

    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
    std::size_t max_count = 0;
    for (const auto& [c, members] : groups)
      max_count = std::max(max_count, members.size());

    REQUIRE(idx.size() == max_count * classes);

    // Position k carries the (k mod C)-th class in ascending label order.
    std::vector<std::size_t> present;
    for (const auto& [c, members] : groups) present.push_back(c);
    for (std::size_t k = 0; k < idx.size(); ++k)
      CHECK(labels[idx[k]] == present[k % classes]);

    // Every class ends at exactly max_count copies; each class's subsequence
    // is its original-order member list tiled cyclically, so every record
    // appears at least once.
    for (const auto& [c, members] : groups) {
      std::vector<std::size_t> seq;
      for (std::size_t i : idx)
        if (labels[i] == c) seq.push_back(i);
      REQUIRE(seq.size() == max_count);
      for (std::size_t k = 0; k < seq.size(); ++k)
        CHECK(seq[k] == members[k % members.size()]);
    }
    std::set<std::size_t> used(idx.begin(), idx.end());
    CHECK(used.size() == n);
  }
}

TEST_CASE("balancing an empty set throws") {
  CHECK_THROWS_AS(balance_indices({}), std::invalid_argument);
  CHECK_THROWS_AS(balance({}), std::invalid_argument);
}

TEST_CASE("training on a separable two-cluster set reaches perfect validation") {
  const std::vector<Record> train = separable_train();
  TrainConfig cfg;
  const TrainOutcome out = train_model(train, two_feature_schema(), kToyArch,
                                       kToyMap, cfg);

  CHECK(out.validation.accuracy == 1.0);
  CHECK(out.model.arch.str() == "2:4:4:2");
  CHECK(out.model.schema_id == "toy");
  CHECK(out.model.train_seed == cfg.rng_seed);
  CHECK(out.model.input_scaler.divisors.size() == 2);
  CHECK(out.model.reservoir_scaler.divisors.size() == 4);
  CHECK(out.model.head.w1.rows() == 5);  // P+1
  CHECK(out.model.head.w1.cols() == 4);
  CHECK(out.model.head.w2.rows() == 5);  // H+1
  CHECK(out.model.head.w2.cols() == 2);
}

TEST_CASE("testing on the training records reproduces the validation report") {
  const std::vector<Record> train = separable_train();
  const Schema schema = two_feature_schema();
  const TrainOutcome out = train_model(train, schema, kToyArch, kToyMap, {});
  const MetricsReport test = test_model(out.model, schema, train);
  CHECK(test.accuracy == out.validation.accuracy);
  CHECK(test.confusion.counts == out.validation.confusion.counts);
}

TEST_CASE("training is deterministic") {
  const std::vector<Record> train = separable_train();
  const Schema schema = two_feature_schema();
  const TrainOutcome a = train_model(train, schema, kToyArch, kToyMap, {});
  const TrainOutcome b = train_model(train, schema, kToyArch, kToyMap, {});
  CHECK(a.model.head.w1 == b.model.head.w1);
  CHECK(a.model.head.w2 == b.model.head.w2);
  CHECK(a.model.input_scaler.divisors == b.model.input_scaler.divisors);
  CHECK(a.model.reservoir_scaler.divisors == b.model.reservoir_scaler.divisors);
  CHECK(a.validation.confusion.counts == b.validation.confusion.counts);
}

TEST_CASE("single-vector prediction agrees with batch testing") {
  const std::vector<Record> train = separable_train();
  const Schema schema = two_feature_schema();
  const TrainOutcome out = train_model(train, schema, kToyArch, kToyMap, {});

  for (std::size_t pick : {0u, 7u, 13u, 39u}) {
    const Record& r = train[pick];
    const Prediction p = predict_patient(out.model, schema, r.features);

    const MetricsReport single = test_model(out.model, schema, {r});
    std::size_t batch_cls = 0;
    for (std::size_t c = 0; c < 2; ++c)
      if (single.confusion.at(r.label, c) == 1) batch_cls = c;
    CHECK(p.cls == batch_cls);
    CHECK(p.label == schema.class_names[p.cls]);
    REQUIRE(p.scores.size() == 2);
    CHECK(p.scores[0] + p.scores[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.scores[p.cls] >= p.scores[1 - p.cls]);
  }
}

TEST_CASE("prediction rejects vectors that violate the schema") {
  const std::vector<Record> train = separable_train();
  Schema schema = two_feature_schema();
  schema.domains[1] = DomainKind::Binary;
  // Retrain under the stricter schema: feature v is now 0/1.
  std::vector<Record> bin_train = train;
  for (Record& r : bin_train) r.features[1] = r.label;
  const TrainOutcome out = train_model(bin_train, schema, kToyArch, kToyMap, {});

  CHECK_THROWS_WITH_AS(predict_patient(out.model, schema, {0.3, 0.7}),
                       doctest::Contains("v"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(predict_patient(out.model, schema, {0.3}),
                       doctest::Contains("length"), std::invalid_argument);
  CHECK_NOTHROW(predict_patient(out.model, schema, {0.3, 1.0}));
}

TEST_CASE("training validates schema, labels, and map parameters up front") {
  const std::vector<Record> train = separable_train();
  const Schema schema = two_feature_schema();

  SUBCASE("empty training set") {
    CHECK_THROWS_AS(train_model({}, schema, kToyArch, kToyMap, {}),
                    std::invalid_argument);
  }
  SUBCASE("schema feature count vs architecture") {
    Schema wide = schema;
    wide.feature_names.push_back("w");
    wide.domains.push_back(DomainKind::Real);
    CHECK_THROWS_AS(train_model(train, wide, kToyArch, kToyMap, {}),
                    std::invalid_argument);
  }
  SUBCASE("schema class count vs architecture") {
    Schema tri = schema;
    tri.class_names.push_back("mid");
    CHECK_THROWS_AS(train_model(train, tri, kToyArch, kToyMap, {}),
                    std::invalid_argument);
  }
  SUBCASE("map parameters outside the search box") {
    const MapSpec bad{MapKind::Logistic, {{0.52, 5.0}}};
    CHECK_THROWS_WITH_AS(train_model(train, schema, kToyArch, bad, {}),
                         doctest::Contains("r"), std::invalid_argument);
  }
  SUBCASE("label outside the class range") {
    std::vector<Record> corrupt = train;
    corrupt[3].label = 2;
    CHECK_THROWS_AS(train_model(corrupt, schema, kToyArch, kToyMap, {}),
                    std::invalid_argument);
  }
  SUBCASE("record length mismatch") {
    std::vector<Record> corrupt = train;
    corrupt[3].features.pop_back();
    CHECK_THROWS_AS(train_model(corrupt, schema, kToyArch, kToyMap, {}),
                    std::invalid_argument);
  }
}

TEST_CASE("testing validates schema identity and shape") {
  const std::vector<Record> train = separable_train();
  const Schema schema = two_feature_schema();
  const TrainOutcome out = train_model(train, schema, kToyArch, kToyMap, {});

  Schema other = schema;
  other.id = "different";
  CHECK_THROWS_WITH_AS(test_model(out.model, other, train),
                       doctest::Contains("toy"), std::invalid_argument);
  CHECK_THROWS_AS(test_model(out.model, schema, {}), std::invalid_argument);

  std::vector<Record> corrupt = train;
  corrupt[0].features.push_back(0.0);
  CHECK_THROWS_AS(test_model(out.model, schema, corrupt), std::invalid_argument);
}

}  // TEST_SUITE
