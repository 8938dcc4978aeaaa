#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "lognnet/metrics.hpp"
#include "lognnet/rng.hpp"

using namespace lognnet;

TEST_SUITE("metrics") {

TEST_CASE("perfect diagonal scores 1 everywhere") {
  ConfusionMatrix cm(2);
  cm.at(0, 0) = 10;
  cm.at(1, 1) = 10;
  auto r = metrics(cm);
  CHECK(r.accuracy == 1.0);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(r.precision[k] == 1.0);
    CHECK(r.recall[k] == 1.0);
    CHECK(r.f1[k] == 1.0);
    CHECK_FALSE(r.precision_undefined[k]);
    CHECK_FALSE(r.recall_undefined[k]);
    CHECK_FALSE(r.f1_undefined[k]);
  }
}

TEST_CASE("hand-checked two-class matrix") {
  ConfusionMatrix cm(2);
  cm.at(0, 0) = 8;
  cm.at(0, 1) = 2;
  cm.at(1, 0) = 1;
  cm.at(1, 1) = 9;
  auto r = metrics(cm);
  CHECK(r.accuracy == doctest::Approx(0.85).epsilon(1e-12));
  CHECK(r.precision[0] == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
  CHECK(r.recall[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(r.f1[0] == doctest::Approx(0.8421052631578947).epsilon(1e-12));
  CHECK(r.precision[1] == doctest::Approx(9.0 / 11.0).epsilon(1e-12));
  CHECK(r.recall[1] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(r.f1[1] == doctest::Approx(6.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("a never-predicted class is flagged, not dropped") {
  ConfusionMatrix cm(3);
  cm.at(0, 0) = 5;
  cm.at(1, 0) = 3;  // class 1 never predicted, never hit
  cm.at(2, 2) = 2;
  auto r = metrics(cm);
  CHECK(r.precision[1] == 0.0);
  CHECK(r.precision_undefined[1]);
  CHECK(r.recall[1] == 0.0);
  CHECK_FALSE(r.recall_undefined[1]);  // row sum is 3; recall is a true 0
  CHECK(r.f1[1] == 0.0);
  CHECK(r.f1_undefined[1]);
  CHECK(r.accuracy == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("a class absent from the data has undefined recall") {
  ConfusionMatrix cm(2);
  cm.at(0, 0) = 4;
  cm.at(0, 1) = 1;  // no true class-1 examples at all
  auto r = metrics(cm);
  CHECK(r.recall_undefined[1]);
  CHECK(r.recall[1] == 0.0);
}

TEST_CASE("empty matrix is refused") {
  ConfusionMatrix cm(3);
  CHECK_THROWS_AS((void)metrics(cm), std::invalid_argument);
  CHECK_THROWS_AS((void)metrics(ConfusionMatrix(0)), std::invalid_argument);
}

TEST_CASE("agrees exactly with a per-example counting oracle") {
  Rng rng(2024);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t classes = 2 + rng.below(4);
    const std::size_t count = 1 + rng.below(200);
    std::vector<std::size_t> truth(count), pred(count);
    ConfusionMatrix cm(classes);
    for (std::size_t i = 0; i < count; ++i) {
      truth[i] = rng.below(classes);
      pred[i] = rng.below(classes);
      ++cm.at(truth[i], pred[i]);
    }
    auto r = metrics(cm);

    std::size_t hits = 0;
    for (std::size_t i = 0; i < count; ++i) hits += truth[i] == pred[i] ? 1 : 0;
    CHECK(r.accuracy == static_cast<double>(hits) / static_cast<double>(count));

    for (std::size_t k = 0; k < classes; ++k) {
      std::size_t tp = 0, fp = 0, fn = 0;
      for (std::size_t i = 0; i < count; ++i) {
        if (pred[i] == k && truth[i] == k) ++tp;
        if (pred[i] == k && truth[i] != k) ++fp;
        if (pred[i] != k && truth[i] == k) ++fn;
      }
      const double p = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
      const double rec = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
      CHECK(r.precision[k] == p);
      CHECK(r.recall[k] == rec);
      CHECK(r.precision_undefined[k] == (tp + fp == 0));
      CHECK(r.recall_undefined[k] == (tp + fn == 0));
      if (p + rec > 0.0)
        CHECK(r.f1[k] == 2.0 * p * rec / (p + rec));
      else
        CHECK(r.f1_undefined[k]);
    }
  }
}

TEST_CASE("frequency-weighted recall reproduces overall accuracy") {
  Rng rng(55);
  ConfusionMatrix cm(4);
  for (std::size_t t = 0; t < 4; ++t)
    for (std::size_t p = 0; p < 4; ++p) cm.at(t, p) = rng.below(30);
  cm.at(2, 2) += 1;  // guarantee a nonzero total
  auto r = metrics(cm);
  double weighted = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    std::size_t row = 0;
    for (std::size_t p = 0; p < 4; ++p) row += cm.at(k, p);
    weighted += r.recall[k] * static_cast<double>(row) / static_cast<double>(cm.total());
  }
  CHECK(weighted == doctest::Approx(r.accuracy).epsilon(1e-12));
}

TEST_CASE("report renders as a table with the class names") {
  ConfusionMatrix cm(2);
  cm.at(0, 0) = 8;
  cm.at(0, 1) = 2;
  cm.at(1, 0) = 1;
  cm.at(1, 1) = 9;
  auto r = metrics(cm);
  const std::string table = format_metrics_table(r, {"Negative", "Positive"}, "toy/sine");
  CHECK(table.find("toy/sine") != std::string::npos);
  CHECK(table.find("Negative") != std::string::npos);
  CHECK(table.find("Positive") != std::string::npos);
  CHECK(table.find("85") != std::string::npos);  // 85.000 accuracy percent
}

}  // TEST_SUITE
