#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lognnet/architecture.hpp"
#include "lognnet/data.hpp"
#include "lognnet/head.hpp"
#include "lognnet/metrics.hpp"
#include "lognnet/reservoir.hpp"

namespace lognnet {

// A trained, deployable classifier: everything needed to reproduce
// inference, with scalers frozen at training time.
struct Model {
  Architecture arch;
  MapSpec spec;
  InputScaler input_scaler;
  ReservoirScaler reservoir_scaler;
  HeadWeights head;
  std::string schema_id;
  std::uint64_t train_seed = 0;
};

// Class-count equalization by cyclic duplication, then round-robin
// interleaving in ascending label order. Per-class groups keep dataset
// order; each short group repeats from its own start. Output size =
// MAX * (number of present classes). Returned as indices into `train`.
std::vector<std::size_t> balance_indices(const std::vector<Record>& train);

std::vector<Record> balance(const std::vector<Record>& train);

struct TrainOutcome {
  Model model;
  MetricsReport validation;  // on the unbalanced training base
};

// Full training flow: balance; calibrate the input scaler on the unbalanced
// training base; fill the reservoir; calibrate the reservoir scaler on the
// training projections; fit the head; report validation metrics on the
// training base (duplication cannot change either scaler's maxima, so
// calibrating before duplication is equivalent and deterministic).
TrainOutcome train_model(const std::vector<Record>& train, const Schema& schema,
                         const Architecture& arch, const MapSpec& spec,
                         const TrainConfig& cfg);

// Applies the frozen model to an untouched (never balanced) test set.
MetricsReport test_model(const Model& model, const Schema& schema,
                         const std::vector<Record>& test);

struct Prediction {
  std::size_t cls = 0;
  std::string label;
  std::vector<double> scores;
};

// Single-vector flow: schema validation first (rejected vectors throw
// std::invalid_argument naming the violations — no imputation), then the
// same classification path test_model uses.
Prediction predict_patient(const Model& model, const Schema& schema,
                           const std::vector<double>& v);

}  // namespace lognnet
