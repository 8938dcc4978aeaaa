#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lognnet/matrix.hpp"

namespace lognnet {

// Two-layer classifier on top of the reservoir output:
//   hidden preactivation z1 = W1ᵀ·S_h          W1: (P+1) x H
//   S_h2 = [1, sigmoid(z1)...]                 length H+1, S_h2[0] = 1
//   S_out = softmax(W2ᵀ·S_h2)                  W2: (H+1) x M
// Trained with cross-entropy by per-example gradient descent.
struct HeadWeights {
  Matrix w1;  // (P+1) x H
  Matrix w2;  // (H+1) x M
};

struct TrainConfig {
  std::size_t epochs = 50;
  double learning_rate = 0.05;
  std::uint64_t rng_seed = 1;
  bool shuffle = false;  // balanced-sequence order is meaningful; off by default
};

struct HeadExample {
  std::vector<double> s_h;  // length P+1, s_h[0] == 1
  std::size_t label = 0;
};

class TrainingDiverged : public std::runtime_error {
 public:
  explicit TrainingDiverged(std::size_t epoch)
      : std::runtime_error("training diverged (non-finite loss) at epoch " +
                           std::to_string(epoch) +
                           "; consider a lower learning rate"),
        epoch(epoch) {}
  std::size_t epoch;
};

struct ForwardResult {
  std::vector<double> s_out;   // softmax scores, length M
  std::size_t cls = 0;         // argmax, lowest index on ties
  std::vector<double> s_h2;    // [1, activations...], length H+1
};

ForwardResult forward(const std::vector<double>& s_h, const HeadWeights& w);

// Weight init uniform in [-0.5, 0.5] from the seeded generator (W1 row-major,
// then W2 row-major), then cfg.epochs passes of per-example SGD over `train`
// in sequence order (seeded Fisher-Yates within each epoch when cfg.shuffle).
// Deterministic given cfg. Throws TrainingDiverged on non-finite loss.
HeadWeights fit(const std::vector<HeadExample>& train, std::size_t hidden,
                std::size_t classes, const TrainConfig& cfg);

// Max relative deviation between analytic gradients and central finite
// differences (step 1e-5) over every weight, for one example.
double gradient_check(const HeadWeights& w, const HeadExample& example);

}  // namespace lognnet
