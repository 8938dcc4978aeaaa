#include "lognnet/head.hpp"

#include <algorithm>
#include <cmath>

#include "lognnet/rng.hpp"

namespace lognnet {

namespace {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double cross_entropy(const std::vector<double>& s_out, std::size_t label) {
  // An exact-zero probability means the logit gap passed exp underflow
  // (~745 nats): infinite loss, reported as divergence rather than masked.
  return -std::log(s_out[label]);
}

void check_shapes(const std::vector<double>& s_h, const HeadWeights& w) {
  if (w.w2.rows() != w.w1.cols() + 1)
    throw std::invalid_argument("head: W2 rows must equal W1 cols + 1");
  if (s_h.size() != w.w1.rows())
    throw std::invalid_argument("head: S_h length does not match W1 rows");
}

}  // namespace

ForwardResult forward(const std::vector<double>& s_h, const HeadWeights& w) {
  check_shapes(s_h, w);
  const std::size_t hidden = w.w1.cols();
  const std::size_t classes = w.w2.cols();
  ForwardResult r;
  r.s_h2.assign(hidden + 1, 1.0);
  for (std::size_t h = 0; h < hidden; ++h) {
    double z = 0.0;
    for (std::size_t i = 0; i < s_h.size(); ++i) z += w.w1(i, h) * s_h[i];
    r.s_h2[h + 1] = sigmoid(z);
  }
  std::vector<double> z2(classes, 0.0);
  for (std::size_t m = 0; m < classes; ++m)
    for (std::size_t k = 0; k < r.s_h2.size(); ++k) z2[m] += w.w2(k, m) * r.s_h2[k];
  const double zmax = *std::max_element(z2.begin(), z2.end());
  double sum = 0.0;
  r.s_out.resize(classes);
  for (std::size_t m = 0; m < classes; ++m) {
    r.s_out[m] = std::exp(z2[m] - zmax);
    sum += r.s_out[m];
  }
  for (double& v : r.s_out) v /= sum;
  r.cls = 0;
  for (std::size_t m = 1; m < classes; ++m)
    if (r.s_out[m] > r.s_out[r.cls]) r.cls = m;
  return r;
}

HeadWeights fit(const std::vector<HeadExample>& train, std::size_t hidden,
                std::size_t classes, const TrainConfig& cfg) {
  if (train.empty()) throw std::invalid_argument("fit: empty training sequence");
  if (hidden < 1 || classes < 1) throw std::invalid_argument("fit: H and M must be >= 1");
  if (cfg.epochs < 1) throw std::invalid_argument("fit: epochs must be >= 1");
  if (!(cfg.learning_rate >= 0.0))
    throw std::invalid_argument("fit: learning rate must be non-negative");
  const std::size_t in = train.front().s_h.size();
  for (const HeadExample& ex : train)
    if (ex.label >= classes)
      throw std::invalid_argument("fit: label outside [0, M)");

  Rng rng(cfg.rng_seed);
  HeadWeights w;
  w.w1 = Matrix(in, hidden);
  w.w2 = Matrix(hidden + 1, classes);
  for (std::size_t i = 0; i < in; ++i)
    for (std::size_t h = 0; h < hidden; ++h) w.w1(i, h) = rng.uniform(-0.5, 0.5);
  for (std::size_t k = 0; k <= hidden; ++k)
    for (std::size_t m = 0; m < classes; ++m) w.w2(k, m) = rng.uniform(-0.5, 0.5);

  std::vector<std::size_t> order(train.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> delta2(classes), delta_h(hidden);
  const double lr = cfg.learning_rate;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (cfg.shuffle) rng.shuffle(order);
    for (const std::size_t idx : order) {
      const HeadExample& ex = train[idx];
      const ForwardResult f = forward(ex.s_h, w);
      if (!std::isfinite(cross_entropy(f.s_out, ex.label)))
        throw TrainingDiverged(epoch);
      for (std::size_t m = 0; m < classes; ++m)
        delta2[m] = f.s_out[m] - (m == ex.label ? 1.0 : 0.0);
      // Hidden deltas use the pre-update W2.
      for (std::size_t h = 0; h < hidden; ++h) {
        double g = 0.0;
        for (std::size_t m = 0; m < classes; ++m) g += w.w2(h + 1, m) * delta2[m];
        const double a = f.s_h2[h + 1];
        delta_h[h] = g * a * (1.0 - a);
      }
      for (std::size_t k = 0; k <= hidden; ++k)
        for (std::size_t m = 0; m < classes; ++m)
          w.w2(k, m) -= lr * f.s_h2[k] * delta2[m];
      for (std::size_t i = 0; i < in; ++i)
        for (std::size_t h = 0; h < hidden; ++h)
          w.w1(i, h) -= lr * ex.s_h[i] * delta_h[h];
    }
  }
  return w;
}

double gradient_check(const HeadWeights& w, const HeadExample& example) {
  check_shapes(example.s_h, w);
  const std::size_t hidden = w.w1.cols();
  const std::size_t classes = w.w2.cols();
  const std::size_t in = w.w1.rows();

  const ForwardResult f = forward(example.s_h, w);
  Matrix g1(in, hidden), g2(hidden + 1, classes);
  std::vector<double> delta2(classes), delta_h(hidden);
  for (std::size_t m = 0; m < classes; ++m)
    delta2[m] = f.s_out[m] - (m == example.label ? 1.0 : 0.0);
  for (std::size_t h = 0; h < hidden; ++h) {
    double g = 0.0;
    for (std::size_t m = 0; m < classes; ++m) g += w.w2(h + 1, m) * delta2[m];
    const double a = f.s_h2[h + 1];
    delta_h[h] = g * a * (1.0 - a);
  }
  for (std::size_t k = 0; k <= hidden; ++k)
    for (std::size_t m = 0; m < classes; ++m) g2(k, m) = f.s_h2[k] * delta2[m];
  for (std::size_t i = 0; i < in; ++i)
    for (std::size_t h = 0; h < hidden; ++h) g1(i, h) = example.s_h[i] * delta_h[h];

  const double step = 1e-5;
  HeadWeights probe = w;
  double worst = 0.0;
  auto compare = [&](Matrix& m, const Matrix& analytic) {
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) {
        const double saved = m(r, c);
        m(r, c) = saved + step;
        const double up = cross_entropy(forward(example.s_h, probe).s_out, example.label);
        m(r, c) = saved - step;
        const double down = cross_entropy(forward(example.s_h, probe).s_out, example.label);
        m(r, c) = saved;
        const double numeric = (up - down) / (2.0 * step);
        const double a = analytic(r, c);
        const double dev = std::fabs(a - numeric) /
                           std::max({std::fabs(a), std::fabs(numeric), 1e-6});
        if (dev > worst) worst = dev;
      }
  };
  compare(probe.w1, g1);
  compare(probe.w2, g2);
  return worst;
}

}  // namespace lognnet
