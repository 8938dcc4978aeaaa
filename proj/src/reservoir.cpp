#include "lognnet/reservoir.hpp"

#include <cmath>
#include <limits>

namespace lognnet {

InfeasibleParams::InfeasibleParams(MapKind k, const MapParams& p, std::size_t index)
    : std::runtime_error("infeasible parameters for map '" + map_name(k) +
                         "': non-finite orbit element at index " +
                         std::to_string(index)),
      kind(k),
      params(p),
      orbit_index(index) {}

InputScaler calibrate_input_scaler(const std::vector<std::vector<double>>& rows,
                                   InputScaler::Mode mode) {
  if (rows.empty())
    throw std::invalid_argument("input scaler: empty training base");
  const std::size_t n = rows.front().size();
  InputScaler s;
  s.mode = mode;
  s.divisors.assign(n, mode == InputScaler::Mode::MaxAbs
                           ? 0.0
                           : -std::numeric_limits<double>::infinity());
  for (const std::vector<double>& row : rows) {
    if (row.size() != n)
      throw std::invalid_argument("input scaler: ragged training base");
    for (std::size_t i = 0; i < n; ++i) {
      const double v = mode == InputScaler::Mode::MaxAbs ? std::fabs(row[i]) : row[i];
      if (v > s.divisors[i]) s.divisors[i] = v;
    }
  }
  for (double& d : s.divisors)
    if (!(d > 0.0)) d = 1.0;
  return s;
}

ReservoirScaler calibrate_reservoir_scaler(
    const std::vector<std::vector<double>>& projections) {
  if (projections.empty())
    throw std::invalid_argument("reservoir scaler: no training projections");
  const std::size_t p = projections.front().size();
  ReservoirScaler s;
  s.divisors.assign(p, 0.0);
  for (const std::vector<double>& sp : projections) {
    if (sp.size() != p)
      throw std::invalid_argument("reservoir scaler: ragged projections");
    for (std::size_t j = 0; j < p; ++j) {
      const double v = std::fabs(sp[j]);
      if (v > s.divisors[j]) s.divisors[j] = v;
    }
  }
  for (double& d : s.divisors)
    if (!(d > 0.0)) d = 1.0;
  return s;
}

std::vector<double> normalize_input(const std::vector<double>& d,
                                    const InputScaler& scaler) {
  if (d.size() != scaler.divisors.size())
    throw std::invalid_argument("normalize_input: feature vector length " +
                                std::to_string(d.size()) + " does not match scaler length " +
                                std::to_string(scaler.divisors.size()));
  std::vector<double> y(d.size() + 1);
  y[0] = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) y[i + 1] = d[i] / scaler.divisors[i];
  return y;
}

Matrix fill_matrix(const MapSpec& spec, std::size_t n, std::size_t p) {
  if (n < 1 || p < 1) throw std::invalid_argument("fill_matrix: N and P must be >= 1");
  Matrix w(n + 1, p);
  if (spec.kind == MapKind::SineLogistic) {
    const double a = spec.params.values[0];
    const double b = spec.params.values[1];
    const double r = spec.params.values[2];
    const double divisor = spec.params.divisor;
    for (std::size_t i = 0; i <= n; ++i) {
      double x = sinelogistic_seed(i, a, b, divisor);
      w(i, 0) = x;
      for (std::size_t j = 1; j < p; ++j) {
        x = step_sinelogistic(r, x);
        w(i, j) = x;
      }
      if (!std::isfinite(x)) throw InfeasibleParams(spec.kind, spec.params, (p - 1) * (n + 1) + i);
    }
    return w;
  }
  MapState s = initial_state(spec.kind, spec.params);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t i = 0; i <= n; ++i) {
      s = step(spec.kind, spec.params, s);
      if (s.diverged) throw InfeasibleParams(spec.kind, spec.params, j * (n + 1) + i);
      w(i, j) = s.x;
    }
  }
  return w;
}

std::vector<double> project(const Matrix& w, const std::vector<double>& y) {
  if (y.size() != w.rows())
    throw std::invalid_argument("project: Y length does not match matrix rows");
  std::vector<double> s_prime(w.cols());
  for (std::size_t j = 0; j < w.cols(); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.rows(); ++i) acc += w(i, j) * y[i];
    s_prime[j] = acc;
  }
  return s_prime;
}

std::vector<double> project_streaming(const MapSpec& spec,
                                      const std::vector<double>& y, std::size_t p) {
  if (y.size() < 2) throw std::invalid_argument("project_streaming: Y must have N+1 >= 2 elements");
  const std::size_t rows = y.size();  // N + 1
  std::vector<double> s_prime(p);
  if (spec.kind == MapKind::SineLogistic) {
    const double a = spec.params.values[0];
    const double b = spec.params.values[1];
    const double r = spec.params.values[2];
    const double divisor = spec.params.divisor;
    // One scalar of state per matrix row; advanced once per column.
    std::vector<double> row_x(rows);
    for (std::size_t j = 0; j < p; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < rows; ++i) {
        row_x[i] = j == 0 ? sinelogistic_seed(i, a, b, divisor)
                          : step_sinelogistic(r, row_x[i]);
        if (!std::isfinite(row_x[i]))
          throw InfeasibleParams(spec.kind, spec.params, j * rows + i);
        acc += row_x[i] * y[i];
      }
      s_prime[j] = acc;
    }
    return s_prime;
  }
  MapState s = initial_state(spec.kind, spec.params);
  for (std::size_t j = 0; j < p; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      s = step(spec.kind, spec.params, s);
      if (s.diverged) throw InfeasibleParams(spec.kind, spec.params, j * rows + i);
      acc += s.x * y[i];
    }
    s_prime[j] = acc;
  }
  return s_prime;
}

std::vector<double> reservoir_output(const std::vector<double>& s_prime,
                                     const ReservoirScaler& scaler) {
  if (s_prime.size() != scaler.divisors.size())
    throw std::invalid_argument("reservoir_output: S' length does not match scaler");
  std::vector<double> s_h(s_prime.size() + 1);
  s_h[0] = 1.0;
  for (std::size_t j = 0; j < s_prime.size(); ++j)
    s_h[j + 1] = s_prime[j] / scaler.divisors[j];
  return s_h;
}

}  // namespace lognnet
