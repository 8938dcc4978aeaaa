#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "lognnet/chaos.hpp"
#include "lognnet/matrix.hpp"

namespace lognnet {

// Thrown when a map's orbit leaves the finite domain while filling or
// streaming: those parameters cannot produce a usable reservoir. The search
// layer maps this to worst fitness instead of aborting.
class InfeasibleParams : public std::runtime_error {
 public:
  InfeasibleParams(MapKind kind, const MapParams& params, std::size_t index);
  MapKind kind;
  MapParams params;
  std::size_t orbit_index;  // first non-finite element
};

struct MapSpec {
  MapKind kind = MapKind::Logistic;
  MapParams params;
};

// Per-feature divisors calibrated on the training base. MaxAbs is the
// default (divisor = max |value|); LiteralMax divides by the plain maximum,
// which reproduces the stated rule verbatim but can be non-positive for
// negative-valued features (e.g. a ternary tendency code) — any divisor
// <= 0 is substituted by 1 so normalization stays total.
struct InputScaler {
  enum class Mode { MaxAbs, LiteralMax };
  Mode mode = Mode::MaxAbs;
  std::vector<double> divisors;  // length N, all > 0
};

// Per-coordinate divisors for S': max |S'_j| over the training set, 1 when
// that max is 0. Calibrated once at training time and frozen into the model.
struct ReservoirScaler {
  std::vector<double> divisors;  // length P, all > 0
};

InputScaler calibrate_input_scaler(const std::vector<std::vector<double>>& rows,
                                   InputScaler::Mode mode = InputScaler::Mode::MaxAbs);

ReservoirScaler calibrate_reservoir_scaler(
    const std::vector<std::vector<double>>& projections);

// d (length N) -> Y (length N+1): Y[0] = 1 (offset element), Y[i] = d[i-1] /
// divisor. Length mismatch throws std::invalid_argument.
std::vector<double> normalize_input(const std::vector<double>& d,
                                    const InputScaler& scaler);

// (N+1) x P reservoir matrix.
//   SineLogistic: W[i,1] = A·sin((i/D)·(π/B)); W[i,j+1] = 1 − r·W[i,j]².
//   Other kinds: one orbit consumed column-major (outer j, inner i), so
//   W[i,j] = orbit element (j−1)(N+1) + i + 1 (1-based, seed not emitted).
// Throws InfeasibleParams on divergence.
Matrix fill_matrix(const MapSpec& spec, std::size_t n, std::size_t p);

// S'[j] = Σ_{i=0..N} W[i,j]·Y[i], accumulated in ascending i. The order is
// contractual: the streaming path must match it bit-for-bit.
std::vector<double> project(const Matrix& w, const std::vector<double>& y);

// Same S' without materializing W: the orbit-driven kinds regenerate the
// single scalar stream in (j, i) order; SineLogistic keeps one state per
// row (an N+1 vector, not the matrix) and advances it once per column.
// Bit-identical to project(fill_matrix(spec, N, P), Y).
std::vector<double> project_streaming(const MapSpec& spec,
                                      const std::vector<double>& y, std::size_t p);

// S' (length P) -> S_h (length P+1): S_h[0] = 1, S_h[j] = S'[j-1] / divisor.
std::vector<double> reservoir_output(const std::vector<double>& s_prime,
                                     const ReservoirScaler& scaler);

}  // namespace lognnet
