#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace lognnet {

// The eight reservoir-filling maps. SineLogistic is the two-equation scheme
// (sine-seeded first column, quadratic iteration across columns); the rest
// are scalar or planar recurrences consumed as a single orbit.
enum class MapKind {
  SineLogistic,
  Logistic,
  Sine,
  Gauss,
  TwoSided,
  Plank,
  Henon1,
  Henon2,
};

inline constexpr std::size_t kMapKindCount = 8;

// Config/CLI names.
const std::string& map_name(MapKind kind);
bool map_from_name(const std::string& name, MapKind& out);
std::vector<MapKind> all_map_kinds();

// One tunable parameter with its closed admissible interval.
struct ParamRange {
  std::string name;
  double lo;
  double hi;
};

// The search box for a kind, in the order MapParams::values uses:
//   SineLogistic: A, B, r      Logistic/Sine/TwoSided/Plank: x0, r
//   Gauss: x0, r1, r2          Henon1: x0, y0, r1, r2
//   Henon2: x0, y0, r1, r2, r3, r4
// Henon1's admissible-range listing carries an unlabeled second scalar in
// [0.01, 10] although the recurrence consumes x, y, r1, r2; it is housed
// here as the initial y0.
const std::vector<ParamRange>& param_box(MapKind kind);

// Parameter vector aligned with param_box(kind). `divisor` is consumed only
// by SineLogistic's seed wavelength (default 784) and is not searched.
struct MapParams {
  std::vector<double> values;
  double divisor = 784.0;

  double at(std::size_t i) const { return values[i]; }
};

MapParams default_params(MapKind kind);  // box midpoints

// Empty result means ok; otherwise the names of out-of-range parameters.
// Arity mismatch (wrong values length, non-positive divisor) throws
// std::invalid_argument: that is a structural misuse, not a range violation.
std::vector<std::string> validate_params(MapKind kind, const MapParams& params);

struct MapState {
  double x = 0.0;
  double y = 0.0;  // used by Henon1/Henon2 only; passes through otherwise
  bool diverged = false;
};

// --- Single-step recurrences, shared verbatim by the materialized fill and
// --- the streaming projection so the two stay bit-identical.

inline double step_sinelogistic(double r, double x) { return 1.0 - r * x * x; }

inline double sinelogistic_seed(std::size_t i, double a, double b, double divisor) {
  return a * std::sin((static_cast<double>(i) / divisor) * (std::numbers::pi / b));
}

inline double step_logistic(double r, double x) { return r * x * (1.0 - x); }

inline double step_sine(double r, double x) {
  return r * std::sin(std::numbers::pi * x);
}

inline double step_gauss(double r1, double r2, double x) {
  return std::exp(-r2 * x * x) + r1;
}

inline double step_twosided(double r, double x) {
  return r * x / (1.0 + x * x * x);
}

inline double step_plank(double r, double x) {
  return r * x * x * x / (1.0 + std::exp(x));
}

inline void step_henon1(double r1, double r2, double& x, double& y) {
  const double xn = x;
  x = 1.0 - r1 * xn * xn + y;
  y = r2 * xn;
}

inline void step_henon2(double r1, double r2, double r3, double r4, double& x,
                        double& y) {
  const double xn = x;
  x = xn + r1 * xn * xn + r2 * y * y - r3 * y * xn - r4;
  y = xn;
}

// Advances one step per the kind's recurrence. A non-finite successor sets
// the diverged flag (no exception); callers choose their policy.
MapState step(MapKind kind, const MapParams& params, MapState state);

// Initial state from the parameters: (x0, y0) for the orbit-driven kinds.
// SineLogistic has no seed parameter; by convention its diagnostic orbit
// starts at x0 = 0 (the i = 0 sine seed) and iterates the quadratic
// recurrence — matrix filling does not use orbit() for this kind.
MapState initial_state(MapKind kind, const MapParams& params);

// x1..x_length (the seed is not emitted; planar maps emit x only).
// On divergence, `values` holds the finite prefix and `fail_index` the
// 0-based index of the first non-finite element.
struct OrbitResult {
  std::vector<double> values;
  bool diverged = false;
  std::size_t fail_index = 0;
};

OrbitResult orbit(MapKind kind, const MapParams& params, std::size_t length);

}  // namespace lognnet
