#include "lognnet/chaos.hpp"

#include <array>
#include <stdexcept>

namespace lognnet {

namespace {

const std::array<std::string, kMapKindCount> kNames = {
    "lognnet", "logistic", "sine", "gauss", "2sided", "plank", "henon1", "henon2"};

const std::vector<ParamRange> kBoxSineLogistic = {
    {"A", -1.0, 1.0}, {"B", 0.1, 10.0}, {"r", 0.1, 2.0}};
const std::vector<ParamRange> kBoxLogistic = {{"x0", -1.0, 1.0}, {"r", 1.0, 4.0}};
const std::vector<ParamRange> kBoxSine = {{"x0", -1.0, 1.0}, {"r", 0.0, 2.0}};
const std::vector<ParamRange> kBoxGauss = {
    {"x0", -1.0, 1.0}, {"r1", -1.0, 1.0}, {"r2", 3.0, 6.0}};
const std::vector<ParamRange> kBoxTwoSided = {{"x0", 0.0, 10.0}, {"r", 0.0, 100.0}};
const std::vector<ParamRange> kBoxPlank = {{"x0", 0.0, 5.0}, {"r", 0.0, 7.0}};
const std::vector<ParamRange> kBoxHenon1 = {
    {"x0", 0.01, 1.5}, {"y0", 0.01, 10.0}, {"r1", 0.0, 1.5}, {"r2", 0.0, 1.5}};
const std::vector<ParamRange> kBoxHenon2 = {{"x0", 0.01, 1.5}, {"y0", 0.01, 10.0},
                                            {"r1", 0.0, 1.5},  {"r2", 0.0, 1.5},
                                            {"r3", 0.0, 1.5},  {"r4", 0.0, 1.5}};

}  // namespace

const std::string& map_name(MapKind kind) {
  return kNames[static_cast<std::size_t>(kind)];
}

bool map_from_name(const std::string& name, MapKind& out) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) {
      out = static_cast<MapKind>(i);
      return true;
    }
  }
  return false;
}

std::vector<MapKind> all_map_kinds() {
  std::vector<MapKind> v;
  for (std::size_t i = 0; i < kMapKindCount; ++i) v.push_back(static_cast<MapKind>(i));
  return v;
}

const std::vector<ParamRange>& param_box(MapKind kind) {
  switch (kind) {
    case MapKind::SineLogistic: return kBoxSineLogistic;
    case MapKind::Logistic: return kBoxLogistic;
    case MapKind::Sine: return kBoxSine;
    case MapKind::Gauss: return kBoxGauss;
    case MapKind::TwoSided: return kBoxTwoSided;
    case MapKind::Plank: return kBoxPlank;
    case MapKind::Henon1: return kBoxHenon1;
    case MapKind::Henon2: return kBoxHenon2;
  }
  throw std::invalid_argument("unknown map kind");
}

MapParams default_params(MapKind kind) {
  MapParams p;
  for (const ParamRange& r : param_box(kind)) p.values.push_back(0.5 * (r.lo + r.hi));
  return p;
}

std::vector<std::string> validate_params(MapKind kind, const MapParams& params) {
  const std::vector<ParamRange>& box = param_box(kind);
  if (params.values.size() != box.size())
    throw std::invalid_argument("parameter arity mismatch for map '" + map_name(kind) +
                                "': expected " + std::to_string(box.size()) + ", got " +
                                std::to_string(params.values.size()));
  if (!(params.divisor > 0.0) || !std::isfinite(params.divisor))
    throw std::invalid_argument("seed wavelength divisor must be finite and positive");
  std::vector<std::string> violations;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const double v = params.values[i];
    if (!std::isfinite(v) || v < box[i].lo || v > box[i].hi)
      violations.push_back(box[i].name);
  }
  return violations;
}

MapState step(MapKind kind, const MapParams& params, MapState state) {
  const std::vector<double>& p = params.values;
  switch (kind) {
    case MapKind::SineLogistic:
      state.x = step_sinelogistic(p[2], state.x);
      break;
    case MapKind::Logistic:
      state.x = step_logistic(p[1], state.x);
      break;
    case MapKind::Sine:
      state.x = step_sine(p[1], state.x);
      break;
    case MapKind::Gauss:
      state.x = step_gauss(p[1], p[2], state.x);
      break;
    case MapKind::TwoSided:
      state.x = step_twosided(p[1], state.x);
      break;
    case MapKind::Plank:
      state.x = step_plank(p[1], state.x);
      break;
    case MapKind::Henon1:
      step_henon1(p[2], p[3], state.x, state.y);
      break;
    case MapKind::Henon2:
      step_henon2(p[2], p[3], p[4], p[5], state.x, state.y);
      break;
  }
  if (!std::isfinite(state.x) || !std::isfinite(state.y)) state.diverged = true;
  return state;
}

MapState initial_state(MapKind kind, const MapParams& params) {
  MapState s;
  switch (kind) {
    case MapKind::SineLogistic:
      s.x = 0.0;
      break;
    case MapKind::Henon1:
    case MapKind::Henon2:
      s.x = params.values[0];
      s.y = params.values[1];
      break;
    default:
      s.x = params.values[0];
      break;
  }
  return s;
}

OrbitResult orbit(MapKind kind, const MapParams& params, std::size_t length) {
  OrbitResult out;
  out.values.reserve(length);
  MapState s = initial_state(kind, params);
  for (std::size_t n = 0; n < length; ++n) {
    s = step(kind, params, s);
    if (s.diverged) {
      out.diverged = true;
      out.fail_index = n;
      return out;
    }
    out.values.push_back(s.x);
  }
  return out;
}

}  // namespace lognnet
