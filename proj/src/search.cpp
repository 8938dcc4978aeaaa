#include "lognnet/search.hpp"

#include <limits>
#include <stdexcept>

#include "lognnet/rng.hpp"

namespace lognnet {

namespace {

// Folds a coordinate back into [lo, hi], negating the velocity component on
// every wall hit. Bounded retries guard against pathological velocities.
void reflect(double& x, double& v, double lo, double hi) {
  for (int guard = 0; (x < lo || x > hi) && guard < 64; ++guard) {
    if (x < lo) x = lo + (lo - x);
    if (x > hi) x = hi - (x - hi);
    v = -v;
  }
  if (x < lo) x = lo;
  if (x > hi) x = hi;
}

}  // namespace

SearchResult optimize(const std::function<double(const MapParams&)>& objective,
                      MapKind kind, const SwarmConfig& cfg) {
  if (cfg.particles < 2) throw std::invalid_argument("optimize: need >= 2 particles");
  if (cfg.iterations < 1) throw std::invalid_argument("optimize: need >= 1 iteration");
  if (!(cfg.inertia > 0.0) || !(cfg.cognitive > 0.0) || !(cfg.social > 0.0))
    throw std::invalid_argument("optimize: w, c1, c2 must be positive");

  const std::vector<ParamRange>& box = param_box(kind);
  const std::size_t dims = box.size();
  Rng rng(cfg.rng_seed);

  auto as_params = [&](const std::vector<double>& position) {
    MapParams p;
    p.values = position;
    return p;
  };

  std::vector<std::vector<double>> pos(cfg.particles, std::vector<double>(dims));
  std::vector<std::vector<double>> vel(cfg.particles, std::vector<double>(dims));
  std::vector<std::vector<double>> pbest_pos(cfg.particles);
  std::vector<double> pbest_fit(cfg.particles);

  SearchResult result;
  result.best_fitness = -std::numeric_limits<double>::infinity();

  // Particles start at rest: with constriction-style constants the pbest and
  // gbest pulls supply exploration, and the missing initial momentum buys a
  // tighter final contraction within the iteration budget.
  for (std::size_t p = 0; p < cfg.particles; ++p)
    for (std::size_t d = 0; d < dims; ++d)
      pos[p][d] = rng.uniform(box[d].lo, box[d].hi);
  for (std::size_t p = 0; p < cfg.particles; ++p) {
    const double fit = objective(as_params(pos[p]));
    result.trace.push_back({0, p, pos[p], fit});
    pbest_pos[p] = pos[p];
    pbest_fit[p] = fit;
    if (fit > result.best_fitness) {
      result.best_fitness = fit;
      result.best_params = as_params(pos[p]);
    }
  }
  result.history.push_back(result.best_fitness);
  if (cfg.target_metric && result.best_fitness >= *cfg.target_metric) return result;

  for (std::size_t it = 1; it <= cfg.iterations; ++it) {
    // Synchronous PSO: every velocity in this iteration sees the same gbest.
    const std::vector<double> gbest = result.best_params.values;
    for (std::size_t p = 0; p < cfg.particles; ++p) {
      for (std::size_t d = 0; d < dims; ++d) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        vel[p][d] = cfg.inertia * vel[p][d] +
                    cfg.cognitive * r1 * (pbest_pos[p][d] - pos[p][d]) +
                    cfg.social * r2 * (gbest[d] - pos[p][d]);
        pos[p][d] += vel[p][d];
        reflect(pos[p][d], vel[p][d], box[d].lo, box[d].hi);
      }
      const double fit = objective(as_params(pos[p]));
      result.trace.push_back({it, p, pos[p], fit});
      if (fit > pbest_fit[p]) {
        pbest_fit[p] = fit;
        pbest_pos[p] = pos[p];
      }
      if (fit > result.best_fitness) {
        result.best_fitness = fit;
        result.best_params = as_params(pos[p]);
      }
    }
    result.history.push_back(result.best_fitness);
    if (cfg.target_metric && result.best_fitness >= *cfg.target_metric) return result;
  }
  return result;
}

double fitness_of(const std::vector<Record>& train, const Schema& schema,
                  const Architecture& arch, MapKind kind, const MapParams& params,
                  const TrainConfig& cfg) {
  try {
    if (!validate_params(kind, params).empty()) return 0.0;
    const TrainOutcome outcome = train_model(train, schema, arch, {kind, params}, cfg);
    return outcome.validation.accuracy;
  } catch (const InfeasibleParams&) {
    return 0.0;
  } catch (const TrainingDiverged&) {
    return 0.0;
  }
}

}  // namespace lognnet
