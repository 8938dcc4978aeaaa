#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lognnet/chaos.hpp"
#include "lognnet/pipeline.hpp"

namespace lognnet {

struct SwarmConfig {
  std::size_t particles = 20;
  std::size_t iterations = 30;
  double inertia = 0.729;     // constriction-style constants
  double cognitive = 1.49445;
  double social = 1.49445;
  std::uint64_t rng_seed = 2;
  std::optional<double> target_metric;  // early exit once the best reaches this
};

struct SearchRecord {
  std::size_t iteration = 0;  // 0 = initial placement
  std::size_t particle = 0;
  std::vector<double> position;
  double fitness = 0.0;
};

struct SearchResult {
  MapParams best_params;
  double best_fitness = 0.0;
  std::vector<double> history;       // best-so-far after each iteration
  std::vector<SearchRecord> trace;   // every evaluation, in order
};

// Synchronous PSO over the kind's parameter box. Velocity update
// v <- w·v + c1·r1·(pbest − x) + c2·r2·(gbest − x) with per-dimension draws;
// positions reflect at box walls (offending velocity component negated).
// Personal and global bests replace only on strict improvement, so ties keep
// the earlier discovery. Deterministic for a fixed seed. The objective must
// be total over the box — map failures must come back as worst fitness.
SearchResult optimize(const std::function<double(const MapParams&)>& objective,
                      MapKind kind, const SwarmConfig& cfg);

// Validation accuracy of a short training run with these map parameters —
// the PSO objective. Infeasible or divergent parameter sets score 0.
double fitness_of(const std::vector<Record>& train, const Schema& schema,
                  const Architecture& arch, MapKind kind, const MapParams& params,
                  const TrainConfig& cfg);

}  // namespace lognnet
