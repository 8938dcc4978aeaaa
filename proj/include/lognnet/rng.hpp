#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace lognnet {

// All stochastic behaviour in the library flows through one seeded mt19937_64.
// Distributions are implemented by hand because the standard library's
// uniform_real_distribution / shuffle are implementation-defined and would
// break run-to-run reproducibility across toolchains.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits; exact on any IEEE-754 double.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n), n > 0. Rejection-free modulo bias is
  // negligible for the small n used here, but we reject anyway: it is cheap
  // and keeps the draws exactly uniform.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  // Fisher-Yates, descending pivot; consumes exactly n-1 draws.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    if (v.size() < 2) return;
    for (std::size_t i = v.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i + 1));
      std::swap(v[i], v[j]);
    }
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace lognnet
