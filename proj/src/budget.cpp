#include "lognnet/budget.hpp"

#include <sstream>
#include <stdexcept>

namespace lognnet {

RamBreakdown estimate(const Architecture& arch, const RamConstants& constants) {
  if (!arch.valid()) throw std::invalid_argument("estimate: invalid architecture");
  const std::size_t n = arch.n, p = arch.p, h = arch.h, m = arch.m;
  RamBreakdown b;
  b.array_y = (n + 1) * 4;
  b.matrix_w = (n + 1) * p * 4;
  b.weights_w1 = (p + 1) * h * 2;
  b.weights_w2 = (h + 1) * m * 2;
  b.array_s_h = (p + 1) * 4;
  b.array_s_h2 = (h + 1) * 4;
  b.array_s_out = m * 4;
  b.auxiliary = p * 3 * 2;
  b.variables = constants.variables;
  b.serial_port = constants.serial_port;
  b.math_scratch = constants.math_scratch;
  b.total_streaming = b.array_y + b.weights_w1 + b.weights_w2 + b.array_s_h + b.array_s_h2 +
                 b.array_s_out + b.auxiliary + b.variables + b.serial_port +
                 b.math_scratch;
  b.total_materialized = b.total_streaming + b.matrix_w;
  b.saving = b.matrix_w;
  return b;
}

FitsResult fits(const Architecture& arch, std::size_t ram_limit_bytes, RamMode mode,
                const RamConstants& constants) {
  if (ram_limit_bytes == 0) throw std::invalid_argument("fits: RAM limit must be > 0");
  const RamBreakdown b = estimate(arch, constants);
  const std::size_t total = mode == RamMode::Streaming ? b.total_streaming : b.total_materialized;
  FitsResult r;
  r.headroom = static_cast<long long>(ram_limit_bytes) - static_cast<long long>(total);
  r.fits = total <= ram_limit_bytes;
  return r;
}

std::string format_ram_breakdown(const Architecture& arch, const RamBreakdown& b) {
  std::ostringstream out;
  out << "architecture " << arch.str() << ": streaming = " << b.total_streaming
      << " B, materialized = " << b.total_materialized << " B, saving = " << b.saving
      << " B\n";
  const std::pair<const char*, std::size_t> items[] = {
      {"array Y", b.array_y},
      {"matrix W (materialized only)", b.matrix_w},
      {"weights S_h/S_h2", b.weights_w1},
      {"weights S_h2/S_out", b.weights_w2},
      {"array S_h", b.array_s_h},
      {"array S_h2", b.array_s_h2},
      {"array S_out", b.array_s_out},
      {"auxiliary arrays", b.auxiliary},
      {"variables", b.variables},
      {"serial port", b.serial_port},
      {"math scratch", b.math_scratch},
  };
  for (const auto& [name, bytes] : items)
    out << "  " << name << ": " << bytes << " B\n";
  return out.str();
}

}  // namespace lognnet
