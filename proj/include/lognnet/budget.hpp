#pragma once

#include <cstddef>
#include <string>

#include "lognnet/architecture.hpp"

namespace lognnet {

// Platform constants of the modeled microcontroller target. Configurable so
// other targets can be costed; the defaults describe the reference board.
struct RamConstants {
  std::size_t variables = 20;
  std::size_t serial_port = 178;
  std::size_t math_scratch = 200;
};

// Byte-exact cost model for an N:P:H:M network. Streaming mode regenerates
// the reservoir entries on the fly (W never stored); materialized mode keeps
// W, costing (N+1)*P*4 extra bytes — the line item `matrix_w`, which is also
// exactly the saving streaming buys.
struct RamBreakdown {
  std::size_t array_y = 0;       // (N+1)*4
  std::size_t matrix_w = 0;      // (N+1)*P*4, materialized mode only
  std::size_t weights_w1 = 0;    // (P+1)*H*2
  std::size_t weights_w2 = 0;    // (H+1)*M*2
  std::size_t array_s_h = 0;     // (P+1)*4
  std::size_t array_s_h2 = 0;    // (H+1)*4
  std::size_t array_s_out = 0;   // M*4
  std::size_t auxiliary = 0;     // P*3*2
  std::size_t variables = 0;
  std::size_t serial_port = 0;
  std::size_t math_scratch = 0;

  std::size_t total_streaming = 0;
  std::size_t total_materialized = 0;
  std::size_t saving = 0;  // == matrix_w
};

RamBreakdown estimate(const Architecture& arch, const RamConstants& constants = {});

enum class RamMode { Streaming, Materialized };

struct FitsResult {
  bool fits = false;
  long long headroom = 0;  // limit - total; negative when it does not fit
};

FitsResult fits(const Architecture& arch, std::size_t ram_limit_bytes, RamMode mode,
                const RamConstants& constants = {});

// One row of totals plus the per-item listing.
std::string format_ram_breakdown(const Architecture& arch, const RamBreakdown& b);

}  // namespace lognnet
