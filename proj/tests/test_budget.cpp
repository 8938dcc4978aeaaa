#include "doctest.h"

#include <stdexcept>

#include "lognnet/budget.hpp"
#include "lognnet/rng.hpp"

using namespace lognnet;

TEST_SUITE("budget") {

TEST_CASE("the four reference architectures cost exactly the expected bytes") {
  struct Row {
    Architecture arch;
    std::size_t streaming, materialized, saving;
  };
  const Row rows[] = {
      {{25, 100, 40, 3}, 10008, 20408, 10400},
      {{25, 50, 20, 3}, 3268, 8468, 5200},
      {{8, 16, 10, 2}, 1034, 1610, 576},
      {{8, 6, 4, 2}, 602, 818, 216},
  };
  for (const Row& row : rows) {
    auto b = estimate(row.arch);
    CHECK(b.total_streaming == row.streaming);
    CHECK(b.total_materialized == row.materialized);
    CHECK(b.saving == row.saving);
  }
}

TEST_CASE("degenerate 1:1:1:1 sums the line items") {
  auto b = estimate({1, 1, 1, 1});
  CHECK(b.array_y == 8);
  CHECK(b.matrix_w == 8);
  CHECK(b.weights_w1 == 4);  // (P+1)*H*2 = 2*1*2
  CHECK(b.weights_w2 == 4);
  CHECK(b.array_s_h == 8);
  CHECK(b.array_s_h2 == 8);
  CHECK(b.array_s_out == 4);
  CHECK(b.auxiliary == 6);
  CHECK(b.total_streaming == 440);
  CHECK(b.total_materialized == 448);
}

TEST_CASE("platform constants are configurable") {
  RamConstants c;
  c.serial_port = 0;
  auto b = estimate({8, 6, 4, 2}, c);
  CHECK(b.total_streaming == 602 - 178);
}

TEST_CASE("growing any dimension never shrinks either total") {
  Rng rng(9);
  for (int rep = 0; rep < 60; ++rep) {
    Architecture a{1 + rng.below(64), 1 + rng.below(64), 1 + rng.below(64),
                   1 + rng.below(64)};
    auto base = estimate(a);
    Architecture bumped[] = {{a.n + 1, a.p, a.h, a.m},
                             {a.n, a.p + 1, a.h, a.m},
                             {a.n, a.p, a.h + 1, a.m},
                             {a.n, a.p, a.h, a.m + 1}};
    for (const Architecture& v : bumped) {
      auto b = estimate(v);
      CHECK(b.total_streaming >= base.total_streaming);
      CHECK(b.total_materialized >= base.total_materialized);
    }
  }
}

TEST_CASE("the mode gap is exactly the cost of storing W") {
  Rng rng(10);
  for (int rep = 0; rep < 60; ++rep) {
    Architecture a{1 + rng.below(100), 1 + rng.below(200), 1 + rng.below(80),
                   1 + rng.below(12)};
    auto b = estimate(a);
    CHECK(b.total_materialized - b.total_streaming == (a.n + 1) * a.p * 4);
    CHECK(b.saving == b.matrix_w);
  }
}

TEST_CASE("headroom against a 2 kB part") {
  auto r = fits({8, 6, 4, 2}, 2048, RamMode::Streaming);
  CHECK(r.fits);
  CHECK(r.headroom == 1446);

  r = fits({25, 100, 40, 3}, 2048, RamMode::Streaming);
  CHECK_FALSE(r.fits);
  CHECK(r.headroom == 2048 - 10008);

  r = fits({8, 6, 4, 2}, 818, RamMode::Materialized);
  CHECK(r.fits);
  CHECK(r.headroom == 0);

  CHECK_THROWS_AS((void)fits({8, 6, 4, 2}, 0, RamMode::Streaming), std::invalid_argument);
}

TEST_CASE("breakdown rendering carries the totals") {
  Architecture a{25, 100, 40, 3};
  const std::string text = format_ram_breakdown(a, estimate(a));
  CHECK(text.find("10008") != std::string::npos);
  CHECK(text.find("20408") != std::string::npos);
  CHECK(text.find("10400") != std::string::npos);
  CHECK(text.find("serial port") != std::string::npos);
}

}  // TEST_SUITE
