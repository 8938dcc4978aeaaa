#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lognnet/model_io.hpp"
#include "lognnet/rng.hpp"

using namespace lognnet;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::vector<unsigned char> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::vector<unsigned char>((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

Model toy_model(std::uint64_t seed = 42) {
  Rng rng(seed);
  Model m;
  m.arch = {8, 6, 4, 2};
  m.spec.kind = MapKind::Sine;
  m.spec.params.values = {0.5, 1.7};
  m.input_scaler.mode = InputScaler::Mode::MaxAbs;
  for (int i = 0; i < 8; ++i) m.input_scaler.divisors.push_back(rng.uniform(0.5, 4.0));
  for (int i = 0; i < 6; ++i) m.reservoir_scaler.divisors.push_back(rng.uniform(0.5, 9.0));
  m.head.w1 = Matrix(7, 4);
  m.head.w2 = Matrix(5, 2);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 4; ++j) m.head.w1(i, j) = rng.uniform(-2.0, 2.0);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 2; ++j) m.head.w2(i, j) = rng.uniform(-2.0, 2.0);
  m.schema_id = "covid";
  m.train_seed = 1234567890123456789ULL;
  return m;
}

}  // namespace

TEST_SUITE("model_io") {

TEST_CASE("quantizer corner cases") {
  Matrix zero(3, 2);
  auto b = quantize(zero);
  CHECK(b.scale == 1.0);
  for (std::int16_t q : b.q) CHECK(q == 0);

  Matrix pm(1, 2);
  pm(0, 0) = -1.0;
  pm(0, 1) = 1.0;
  b = quantize(pm);
  CHECK(b.scale == 1.0 / 32767.0);
  CHECK(b.q[0] == -32767);
  CHECK(b.q[1] == 32767);
}

TEST_CASE("per-weight quantization error is bounded by half a step") {
  Rng rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    Matrix w(5, 7);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 7; ++j) w(i, j) = rng.uniform(-100.0, 100.0);
    auto b = quantize(w);
    Matrix back = dequantize(b, 5, 7);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 7; ++j)
        CHECK(std::fabs(back(i, j) - w(i, j)) <= b.scale * 0.5 * (1.0 + 1e-12));
  }
}

TEST_CASE("dequantize refuses a block of the wrong size") {
  QuantizedBlock b;
  b.q = {1, 2, 3};
  CHECK_THROWS_AS((void)dequantize(b, 2, 2), std::runtime_error);
}

TEST_CASE("the 8:6:4:2 head quantizes into 76 payload bytes") {
  Model m = toy_model();
  auto b1 = quantize(m.head.w1);
  auto b2 = quantize(m.head.w2);
  CHECK(2 * (b1.q.size() + b2.q.size()) == 76);
}

TEST_CASE("save/load round-trips everything but the quantization error") {
  Model m = toy_model();
  const std::string path = temp_path("model_roundtrip.bin");
  save_model(m, path);
  Model back = load_model(path);

  CHECK(back.arch == m.arch);
  CHECK(back.spec.kind == m.spec.kind);
  REQUIRE(back.spec.params.values.size() == m.spec.params.values.size());
  for (std::size_t i = 0; i < m.spec.params.values.size(); ++i)
    CHECK(back.spec.params.values[i] == m.spec.params.values[i]);
  CHECK(back.spec.params.divisor == m.spec.params.divisor);
  CHECK(back.input_scaler.mode == m.input_scaler.mode);
  CHECK(back.input_scaler.divisors == m.input_scaler.divisors);
  CHECK(back.reservoir_scaler.divisors == m.reservoir_scaler.divisors);
  CHECK(back.schema_id == m.schema_id);
  CHECK(back.train_seed == m.train_seed);

  const double s1 = quantize(m.head.w1).scale;
  const double s2 = quantize(m.head.w2).scale;
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(std::fabs(back.head.w1(i, j) - m.head.w1(i, j)) <= s1 * 0.5 * (1.0 + 1e-12));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(std::fabs(back.head.w2(i, j) - m.head.w2(i, j)) <= s2 * 0.5 * (1.0 + 1e-12));

  // Dequantized weights land back on the same integer grid.
  CHECK(quantize(back.head.w1).q == quantize(m.head.w1).q);
  CHECK(quantize(back.head.w2).q == quantize(m.head.w2).q);
  std::remove(path.c_str());
}

TEST_CASE("serialization is deterministic") {
  const std::string a = temp_path("model_det_a.bin");
  const std::string b = temp_path("model_det_b.bin");
  save_model(toy_model(), a);
  save_model(toy_model(), b);
  CHECK(slurp(a) == slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("corruption is refused") {
  const std::string path = temp_path("model_corrupt.bin");
  save_model(toy_model(), path);
  const auto good = slurp(path);

  auto bad = good;
  bad[0] = 'X';  // magic
  spit(path, bad);
  CHECK_THROWS_AS((void)load_model(path), std::runtime_error);

  bad = good;
  bad[4] = 99;  // version
  spit(path, bad);
  CHECK_THROWS_AS((void)load_model(path), std::runtime_error);

  bad = good;
  bad[40] ^= 0x20;  // somewhere in the payload: checksum must catch it
  spit(path, bad);
  CHECK_THROWS_AS((void)load_model(path), std::runtime_error);

  bad = good;
  bad.resize(bad.size() - 9);  // truncated
  spit(path, bad);
  CHECK_THROWS_AS((void)load_model(path), std::runtime_error);

  spit(path, good);
  CHECK_NOTHROW((void)load_model(path));
  std::remove(path.c_str());
}

TEST_CASE("non-finite weights are refused at save time") {
  Model m = toy_model();
  m.head.w1(2, 2) = std::nan("");
  CHECK_THROWS_AS(save_model(m, temp_path("model_nan.bin")), std::runtime_error);
}

TEST_CASE("json export/import reproduces the binary byte-for-byte") {
  Model m = toy_model(7);
  const std::string bin = temp_path("model_json_src.bin");
  const std::string json = temp_path("model_json.json");
  const std::string back = temp_path("model_json_back.bin");
  save_model(m, bin);
  export_model_json(bin, json);
  import_model_json(json, back);
  CHECK(slurp(bin) == slurp(back));

  const auto text = slurp(json);
  const std::string body(text.begin(), text.end());
  CHECK(body.find("\"architecture\": \"8:6:4:2\"") != std::string::npos);
  CHECK(body.find("\"map\": \"sine\"") != std::string::npos);
  std::remove(bin.c_str());
  std::remove(json.c_str());
  std::remove(back.c_str());
}

TEST_CASE("crc32 matches the reference value for a known vector") {
  const unsigned char data[] = {'1', '2', '3', '4', '5', '6', '7', '8', '9'};
  CHECK(crc32_ieee(data, 9) == 0xCBF43926u);
}

}  // TEST_SUITE
