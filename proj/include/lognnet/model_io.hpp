#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lognnet/pipeline.hpp"

namespace lognnet {

// Portable binary model file, little-endian throughout:
//   magic "LGNN" | u32 version=1 | u32 N,P,H,M | u32 map kind | u32 arity |
//   f64 params[arity] | f64 seed-wavelength divisor | u8 input-scaler mode |
//   u32 N, f64 input divisors[N] | u32 P, f64 reservoir divisors[P] |
//   f64 scale1, i16 q1[(P+1)*H] | f64 scale2, i16 q2[(H+1)*M] |
//   u64 training seed | u32 schema-id length, bytes |
//   u32 CRC-32 (IEEE reflected, 0xEDB88320) of all preceding bytes.
// Weight blocks are quantized symmetrically per block:
//   scale = max|w| / 32767 (1 when the block is all zero),
//   q = round(w / scale), so |q*scale − w| <= scale/2.
// Map parameters and scalers round-trip losslessly; identical models
// serialize to identical bytes.

inline constexpr std::uint32_t kModelFileVersion = 1;

struct QuantizedBlock {
  double scale = 1.0;
  std::vector<std::int16_t> q;
};

QuantizedBlock quantize(const Matrix& w);
Matrix dequantize(const QuantizedBlock& block, std::size_t rows, std::size_t cols);

// Refuses non-finite weights; throws std::runtime_error on I/O failure.
void save_model(const Model& model, const std::string& path);

// Throws std::runtime_error on bad magic, version mismatch, truncation, or
// checksum failure. The returned head weights are the dequantized ones:
// they define the deployed model's behavior.
Model load_model(const std::string& path);

// JSON description of a model file (headers, parameters, scalers, quantized
// integer blocks verbatim) and its inverse. import(export(file)) reproduces
// the binary byte-for-byte.
void export_model_json(const std::string& model_path, const std::string& json_path);
void import_model_json(const std::string& json_path, const std::string& model_path);

std::uint32_t crc32_ieee(const unsigned char* data, std::size_t length);

}  // namespace lognnet
