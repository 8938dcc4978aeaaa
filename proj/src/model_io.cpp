#include "lognnet/model_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace lognnet {

namespace {

// Everything a model file holds, in file order.
struct FileImage {
  std::uint32_t version = kModelFileVersion;
  std::uint32_t n = 0, p = 0, h = 0, m = 0;
  std::uint32_t kind = 0;
  std::vector<double> params;
  double divisor = 784.0;
  std::uint8_t scaler_mode = 0;  // 0 = max-abs, 1 = literal-max
  std::vector<double> input_divisors;
  std::vector<double> reservoir_divisors;
  QuantizedBlock w1, w2;
  std::uint64_t seed = 0;
  std::string schema_id;
};

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_u64(std::vector<unsigned char>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

void put_f64(std::vector<unsigned char>& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

void put_i16(std::vector<unsigned char>& out, std::int16_t v) {
  const auto u = static_cast<std::uint16_t>(v);
  out.push_back(static_cast<unsigned char>(u & 0xFF));
  out.push_back(static_cast<unsigned char>(u >> 8));
}

class Reader {
 public:
  explicit Reader(const std::vector<unsigned char>& data) : data_(data) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::int16_t i16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(data_[pos_]) |
                      static_cast<std::uint16_t>(data_[pos_ + 1]) << 8;
    pos_ += 2;
    return static_cast<std::int16_t>(v);
  }
  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  std::string bytes(std::size_t count) {
    need(count);
    std::string s(reinterpret_cast<const char*>(data_.data()) + pos_, count);
    pos_ += count;
    return s;
  }
  std::size_t position() const { return pos_; }

 private:
  void need(std::size_t count) const {
    if (pos_ + count > data_.size())
      throw std::runtime_error("model file truncated");
  }
  const std::vector<unsigned char>& data_;
  std::size_t pos_ = 0;
};

std::vector<unsigned char> encode(const FileImage& f) {
  std::vector<unsigned char> out;
  out.push_back('L');
  out.push_back('G');
  out.push_back('N');
  out.push_back('N');
  put_u32(out, f.version);
  put_u32(out, f.n);
  put_u32(out, f.p);
  put_u32(out, f.h);
  put_u32(out, f.m);
  put_u32(out, f.kind);
  put_u32(out, static_cast<std::uint32_t>(f.params.size()));
  for (double v : f.params) put_f64(out, v);
  put_f64(out, f.divisor);
  out.push_back(f.scaler_mode);
  put_u32(out, static_cast<std::uint32_t>(f.input_divisors.size()));
  for (double v : f.input_divisors) put_f64(out, v);
  put_u32(out, static_cast<std::uint32_t>(f.reservoir_divisors.size()));
  for (double v : f.reservoir_divisors) put_f64(out, v);
  put_f64(out, f.w1.scale);
  for (std::int16_t v : f.w1.q) put_i16(out, v);
  put_f64(out, f.w2.scale);
  for (std::int16_t v : f.w2.q) put_i16(out, v);
  put_u64(out, f.seed);
  put_u32(out, static_cast<std::uint32_t>(f.schema_id.size()));
  for (char c : f.schema_id) out.push_back(static_cast<unsigned char>(c));
  put_u32(out, crc32_ieee(out.data(), out.size()));
  return out;
}

FileImage decode(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < 8 || bytes[0] != 'L' || bytes[1] != 'G' || bytes[2] != 'N' ||
      bytes[3] != 'N')
    throw std::runtime_error("not a model file (bad magic)");
  if (bytes.size() < 4 + 4)
    throw std::runtime_error("model file truncated");
  // Checksum covers everything before the trailing 4 bytes.
  if (bytes.size() < 4) throw std::runtime_error("model file truncated");
  const std::size_t body = bytes.size() - 4;
  std::uint32_t stored = 0;
  for (int i = 0; i < 4; ++i) stored |= static_cast<std::uint32_t>(bytes[body + i]) << (8 * i);
  if (crc32_ieee(bytes.data(), body) != stored)
    throw std::runtime_error("model file checksum mismatch");

  Reader r(bytes);
  r.bytes(4);  // magic
  FileImage f;
  f.version = r.u32();
  if (f.version != kModelFileVersion)
    throw std::runtime_error("unsupported model file version " + std::to_string(f.version));
  f.n = r.u32();
  f.p = r.u32();
  f.h = r.u32();
  f.m = r.u32();
  f.kind = r.u32();
  if (f.kind >= kMapKindCount) throw std::runtime_error("model file: unknown map kind");
  const std::uint32_t arity = r.u32();
  for (std::uint32_t i = 0; i < arity; ++i) f.params.push_back(r.f64());
  f.divisor = r.f64();
  f.scaler_mode = r.u8();
  const std::uint32_t nin = r.u32();
  for (std::uint32_t i = 0; i < nin; ++i) f.input_divisors.push_back(r.f64());
  const std::uint32_t nres = r.u32();
  for (std::uint32_t i = 0; i < nres; ++i) f.reservoir_divisors.push_back(r.f64());
  f.w1.scale = r.f64();
  for (std::size_t i = 0; i < (static_cast<std::size_t>(f.p) + 1) * f.h; ++i)
    f.w1.q.push_back(r.i16());
  f.w2.scale = r.f64();
  for (std::size_t i = 0; i < (static_cast<std::size_t>(f.h) + 1) * f.m; ++i)
    f.w2.q.push_back(r.i16());
  f.seed = r.u64();
  const std::uint32_t idlen = r.u32();
  f.schema_id = r.bytes(idlen);
  if (r.position() != body) throw std::runtime_error("model file: trailing bytes");
  return f;
}

std::vector<unsigned char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return bytes;
}

void write_file(const std::string& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

FileImage image_of(const Model& model) {
  FileImage f;
  f.n = static_cast<std::uint32_t>(model.arch.n);
  f.p = static_cast<std::uint32_t>(model.arch.p);
  f.h = static_cast<std::uint32_t>(model.arch.h);
  f.m = static_cast<std::uint32_t>(model.arch.m);
  f.kind = static_cast<std::uint32_t>(model.spec.kind);
  f.params = model.spec.params.values;
  f.divisor = model.spec.params.divisor;
  f.scaler_mode = model.input_scaler.mode == InputScaler::Mode::MaxAbs ? 0 : 1;
  f.input_divisors = model.input_scaler.divisors;
  f.reservoir_divisors = model.reservoir_scaler.divisors;
  f.w1 = quantize(model.head.w1);
  f.w2 = quantize(model.head.w2);
  f.seed = model.train_seed;
  f.schema_id = model.schema_id;
  return f;
}

Model model_of(const FileImage& f) {
  Model m;
  m.arch = {f.n, f.p, f.h, f.m};
  m.spec.kind = static_cast<MapKind>(f.kind);
  m.spec.params.values = f.params;
  m.spec.params.divisor = f.divisor;
  m.input_scaler.mode =
      f.scaler_mode == 0 ? InputScaler::Mode::MaxAbs : InputScaler::Mode::LiteralMax;
  m.input_scaler.divisors = f.input_divisors;
  m.reservoir_scaler.divisors = f.reservoir_divisors;
  m.head.w1 = dequantize(f.w1, f.p + 1, f.h);
  m.head.w2 = dequantize(f.w2, f.h + 1, f.m);
  m.train_seed = f.seed;
  m.schema_id = f.schema_id;
  return m;
}

}  // namespace

std::uint32_t crc32_ieee(const unsigned char* data, std::size_t length) {
  static const std::array<std::uint32_t, 256> table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t crc = 0xFFFFFFFFu;
  for (std::size_t i = 0; i < length; ++i)
    crc = table[(crc ^ data[i]) & 0xFF] ^ (crc >> 8);
  return crc ^ 0xFFFFFFFFu;
}

QuantizedBlock quantize(const Matrix& w) {
  QuantizedBlock b;
  double max_abs = 0.0;
  for (std::size_t r = 0; r < w.rows(); ++r)
    for (std::size_t c = 0; c < w.cols(); ++c) {
      const double v = std::fabs(w(r, c));
      if (!std::isfinite(v)) throw std::runtime_error("quantize: non-finite weight");
      if (v > max_abs) max_abs = v;
    }
  b.scale = max_abs == 0.0 ? 1.0 : max_abs / 32767.0;
  b.q.reserve(w.rows() * w.cols());
  for (std::size_t r = 0; r < w.rows(); ++r)
    for (std::size_t c = 0; c < w.cols(); ++c) {
      long q = std::lround(w(r, c) / b.scale);
      if (q > 32767) q = 32767;
      if (q < -32767) q = -32767;
      b.q.push_back(static_cast<std::int16_t>(q));
    }
  return b;
}

Matrix dequantize(const QuantizedBlock& block, std::size_t rows, std::size_t cols) {
  if (block.q.size() != rows * cols)
    throw std::runtime_error("dequantize: block size mismatch");
  Matrix w(rows, cols);
  std::size_t i = 0;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) w(r, c) = block.q[i++] * block.scale;
  return w;
}

void save_model(const Model& model, const std::string& path) {
  write_file(path, encode(image_of(model)));
}

Model load_model(const std::string& path) { return model_of(decode(read_file(path))); }

void export_model_json(const std::string& model_path, const std::string& json_path) {
  const FileImage f = decode(read_file(model_path));
  nlohmann::json j;
  j["version"] = f.version;
  j["architecture"] = Architecture{f.n, f.p, f.h, f.m}.str();
  j["map"] = map_name(static_cast<MapKind>(f.kind));
  j["params"] = f.params;
  j["divisor"] = f.divisor;
  j["input_scaler_mode"] = f.scaler_mode == 0 ? "max-abs" : "literal-max";
  j["input_divisors"] = f.input_divisors;
  j["reservoir_divisors"] = f.reservoir_divisors;
  j["w1"] = {{"scale", f.w1.scale}, {"q", f.w1.q}};
  j["w2"] = {{"scale", f.w2.scale}, {"q", f.w2.q}};
  j["train_seed"] = f.seed;
  j["schema_id"] = f.schema_id;
  std::ofstream out(json_path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + json_path + "'");
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed for '" + json_path + "'");
}

void import_model_json(const std::string& json_path, const std::string& model_path) {
  std::ifstream in(json_path);
  if (!in) throw std::runtime_error("cannot open '" + json_path + "'");
  nlohmann::json j;
  in >> j;
  FileImage f;
  f.version = j.at("version").get<std::uint32_t>();
  const Architecture arch = parse_architecture(j.at("architecture").get<std::string>());
  f.n = static_cast<std::uint32_t>(arch.n);
  f.p = static_cast<std::uint32_t>(arch.p);
  f.h = static_cast<std::uint32_t>(arch.h);
  f.m = static_cast<std::uint32_t>(arch.m);
  MapKind kind;
  if (!map_from_name(j.at("map").get<std::string>(), kind))
    throw std::runtime_error("import: unknown map name");
  f.kind = static_cast<std::uint32_t>(kind);
  f.params = j.at("params").get<std::vector<double>>();
  f.divisor = j.at("divisor").get<double>();
  f.scaler_mode = j.at("input_scaler_mode").get<std::string>() == "max-abs" ? 0 : 1;
  f.input_divisors = j.at("input_divisors").get<std::vector<double>>();
  f.reservoir_divisors = j.at("reservoir_divisors").get<std::vector<double>>();
  f.w1.scale = j.at("w1").at("scale").get<double>();
  f.w1.q = j.at("w1").at("q").get<std::vector<std::int16_t>>();
  f.w2.scale = j.at("w2").at("scale").get<double>();
  f.w2.q = j.at("w2").at("q").get<std::vector<std::int16_t>>();
  f.seed = j.at("train_seed").get<std::uint64_t>();
  f.schema_id = j.at("schema_id").get<std::string>();
  write_file(model_path, encode(f));
}

}  // namespace lognnet
