#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lognnet {

// N:P:H:M — input features, reservoir outputs, hidden neurons, classes.
struct Architecture {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t h = 0;
  std::size_t m = 0;

  bool valid() const { return n >= 1 && p >= 1 && h >= 1 && m >= 1; }

  std::string str() const {
    return std::to_string(n) + ":" + std::to_string(p) + ":" + std::to_string(h) +
           ":" + std::to_string(m);
  }

  bool operator==(const Architecture&) const = default;
};

// Parses "N:P:H:M"; throws std::invalid_argument on malformed input.
inline Architecture parse_architecture(const std::string& text) {
  Architecture a;
  std::size_t* fields[4] = {&a.n, &a.p, &a.h, &a.m};
  std::size_t pos = 0;
  for (int f = 0; f < 4; ++f) {
    if (pos >= text.size()) throw std::invalid_argument("architecture: expected N:P:H:M, got '" + text + "'");
    std::size_t end = text.find(':', pos);
    if (f < 3 && end == std::string::npos)
      throw std::invalid_argument("architecture: expected N:P:H:M, got '" + text + "'");
    if (f == 3) end = text.size();
    const std::string part = text.substr(pos, end - pos);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("architecture: non-numeric field '" + part + "'");
    *fields[f] = static_cast<std::size_t>(std::stoull(part));
    pos = end + 1;
  }
  if (!a.valid()) throw std::invalid_argument("architecture: all of N,P,H,M must be >= 1");
  return a;
}

}  // namespace lognnet
