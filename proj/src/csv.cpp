#include "lognnet/csv.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace lognnet {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"' && trim(cell).empty()) {
      quoted = true;
      cell.clear();
    } else if (c == delim) {
      cells.push_back(trim(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

}  // namespace

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("'" + path + "' is empty");
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF)
    line.erase(0, 3);  // UTF-8 BOM

  CsvTable t;
  const std::size_t commas = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
  const std::size_t semis = static_cast<std::size_t>(std::count(line.begin(), line.end(), ';'));
  t.delimiter = semis > commas ? ';' : ',';
  t.header = split_line(line, t.delimiter);

  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    t.rows.push_back(split_line(line, t.delimiter));
  }
  return t;
}

}  // namespace lognnet
