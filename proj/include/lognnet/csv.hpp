#pragma once

#include <string>
#include <vector>

namespace lognnet {

// Minimal delimited-text table: header plus rows of string cells. The
// delimiter is autodetected from the header line (comma vs semicolon, the
// one that appears more often). Double-quoted cells are unwrapped; no
// multi-line cells. Leading/trailing whitespace of a cell is trimmed.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  char delimiter = ',';

  // Column index by name; -1 when absent.
  int column(const std::string& name) const;
};

// Throws std::runtime_error when the file cannot be read or has no header.
CsvTable read_csv(const std::string& path);

}  // namespace lognnet
