#include "csv.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "cli_error.hpp"

namespace anc_cli {

namespace {

bool parse_cell(const std::string& cell, double* out) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t') ++end;
  if (*end != '\0') return false;
  if (!std::isfinite(value)) return false;
  *out = value;
  return true;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

CsvData read_xy_csv(const std::string& path, bool skip_header) {
  std::ifstream in(path);
  if (!in) {
    throw CliError(kExitData, "cannot open data file: " + path);
  }

  CsvData data;
  std::string line;
  bool header_pending = skip_header;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    ++data.rows_read;

    const auto comma = stripped.find(',');
    if (comma == std::string::npos ||
        stripped.find(',', comma + 1) != std::string::npos) {
      ++data.rows_dropped;
      continue;
    }
    double x = 0.0, y = 0.0;
    if (!parse_cell(trim(stripped.substr(0, comma)), &x) ||
        !parse_cell(trim(stripped.substr(comma + 1)), &y)) {
      ++data.rows_dropped;
      continue;
    }
    data.x.push_back(x);
    data.y.push_back(y);
  }

  if (data.x.empty()) {
    throw CliError(kExitData, "no usable rows in " + path);
  }
  if (2 * data.rows_dropped > data.rows_read) {
    throw CliError(kExitData, "more than half of the rows in " + path +
                                  " were dropped (" + std::to_string(data.rows_dropped) +
                                  " of " + std::to_string(data.rows_read) + ")");
  }
  return data;
}

}  // namespace anc_cli
