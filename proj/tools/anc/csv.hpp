#pragma once

#include <string>
#include <vector>

namespace anc_cli {

struct CsvData {
  std::vector<double> x;
  std::vector<double> y;
  long rows_read = 0;     // non-empty data lines considered
  long rows_dropped = 0;  // missing / non-numeric / malformed rows
};

// Two numeric comma-separated columns; rows with missing or non-numeric
// cells are dropped and counted. Throws CliError on an unreadable file, zero
// usable rows, or more than half of the rows dropped.
CsvData read_xy_csv(const std::string& path, bool skip_header);

}  // namespace anc_cli
