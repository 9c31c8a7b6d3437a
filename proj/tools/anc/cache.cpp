#include "cache.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include "cli_error.hpp"

namespace anc_cli {

std::optional<double> CalibrationCache::lookup(const nlohmann::json& key,
                                               std::string* warning) const {
  std::ifstream in(path_);
  if (!in) return std::nullopt;  // absent cache is an empty cache

  std::optional<double> found;
  long corrupt = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.contains("key") ||
        !record.contains("critical_p") || !record["critical_p"].is_number()) {
      ++corrupt;
      continue;
    }
    if (record["key"] == key) found = record["critical_p"].get<double>();
  }
  if (corrupt > 0 && warning) {
    *warning = "calibration cache " + path_ + " contains " + std::to_string(corrupt) +
               " unreadable record(s); they were ignored";
  }
  return found;
}

void CalibrationCache::store(const nlohmann::json& key, double critical_p) const {
  std::ofstream out(path_, std::ios::app);
  if (!out) {
    throw CliError(kExitData, "cannot write calibration cache: " + path_);
  }
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  nlohmann::json record{{"key", key}, {"critical_p", critical_p}, {"created", stamp}};
  out << record.dump() << "\n";
}

}  // namespace anc_cli
