#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace anc_cli {

// Append-only calibration cache: one JSON object per line, {"key": {...},
// "critical_p": v, "created": "..."}. Unreadable lines are skipped with a
// warning; the last record matching the key wins.
class CalibrationCache {
 public:
  explicit CalibrationCache(std::string path) : path_(std::move(path)) {}

  std::optional<double> lookup(const nlohmann::json& key,
                               std::string* warning) const;
  void store(const nlohmann::json& key, double critical_p) const;

 private:
  std::string path_;
};

}  // namespace anc_cli
