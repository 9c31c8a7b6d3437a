#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rancova {

// Failure categories surfaced through the C API as status codes.
enum class errc {
  invalid_argument,
  insufficient_data,
  not_comparable,
  degenerate_cloud,
  resample_exhausted,
  io,
  internal,
};

std::string_view errc_name(errc code) noexcept;

// All core failures carry the category plus the pipeline stage that failed
// ("design-points", "bootstrap", "calibration", ...).
class anc_error : public std::runtime_error {
 public:
  anc_error(errc code, std::string stage, const std::string& message)
      : std::runtime_error("[" + stage + "] " + message),
        code_(code),
        stage_(std::move(stage)) {}

  errc code() const noexcept { return code_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  errc code_;
  std::string stage_;
};

[[noreturn]] inline void fail(errc code, std::string stage, const std::string& message) {
  throw anc_error(code, std::move(stage), message);
}

inline std::string_view errc_name(errc code) noexcept {
  switch (code) {
    case errc::invalid_argument: return "invalid-argument";
    case errc::insufficient_data: return "insufficient-data";
    case errc::not_comparable: return "not-comparable";
    case errc::degenerate_cloud: return "degenerate-cloud";
    case errc::resample_exhausted: return "resample-exhausted";
    case errc::io: return "io";
    case errc::internal: return "internal";
  }
  return "internal";
}

}  // namespace rancova
