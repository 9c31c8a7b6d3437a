#pragma once

#include <stdexcept>
#include <string>

#include "rancova/rancova.h"

namespace anc_cli {

// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical/degeneracy.
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;

class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}

  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

inline int exit_code_for(anc_status status) {
  switch (status) {
    case ANC_OK: return 0;
    case ANC_ERR_INVALID_ARGUMENT: return kExitUsage;
    case ANC_ERR_IO:
    case ANC_ERR_INSUFFICIENT_DATA:
    case ANC_ERR_NOT_COMPARABLE: return kExitData;
    default: return kExitNumeric;
  }
}

// Raise on a failed library call, carrying the library's message.
inline void check(anc_status status, const char* what) {
  if (status == ANC_OK) return;
  throw CliError(exit_code_for(status), std::string(what) + ": " + anc_last_error());
}

}  // namespace anc_cli
