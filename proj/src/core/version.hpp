#pragma once

namespace rancova {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rancova
