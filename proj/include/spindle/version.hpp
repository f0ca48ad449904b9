#pragma once

namespace spindle {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace spindle
