#pragma once

namespace nilsson {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nilsson
