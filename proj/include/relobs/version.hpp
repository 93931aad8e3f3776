#pragma once

namespace relobs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace relobs
