#pragma once

namespace lcrit {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "lcrit";

} // namespace lcrit
