#pragma once

namespace flskit {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "flskit";

} // namespace flskit
