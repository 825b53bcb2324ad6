#pragma once

namespace herd {

inline constexpr const char* kToolName = "herd";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace herd
