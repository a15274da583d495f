#pragma once

namespace gsmt {

inline constexpr const char* kToolName = "gsmt";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace gsmt
