#pragma once

namespace daqlink {

inline constexpr const char* kToolName = "daqlink";
inline constexpr const char* kVersion = "1.0.0";

}  // namespace daqlink
