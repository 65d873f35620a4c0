#pragma once

namespace cascadelab {

inline constexpr const char* kToolName = "cascadelab";
inline constexpr const char* kVersion = "0.1.0";

} // namespace cascadelab
