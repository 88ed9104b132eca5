#pragma once

namespace mke {

inline constexpr const char kToolName[] = "mke";
inline constexpr const char kVersion[] = "0.1.0";

}  // namespace mke
