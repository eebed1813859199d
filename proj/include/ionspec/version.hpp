#pragma once

namespace ionspec {

inline constexpr const char* kToolName = "ionspec";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace ionspec
