#pragma once

namespace entrocrit {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "entrocrit";

}  // namespace entrocrit
