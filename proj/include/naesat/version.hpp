#pragma once

namespace naesat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace naesat
