#pragma once

namespace eqlat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace eqlat
