#pragma once

namespace ppb {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ppb
