#pragma once

namespace nsb {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nsb
