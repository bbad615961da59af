#pragma once

namespace agsparse {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace agsparse
