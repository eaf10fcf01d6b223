#pragma once

namespace kwlab {
inline constexpr const char* kVersion = "0.1.0";
}
