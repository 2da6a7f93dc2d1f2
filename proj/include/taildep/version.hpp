#pragma once

namespace taildep {
inline constexpr const char* kVersion = "0.1.0";
}
