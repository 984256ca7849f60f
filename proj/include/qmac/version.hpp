#pragma once

namespace qmac {
inline constexpr const char* kVersion = "0.1.0";
}
