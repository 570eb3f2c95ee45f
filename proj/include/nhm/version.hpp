#pragma once

namespace nhm {
inline constexpr const char* kVersion = "1.0.0";
}
