#pragma once

namespace dqpt {
inline constexpr const char* kVersion = "1.0.0";
}
