#pragma once

namespace qotto {
inline constexpr const char* kVersion = "0.1.0";
}
