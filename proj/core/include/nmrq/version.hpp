#pragma once

namespace nmrq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nmrq
