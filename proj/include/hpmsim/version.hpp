#pragma once

namespace hpmsim {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace hpmsim
