#pragma once

namespace vcreg {

inline constexpr const char* version = "0.1.0";

} // namespace vcreg
