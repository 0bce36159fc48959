#pragma once

namespace xorcodes {

inline constexpr const char* version = "0.1.0";

} // namespace xorcodes
