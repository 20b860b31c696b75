#pragma once

namespace wirenoise {

inline constexpr const char* version = "0.1.0";

} // namespace wirenoise
