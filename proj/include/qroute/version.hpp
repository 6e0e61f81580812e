#pragma once

namespace qroute {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qroute
