// io.hpp — deterministic, locale-independent numeric formatting for emitted
// tables (9 significant digits, '.' decimal separator, '\n' line endings).

#pragma once

#include <charconv>
#include <string>

namespace qroute {

inline std::string format_number(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

} // namespace qroute
