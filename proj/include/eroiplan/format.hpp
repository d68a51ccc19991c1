#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace eroiplan {

/// Shortest decimal form that round-trips the exact double (std::to_chars).
/// Used for every numeric serialization so no information is lost.
inline std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace eroiplan
