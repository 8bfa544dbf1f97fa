#pragma once

#include <cstdio>
#include <string>

namespace smnorm {

/// Shortest decimal literal that parses back to exactly x (for stable,
/// readable keys and CSV cells).
inline std::string shortest_double(double x) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    return buf;
}

} // namespace smnorm
