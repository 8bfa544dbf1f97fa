#pragma once

#include <cmath>

namespace smnorm::detail {

// Canonical strict ball predicate shared by every discrete ball in the
// toolkit: squared integer offsets against the squared radius, so dyadic
// radii on power-of-two grids decide exactly.
inline bool offset_in_ball(int o1, int o2, double spacing, double radius) {
    double q = static_cast<double>(static_cast<long long>(o1) * o1 +
                                   static_cast<long long>(o2) * o2);
    return q * (spacing * spacing) < radius * radius;
}

// Largest m in [0, cap] with m * spacing < radius (radius > 0).
inline int max_axis_offset(double spacing, double radius, int cap) {
    double q = radius / spacing;
    int m = q >= static_cast<double>(cap) ? cap : static_cast<int>(q);
    while (m > 0 && !(m * spacing < radius)) --m;
    while (m < cap && (m + 1) * spacing < radius) ++m;
    return m;
}

// Largest w in [0, cap] with (o1^2 + w^2) spacing^2 < radius^2, or -1 when
// the row does not intersect the ball.
inline int row_half_width(int o1, double spacing, double radius, int cap) {
    double r2 = radius * radius - static_cast<double>(o1) * o1 * spacing * spacing;
    if (!(r2 > 0.0)) return -1;
    double q = std::sqrt(r2) / spacing;
    int w = q >= static_cast<double>(cap) ? cap : static_cast<int>(q);
    while (w > 0 && !offset_in_ball(o1, w, spacing, radius)) --w;
    while (w < cap && offset_in_ball(o1, w + 1, spacing, radius)) ++w;
    if (!offset_in_ball(o1, w, spacing, radius)) return -1;
    return w;
}

} // namespace smnorm::detail
