#pragma once

#include <array>
#include <cstddef>

#include "smnorm/grid.hpp"

namespace smnorm::detail {

// dst[i] += c * src[(i + shift) mod n], shift already reduced to [0, n).
inline void add_shifted_circular(double* dst, const double* src, int n, int shift, double c) {
    for (int i = 0; i < n - shift; ++i) dst[i] += c * src[i + shift];
    for (int i = n - shift; i < n; ++i) dst[i] += c * src[i + shift - n];
}

inline int reduce_mod(long value, int n) {
    long r = value % n;
    if (r < 0) r += n;
    return static_cast<int>(r);
}

// Periodic grids: dst[x] += coef * src[x + sh] with wrap-around.
inline void add_shifted_plane(const Grid& grid, const double* src, std::array<long, 2> sh,
                              double coef, double* dst) {
    const int n = grid.nodes_per_axis();
    if (grid.dim() == 1) {
        add_shifted_circular(dst, src, n, reduce_mod(sh[0], n), coef);
        return;
    }
    const int s1 = reduce_mod(sh[0], n);
    const int s2 = reduce_mod(sh[1], n);
    for (int r = 0; r < n; ++r) {
        int sr = r + s1;
        if (sr >= n) sr -= n;
        add_shifted_circular(dst + static_cast<std::size_t>(r) * n,
                             src + static_cast<std::size_t>(sr) * n, n, s2, coef);
    }
}

// Non-periodic grids: dst[x] += coef * src[x + o] over the centers x for
// which x + o stays on the grid.
inline void add_shifted_rect(const Grid& grid, const double* src, std::array<int, 2> o,
                             double coef, double* dst) {
    const int n = grid.nodes_per_axis();
    const int lo1 = o[0] < 0 ? -o[0] : 0;
    const int hi1 = o[0] > 0 ? n - 1 - o[0] : n - 1;
    if (lo1 > hi1) return;
    if (grid.dim() == 1) {
        for (int i = lo1; i <= hi1; ++i) dst[i] += coef * src[i + o[0]];
        return;
    }
    const int lo2 = o[1] < 0 ? -o[1] : 0;
    const int hi2 = o[1] > 0 ? n - 1 - o[1] : n - 1;
    if (lo2 > hi2) return;
    const long stride = static_cast<long>(o[0]) * n + o[1];
    for (int i1 = lo1; i1 <= hi1; ++i1) {
        const std::size_t row = static_cast<std::size_t>(i1) * static_cast<std::size_t>(n);
        double* drow = dst + row + static_cast<std::size_t>(lo2);
        const double* srow = src + static_cast<std::size_t>(static_cast<long>(row) + stride) +
                             static_cast<std::size_t>(lo2);
        for (int i2 = 0; i2 <= hi2 - lo2; ++i2) drow[i2] += coef * srow[i2];
    }
}

} // namespace smnorm::detail
