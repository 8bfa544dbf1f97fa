#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

#include "ball_detail.hpp"
#include "smnorm/errors.hpp"
#include "smnorm/geometry.hpp"

namespace smnorm {

using detail::max_axis_offset;
using detail::row_half_width;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Sum over the index window [i + lo, i + hi] for every i, using a prefix sum;
// wraps when periodic, clamps to [0, n) otherwise.  Window sums are clamped
// at zero: the inputs are non-negative and a prefix-sum difference may round
// barely below zero.
void window_sums(const double* prefix, int n, bool periodic, int lo, int hi, double* out) {
    int width = hi - lo + 1;
    for (int i = 0; i < n; ++i) {
        double s;
        if (periodic) {
            if (width >= n) {
                s = prefix[n];
            } else {
                int start = (i + lo) % n;
                if (start < 0) start += n;
                int end = start + width;
                s = end <= n ? prefix[end] - prefix[start]
                             : (prefix[n] - prefix[start]) + prefix[end - n];
            }
        } else {
            int a = std::max(0, i + lo);
            int b = std::min(n - 1, i + hi);
            s = a > b ? 0.0 : prefix[b + 1] - prefix[a];
        }
        out[i] = std::max(0.0, s);
    }
}

// Max over the index window [i + lo, i + hi] for every i (monotone deque over
// the extended sequence).  Out-of-range positions contribute -inf.
void window_maxes(const double* a, int n, bool periodic, int lo, int hi, double* out) {
    int width = hi - lo + 1;
    if (periodic && width >= n) {
        double m = kNegInf;
        for (int j = 0; j < n; ++j) m = std::max(m, a[j]);
        for (int i = 0; i < n; ++i) out[i] = m;
        return;
    }
    auto fetch = [&](int e) {
        int j = lo + e;
        if (periodic) {
            j %= n;
            if (j < 0) j += n;
            return a[j];
        }
        return (j >= 0 && j < n) ? a[j] : kNegInf;
    };
    std::deque<int> dq;  // indices e with decreasing a-values
    int total = n + width - 1;
    for (int e = 0; e < total; ++e) {
        double val = fetch(e);
        while (!dq.empty() && fetch(dq.back()) <= val) dq.pop_back();
        dq.push_back(e);
        int i = e - width + 1;  // window [i, i+width-1] just completed
        if (i < 0) continue;
        while (dq.front() < i) dq.pop_front();
        out[i] = fetch(dq.front());
    }
}

void check_args(const Grid& grid, std::span<const double> a, double radius) {
    if (a.size() != grid.node_count())
        throw ParamError("ball map: value array does not match the grid");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw ParamError("ball map: radius must be positive and finite");
}

} // namespace

std::vector<double> ball_sum_map(const Grid& grid, std::span<const double> a, double radius) {
    check_args(grid, a, radius);
    const int n = grid.nodes_per_axis();
    const double h = grid.spacing();
    const bool periodic = grid.periodic();
    const int pos_cap = periodic ? n / 2 : n - 1;
    const int neg_cap = periodic ? n / 2 - 1 : n - 1;

    if (grid.dim() == 1) {
        std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
        for (int j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + a[static_cast<std::size_t>(j)];
        std::vector<double> out(a.size());
        window_sums(prefix.data(), n, periodic, -max_axis_offset(h, radius, neg_cap),
                    max_axis_offset(h, radius, pos_cap), out.data());
        return out;
    }

    // Row prefix sums once, then one window pass per row offset.
    std::vector<double> prefix(static_cast<std::size_t>(n) * (n + 1));
    for (int r = 0; r < n; ++r) {
        double* row = prefix.data() + static_cast<std::size_t>(r) * (n + 1);
        const double* src = a.data() + static_cast<std::size_t>(r) * n;
        row[0] = 0.0;
        for (int j = 0; j < n; ++j) row[j + 1] = row[j] + src[j];
    }
    std::vector<double> out(a.size(), 0.0);
    std::vector<double> row_sums(static_cast<std::size_t>(n));
    int row_hi = max_axis_offset(h, radius, pos_cap);
    int row_lo = -max_axis_offset(h, radius, neg_cap);
    for (int o1 = row_lo; o1 <= row_hi; ++o1) {
        int w_hi = row_half_width(o1, h, radius, pos_cap);
        int w_lo = row_half_width(o1, h, radius, neg_cap);
        if (w_hi < 0) continue;
        for (int i1 = 0; i1 < n; ++i1) {
            int src = i1 + o1;
            if (periodic) {
                src %= n;
                if (src < 0) src += n;
            } else if (src < 0 || src >= n) {
                continue;
            }
            const double* row = prefix.data() + static_cast<std::size_t>(src) * (n + 1);
            double* dst = out.data() + static_cast<std::size_t>(i1) * n;
            window_sums(row, n, periodic, -w_lo, w_hi, row_sums.data());
            for (int i2 = 0; i2 < n; ++i2) dst[i2] += row_sums[i2];
        }
    }
    return out;
}

std::vector<double> ball_max_map(const Grid& grid, std::span<const double> a, double radius) {
    check_args(grid, a, radius);
    const int n = grid.nodes_per_axis();
    const double h = grid.spacing();
    const bool periodic = grid.periodic();
    const int pos_cap = periodic ? n / 2 : n - 1;
    const int neg_cap = periodic ? n / 2 - 1 : n - 1;

    if (grid.dim() == 1) {
        std::vector<double> out(a.size());
        window_maxes(a.data(), n, periodic, -max_axis_offset(h, radius, neg_cap),
                     max_axis_offset(h, radius, pos_cap), out.data());
        return out;
    }

    std::vector<double> out(a.size(), kNegInf);
    std::vector<double> slid(static_cast<std::size_t>(n) * n);
    int row_hi = max_axis_offset(h, radius, pos_cap);
    int row_lo = -max_axis_offset(h, radius, neg_cap);
    for (int o1 = row_lo; o1 <= row_hi; ++o1) {
        int w_hi = row_half_width(o1, h, radius, pos_cap);
        int w_lo = row_half_width(o1, h, radius, neg_cap);
        if (w_hi < 0) continue;
        for (int r = 0; r < n; ++r)
            window_maxes(a.data() + static_cast<std::size_t>(r) * n, n, periodic, -w_lo, w_hi,
                         slid.data() + static_cast<std::size_t>(r) * n);
        for (int i1 = 0; i1 < n; ++i1) {
            int src = i1 + o1;
            if (periodic) {
                src %= n;
                if (src < 0) src += n;
            } else if (src < 0 || src >= n) {
                continue;
            }
            const double* s = slid.data() + static_cast<std::size_t>(src) * n;
            double* dst = out.data() + static_cast<std::size_t>(i1) * n;
            for (int i2 = 0; i2 < n; ++i2) dst[i2] = std::max(dst[i2], s[i2]);
        }
    }
    return out;
}

} // namespace smnorm
