#include "smnorm/differences.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ball_detail.hpp"
#include "plane_ops.hpp"
#include "smnorm/errors.hpp"

namespace smnorm {

using detail::add_shifted_plane;

namespace {

// (-1)^(order-k) C(order,k), k = 0..order.
std::vector<double> signed_binomials(int order) {
    std::vector<double> c(static_cast<std::size_t>(order) + 1);
    double binom = 1.0;
    for (int k = 0; k <= order; ++k) {
        c[static_cast<std::size_t>(k)] = ((order - k) % 2 ? -binom : binom);
        binom = binom * (order - k) / (k + 1);
    }
    return c;
}

enum class PowKind { one, two, general, sup };
PowKind pow_kind(Exponent v) {
    if (v.is_inf()) return PowKind::sup;
    if (v.value() == 1.0) return PowKind::one;
    if (v.value() == 2.0) return PowKind::two;
    return PowKind::general;
}

std::array<int, 2> aligned_offset(const Grid& grid, std::array<double, 2> step) {
    std::array<int, 2> o{0, 0};
    const double h = grid.spacing();
    for (int a = 0; a < grid.dim(); ++a) {
        auto ia = static_cast<std::size_t>(a);
        double q = step[ia] / h;
        long r = std::lround(q);
        if (static_cast<double>(r) * h != step[ia])
            throw ParamError("difference step is not grid-aligned");
        o[ia] = static_cast<int>(r);
    }
    return o;
}

} // namespace

std::complex<double> delta_n(const SampledFunction& f, std::size_t node,
                             std::array<double, 2> step, int order) {
    if (order < 1) throw ParamError("difference order must be >= 1");
    if (node >= f.grid().node_count()) throw ParamError("node index out of range");
    auto o = aligned_offset(f.grid(), step);
    auto coef = signed_binomials(order);
    std::complex<double> acc = 0.0;
    for (int l = 0; l <= order; ++l) {
        std::size_t idx;
        if (!f.grid().shift(node, {l * o[0], l * o[1]}, idx))
            throw GeometryError("difference reads leave the grid");
        double re = f.re()[idx];
        double im = f.is_complex() ? f.im()[idx] : 0.0;
        acc += coef[static_cast<std::size_t>(l)] * std::complex<double>(re, im);
    }
    return acc;
}

std::complex<double> delta_n_domain(const SampledFunction& f, const DomainShape& domain,
                                    std::size_t node, std::array<double, 2> step, int order) {
    ensure_compatible(domain, f.grid());
    if (std::holds_alternative<FullTorus>(domain)) return delta_n(f, node, step, order);
    if (order < 1) throw ParamError("difference order must be >= 1");
    if (node >= f.grid().node_count()) throw ParamError("node index out of range");

    auto x = f.grid().coords(node);
    for (int m = 0; m <= 4 * order; ++m) {
        double lambda = static_cast<double>(m) / 4.0;
        std::array<double, 2> point{x[0] + lambda * step[0], x[1] + lambda * step[1]};
        if (!member(domain, point)) return 0.0;
    }
    // Segment inside the domain; reads beyond the grid's node box still count
    // as outside (the effective domain is clipped to the sampled box).
    auto o = aligned_offset(f.grid(), step);
    for (int l = 0; l <= order; ++l) {
        std::size_t idx;
        if (!f.grid().shift(node, {l * o[0], l * o[1]}, idx)) return 0.0;
    }
    return delta_n(f, node, step, order);
}

std::vector<DifferenceProfile> difference_profiles(const SampledFunction& f,
                                                   const DomainShape& domain, int order,
                                                   const std::vector<Exponent>& vs,
                                                   const RadiusLadder& ladder) {
    if (order < 1) throw ParamError("difference order must be >= 1");
    if (vs.empty()) throw ParamError("difference profile needs at least one exponent");
    const Grid& grid = f.grid();
    ensure_compatible(domain, grid);

    const bool torus = std::holds_alternative<FullTorus>(domain);
    const auto mask = domain_mask(domain, grid);
    const int n = grid.nodes_per_axis();
    const std::size_t count = grid.node_count();
    const double h = grid.spacing();
    const double cell = std::pow(h, grid.dim());
    const auto coef = signed_binomials(order);
    const bool complex_data = f.is_complex();
    const double* fre = f.re().data();
    const double* fim = complex_data ? f.im().data() : nullptr;
    const int levels = ladder.levels();

    // Admissible steps are nested across scales (|h| < t is the only radius
    // dependence), so each offset is folded in exactly once: offsets are
    // bucketed by the finest level that still admits them, levels run fine
    // to coarse, and the running accumulators are snapshotted per level.
    const auto offsets = ball_offsets(grid, ladder.radius(0));
    std::vector<std::vector<std::size_t>> bucket(static_cast<std::size_t>(levels));
    for (std::size_t k = 0; k < offsets.size(); ++k) {
        int finest = 0;
        for (int level = levels - 1; level >= 1; --level) {
            if (detail::offset_in_ball(offsets[k][0], offsets[k][1], h, ladder.radius(level))) {
                finest = level;
                break;
            }
        }
        bucket[static_cast<std::size_t>(finest)].push_back(k);
    }

    std::vector<DifferenceProfile> out(vs.size());
    for (auto& profile : out)
        profile.levels.assign(static_cast<std::size_t>(levels),
                              std::vector<double>(count, 0.0));

    std::vector<PowKind> kinds(vs.size());
    for (std::size_t iv = 0; iv < vs.size(); ++iv) kinds[iv] = pow_kind(vs[iv]);

    // Running sum (finite v) or running max (v = inf) per exponent.
    std::vector<std::vector<double>> acc(vs.size(), std::vector<double>(count, 0.0));
    std::vector<double> tmp_re(count), tmp_im(complex_data ? count : 0);
    std::vector<double> mod(count);

    auto fold_plane = [&](std::size_t iv) {
        double* dst = acc[iv].data();
        switch (kinds[iv]) {
            case PowKind::sup:
                for (std::size_t i = 0; i < count; ++i) dst[i] = std::max(dst[i], mod[i]);
                break;
            case PowKind::one:
                for (std::size_t i = 0; i < count; ++i) dst[i] += mod[i];
                break;
            case PowKind::two:
                for (std::size_t i = 0; i < count; ++i) dst[i] += mod[i] * mod[i];
                break;
            case PowKind::general: {
                const double vv = vs[iv].value();
                for (std::size_t i = 0; i < count; ++i) dst[i] += std::pow(mod[i], vv);
                break;
            }
        }
    };
    auto fold_value = [&](std::size_t iv, std::size_t x, double m) {
        switch (kinds[iv]) {
            case PowKind::sup: acc[iv][x] = std::max(acc[iv][x], m); break;
            case PowKind::one: acc[iv][x] += m; break;
            case PowKind::two: acc[iv][x] += m * m; break;
            case PowKind::general: acc[iv][x] += std::pow(m, vs[iv].value()); break;
        }
    };

    for (int level = levels - 1; level >= 0; --level) {
        for (std::size_t k : bucket[static_cast<std::size_t>(level)]) {
            const auto o = offsets[k];
            if (torus) {
                std::fill(tmp_re.begin(), tmp_re.end(), 0.0);
                for (int l = 0; l <= order; ++l)
                    add_shifted_plane(grid, fre,
                                      {static_cast<long>(l) * o[0], static_cast<long>(l) * o[1]},
                                      coef[static_cast<std::size_t>(l)], tmp_re.data());
                if (complex_data) {
                    std::fill(tmp_im.begin(), tmp_im.end(), 0.0);
                    for (int l = 0; l <= order; ++l)
                        add_shifted_plane(
                            grid, fim,
                            {static_cast<long>(l) * o[0], static_cast<long>(l) * o[1]},
                            coef[static_cast<std::size_t>(l)], tmp_im.data());
                    for (std::size_t i = 0; i < count; ++i)
                        mod[i] = std::sqrt(tmp_re[i] * tmp_re[i] + tmp_im[i] * tmp_im[i]);
                } else {
                    for (std::size_t i = 0; i < count; ++i) mod[i] = std::fabs(tmp_re[i]);
                }
                for (std::size_t iv = 0; iv < vs.size(); ++iv) fold_plane(iv);
                continue;
            }

            // Bounded domain: scan the rectangle of centers whose whole step
            // chain stays on the grid, then filter by the node mask.
            const long stride = grid.dim() == 1 ? o[0] : static_cast<long>(o[0]) * n + o[1];
            auto range = [&](int oa) {
                int lo = oa < 0 ? -order * oa : 0;
                int hi = oa > 0 ? n - 1 - order * oa : n - 1;
                return std::pair<int, int>{lo, hi};
            };
            auto [lo1, hi1] = range(o[0]);
            auto [lo2, hi2] = grid.dim() == 1 ? std::pair<int, int>{0, 0} : range(o[1]);
            if (lo1 > hi1 || lo2 > hi2) continue;

            for (int i1 = lo1; i1 <= hi1; ++i1) {
                const std::size_t row =
                    grid.dim() == 1 ? 0 : static_cast<std::size_t>(i1) * static_cast<std::size_t>(n);
                for (int i2 = lo2; i2 <= hi2; ++i2) {
                    const std::size_t x = grid.dim() == 1 ? static_cast<std::size_t>(i1)
                                                          : row + static_cast<std::size_t>(i2);
                    if (!mask[x]) continue;
                    bool admissible = true;
                    for (int l = 1; l <= order && admissible; ++l)
                        admissible = mask[x + static_cast<std::size_t>(l * stride)];
                    if (!admissible) continue;
                    double dre = 0.0, dim_ = 0.0;
                    for (int l = 0; l <= order; ++l) {
                        const std::size_t idx = x + static_cast<std::size_t>(l * stride);
                        dre += coef[static_cast<std::size_t>(l)] * fre[idx];
                        if (complex_data) dim_ += coef[static_cast<std::size_t>(l)] * fim[idx];
                    }
                    const double m =
                        complex_data ? std::sqrt(dre * dre + dim_ * dim_) : std::fabs(dre);
                    for (std::size_t iv = 0; iv < vs.size(); ++iv) fold_value(iv, x, m);
                }
            }
        }

        const double t = ladder.radius(level);
        const double tpow = std::pow(t, grid.dim());
        for (std::size_t iv = 0; iv < vs.size(); ++iv) {
            auto& plane = out[iv].levels[static_cast<std::size_t>(level)];
            if (vs[iv].is_inf()) {
                for (std::size_t i = 0; i < count; ++i) plane[i] = mask[i] ? acc[iv][i] : 0.0;
            } else {
                const double vv = vs[iv].value();
                for (std::size_t i = 0; i < count; ++i)
                    plane[i] = mask[i] ? std::pow(acc[iv][i] * cell / tpow, 1.0 / vv) : 0.0;
            }
        }
    }
    return out;
}

DifferenceProfile difference_profile(const SampledFunction& f, const DomainShape& domain,
                                     int order, Exponent v, const RadiusLadder& ladder) {
    auto profiles = difference_profiles(f, domain, order, {v}, ladder);
    return std::move(profiles.front());
}

double diff_local_mean(const SampledFunction& f, const DomainShape& domain, std::size_t node,
                       double t, int order, Exponent v) {
    const Grid& grid = f.grid();
    auto steps = admissible_steps(grid, domain, node, t, order);
    if (steps.offsets.empty()) return 0.0;
    auto coef = signed_binomials(order);
    const bool complex_data = f.is_complex();

    double acc = 0.0;
    for (auto o : steps.offsets) {
        double dre = 0.0, dim_ = 0.0;
        for (int l = 0; l <= order; ++l) {
            std::size_t idx;
            grid.shift(node, {l * o[0], l * o[1]}, idx);
            dre += coef[static_cast<std::size_t>(l)] * f.re()[idx];
            if (complex_data) dim_ += coef[static_cast<std::size_t>(l)] * f.im()[idx];
        }
        const double m = complex_data ? std::sqrt(dre * dre + dim_ * dim_) : std::fabs(dre);
        if (v.is_inf())
            acc = std::max(acc, m);
        else
            acc += std::pow(m, v.value());
    }
    if (v.is_inf()) return acc;
    return std::pow(acc * steps.weight / std::pow(t, grid.dim()), 1.0 / v.value());
}

double diff_seminorm(const SampledFunction& f, const DomainShape& domain,
                     const ValidatedParams& params) {
    const Grid& grid = f.grid();
    if (params.dim() != grid.dim())
        throw ParamError("parameter dimension does not match the grid");
    auto time_ladder = RadiusLadder::up_to(grid, params.time_horizon());
    auto profile = difference_profile(f, domain, params.order(), params.v(), time_ladder);
    auto plane = scale_integral(time_ladder, profile.levels, params.s(), params.q());
    return morrey_plane_norm(grid, domain, plane, params.p(), params.u(),
                             RadiusLadder::full(grid));
}

NormReport diff_quasinorm(const SampledFunction& f, const DomainShape& domain,
                          const ValidatedParams& params, BaseTerm base) {
    auto start = std::chrono::steady_clock::now();
    NormReport report;
    report.route = Route::diff;
    report.base_term = base;
    report.domain = domain_name(domain);
    report.n = f.grid().nodes_per_axis();
    report.dim = f.grid().dim();
    report.params = params.raw();
    report.lower_window = params.lower_window();
    report.window_ok = params.window_ok();

    auto full = RadiusLadder::full(f.grid());
    report.base = base == BaseTerm::plain
                      ? morrey_norm(f, domain, params.p(), params.u(), full)
                      : local_average_term(f, domain, params.v(), params.base_radius(),
                                           params.p(), params.u(), full);
    report.seminorm = diff_seminorm(f, domain, params);
    report.total = report.base + report.seminorm;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace smnorm
