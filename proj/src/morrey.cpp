#include "smnorm/morrey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "smnorm/errors.hpp"

namespace smnorm {

namespace {

constexpr double kLn2 = std::numbers::ln2;

int log2_int(int n) {
    int j = 0;
    while ((1 << (j + 1)) <= n) ++j;
    return j;
}

void check_pu(double p, double u) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ParamError("p must be positive and finite");
    if (!(u > 0.0) || !std::isfinite(u)) throw ParamError("u must be positive and finite");
    if (u < p) throw ParamError("Morrey exponents require p <= u");
}

} // namespace

RadiusLadder RadiusLadder::full(const Grid& grid, int j_min) {
    int j_max = log2_int(grid.nodes_per_axis()) - 1;
    if (j_min < 0 || j_min > j_max)
        throw ParamError("radius ladder start level out of range");
    return RadiusLadder(grid.extent(), j_min, j_max);
}

RadiusLadder RadiusLadder::up_to(const Grid& grid, Exponent horizon) {
    int j_max = log2_int(grid.nodes_per_axis()) - 1;
    int j_min = 0;
    if (!horizon.is_inf()) {
        if (!(horizon.value() > 0.0))
            throw ParamError("time horizon must be positive");
        while (j_min <= j_max && grid.extent() * std::pow(0.5, j_min) > horizon.value())
            ++j_min;
        if (j_min > j_max)
            throw ParamError("time horizon lies below the finest ladder radius");
    }
    return RadiusLadder(grid.extent(), j_min, j_max);
}

double morrey_plane_norm(const Grid& grid, const DomainShape& domain,
                         std::span<const double> plane, double p, double u,
                         const RadiusLadder& ladder) {
    check_pu(p, u);
    ensure_compatible(domain, grid);
    if (plane.size() != grid.node_count())
        throw ParamError("plane size does not match the grid");

    auto mask = domain_mask(domain, grid);
    const double cell = std::pow(grid.spacing(), grid.dim());
    std::vector<double> a(plane.size(), 0.0);
    for (std::size_t i = 0; i < plane.size(); ++i)
        if (mask[i]) a[i] = std::pow(plane[i], p) * cell;

    const double theta = grid.dim() * (1.0 / u - 1.0 / p);
    double best = 0.0;
    for (int level = 0; level < ladder.levels(); ++level) {
        const double r = ladder.radius(level);
        auto sums = ball_sum_map(grid, a, r);
        const double weight = std::pow(r, theta);
        for (std::size_t i = 0; i < sums.size(); ++i) {
            if (!mask[i]) continue;
            best = std::max(best, weight * std::pow(sums[i], 1.0 / p));
        }
    }
    return best;
}

double morrey_norm(const SampledFunction& f, const DomainShape& domain, double p, double u,
                   const RadiusLadder& ladder) {
    return morrey_plane_norm(f.grid(), domain, f.modulus(), p, u, ladder);
}

double local_average_term(const SampledFunction& f, const DomainShape& domain, Exponent v,
                          double R, double p, double u, const RadiusLadder& ladder) {
    if (!(R > 0.0) || !std::isfinite(R))
        throw ParamError("base radius must be positive and finite");
    const Grid& grid = f.grid();
    ensure_compatible(domain, grid);
    auto mask = domain_mask(domain, grid);
    auto mod = f.modulus();
    std::vector<double> g(mod.size(), 0.0);

    if (v.is_inf()) {
        std::vector<double> masked(mod.size(), -std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < mod.size(); ++i)
            if (mask[i]) masked[i] = mod[i];
        auto maxes = ball_max_map(grid, masked, R);
        for (std::size_t i = 0; i < g.size(); ++i)
            if (mask[i]) g[i] = std::max(0.0, maxes[i]);
    } else {
        const double cell = std::pow(grid.spacing(), grid.dim());
        std::vector<double> a(mod.size(), 0.0);
        for (std::size_t i = 0; i < mod.size(); ++i)
            if (mask[i]) a[i] = std::pow(mod[i], v.value()) * cell;
        auto sums = ball_sum_map(grid, a, R);
        for (std::size_t i = 0; i < g.size(); ++i)
            if (mask[i]) g[i] = std::pow(sums[i], 1.0 / v.value());
    }
    return morrey_plane_norm(grid, domain, g, p, u, ladder);
}

PowerIdentityCheck power_identity_check(const SampledFunction& f, const DomainShape& domain,
                                        double p, double u, double mu,
                                        const RadiusLadder& ladder) {
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw ParamError("power identity exponent mu must be positive and finite");
    PowerIdentityCheck out;
    out.lhs = morrey_norm(f, domain, p, u, ladder);

    auto mod = f.modulus();
    std::vector<double> powered(mod.size());
    for (std::size_t i = 0; i < mod.size(); ++i) powered[i] = std::pow(mod[i], mu);
    out.rhs = std::pow(
        morrey_plane_norm(f.grid(), domain, powered, p / mu, u / mu, ladder), 1.0 / mu);

    double scale = std::max({std::fabs(out.lhs), std::fabs(out.rhs), 1e-300});
    out.rel_err = std::fabs(out.lhs - out.rhs) / scale;
    return out;
}

std::vector<double> scale_integral(const RadiusLadder& ladder,
                                   const std::vector<std::vector<double>>& planes, double s,
                                   Exponent q) {
    if (planes.size() != static_cast<std::size_t>(ladder.levels()))
        throw ParamError("scale integral: one plane per ladder level required");
    if (planes.empty()) throw ParamError("scale integral: empty ladder");
    const std::size_t count = planes.front().size();
    for (const auto& plane : planes)
        if (plane.size() != count)
            throw ParamError("scale integral: planes of mismatched size");

    std::vector<double> out(count, 0.0);
    if (q.is_inf()) {
        for (int level = 0; level < ladder.levels(); ++level) {
            const double w = std::pow(ladder.radius(level), -s);
            const auto& plane = planes[static_cast<std::size_t>(level)];
            for (std::size_t i = 0; i < count; ++i)
                out[i] = std::max(out[i], w * plane[i]);
        }
        return out;
    }
    const double qv = q.value();
    for (int level = 0; level < ladder.levels(); ++level) {
        const double w = std::pow(ladder.radius(level), -s);
        const auto& plane = planes[static_cast<std::size_t>(level)];
        for (std::size_t i = 0; i < count; ++i)
            out[i] += std::pow(w * plane[i], qv) * kLn2;
    }
    for (std::size_t i = 0; i < count; ++i) out[i] = std::pow(out[i], 1.0 / qv);
    return out;
}

} // namespace smnorm
