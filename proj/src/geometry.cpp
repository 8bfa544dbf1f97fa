#include "smnorm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ball_detail.hpp"
#include "smnorm/errors.hpp"
#include "smnorm/numfmt.hpp"

namespace smnorm {

using detail::max_axis_offset;
using detail::row_half_width;

namespace {

double cross(std::array<double, 2> a, std::array<double, 2> b, std::array<double, 2> c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

} // namespace

double SpecialLipschitz::height(double x1) const {
    switch (graph) {
        case Graph::flat: return level;
        case Graph::vee: return level + scale * std::fabs(x1 - shift);
        case Graph::sine:
            return level + scale * std::sin(2.0 * std::numbers::pi * (x1 - shift));
    }
    return level;
}

double SpecialLipschitz::lipschitz_bound() const {
    switch (graph) {
        case Graph::flat: return 0.0;
        case Graph::vee: return std::fabs(scale);
        case Graph::sine: return 2.0 * std::numbers::pi * std::fabs(scale);
    }
    return 0.0;
}

ConvexPolytope make_polytope(std::vector<std::array<double, 2>> vertices) {
    if (vertices.size() < 3)
        throw GeometryError("a convex polytope needs at least three vertices");
    double area2 = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        auto a = vertices[i];
        auto b = vertices[(i + 1) % vertices.size()];
        area2 += a[0] * b[1] - b[0] * a[1];
    }
    if (area2 == 0.0) throw GeometryError("polytope vertices are degenerate");
    if (area2 < 0.0) std::reverse(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        auto a = vertices[i];
        auto b = vertices[(i + 1) % vertices.size()];
        auto c = vertices[(i + 2) % vertices.size()];
        if (!(cross(a, b, c) > 0.0))
            throw GeometryError("polytope vertices are not strictly convex");
    }
    return ConvexPolytope{std::move(vertices)};
}

DomainShape parse_domain(std::string_view text) {
    auto split = [](std::string_view s, char sep) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            auto pos = s.find(sep, start);
            if (pos == std::string_view::npos) {
                parts.emplace_back(s.substr(start));
                return parts;
            }
            parts.emplace_back(s.substr(start, pos - start));
            start = pos + 1;
        }
    };
    auto num = [](const std::string& t) {
        try {
            std::size_t pos = 0;
            double v = std::stod(t, &pos);
            if (pos != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw ParamError("domain spec: bad number '" + t + "'");
        }
    };

    auto parts = split(text, ':');
    const std::string& kind = parts[0];
    if (kind == "torus") {
        if (parts.size() != 1) throw ParamError("domain spec: torus takes no arguments");
        return FullTorus{};
    }
    if (kind == "interval") {
        if (parts.size() != 3) throw ParamError("domain spec: expected interval:a:b");
        Interval iv{num(parts[1]), num(parts[2])};
        if (!(iv.a < iv.b)) throw ParamError("domain spec: interval needs a < b");
        return iv;
    }
    if (kind == "polytope") {
        if (parts.size() != 2) throw ParamError("domain spec: expected polytope:x,y;x,y;...");
        std::vector<std::array<double, 2>> vertices;
        for (const auto& vtx : split(parts[1], ';')) {
            auto coords = split(vtx, ',');
            if (coords.size() != 2)
                throw ParamError("domain spec: polytope vertex needs two coordinates");
            vertices.push_back({num(coords[0]), num(coords[1])});
        }
        return make_polytope(std::move(vertices));
    }
    if (kind == "graph") {
        if (parts.size() < 3 || parts.size() > 5)
            throw ParamError("domain spec: expected graph:flat|vee|sine:level[:scale[:shift]]");
        SpecialLipschitz g;
        if (parts[1] == "flat") g.graph = SpecialLipschitz::Graph::flat;
        else if (parts[1] == "vee") g.graph = SpecialLipschitz::Graph::vee;
        else if (parts[1] == "sine") g.graph = SpecialLipschitz::Graph::sine;
        else throw ParamError("domain spec: unknown graph kind '" + parts[1] + "'");
        g.level = num(parts[2]);
        if (parts.size() > 3) g.scale = num(parts[3]);
        if (parts.size() > 4) g.shift = num(parts[4]);
        return g;
    }
    throw ParamError("unknown domain kind '" + kind + "'");
}

std::string domain_name(const DomainShape& domain) {
    struct Namer {
        std::string operator()(const FullTorus&) const { return "torus"; }
        std::string operator()(const Interval& iv) const {
            return "interval:" + shortest_double(iv.a) + ":" + shortest_double(iv.b);
        }
        std::string operator()(const SpecialLipschitz& g) const {
            const char* kind = g.graph == SpecialLipschitz::Graph::flat  ? "flat"
                               : g.graph == SpecialLipschitz::Graph::vee ? "vee"
                                                                         : "sine";
            return std::string("graph:") + kind + ":" + shortest_double(g.level) + ":" +
                   shortest_double(g.scale) + ":" + shortest_double(g.shift);
        }
        std::string operator()(const ConvexPolytope& p) const {
            std::string out = "polytope:";
            for (std::size_t i = 0; i < p.vertices.size(); ++i) {
                if (i) out += ';';
                out += shortest_double(p.vertices[i][0]) + "," +
                       shortest_double(p.vertices[i][1]);
            }
            return out;
        }
    };
    return std::visit(Namer{}, domain);
}

bool member(const DomainShape& domain, std::array<double, 2> x) {
    struct Member {
        std::array<double, 2> x;
        bool operator()(const FullTorus&) const { return true; }
        bool operator()(const Interval& iv) const { return iv.a < x[0] && x[0] < iv.b; }
        bool operator()(const SpecialLipschitz& g) const { return x[1] > g.height(x[0]); }
        bool operator()(const ConvexPolytope& p) const {
            for (std::size_t i = 0; i < p.vertices.size(); ++i) {
                auto a = p.vertices[i];
                auto b = p.vertices[(i + 1) % p.vertices.size()];
                if (!(cross(a, b, x) > 0.0)) return false;
            }
            return true;
        }
    };
    return std::visit(Member{x}, domain);
}

void ensure_compatible(const DomainShape& domain, const Grid& grid) {
    struct Check {
        const Grid& grid;
        void operator()(const FullTorus&) const {
            if (!grid.periodic()) throw GeometryError("the torus needs a periodic grid");
        }
        void operator()(const Interval&) const {
            if (grid.dim() != 1 || grid.periodic())
                throw GeometryError("an interval needs a 1d non-periodic grid");
        }
        void operator()(const SpecialLipschitz&) const {
            if (grid.dim() != 2 || grid.periodic())
                throw GeometryError("a Lipschitz graph region needs a 2d non-periodic grid");
        }
        void operator()(const ConvexPolytope&) const {
            if (grid.dim() != 2 || grid.periodic())
                throw GeometryError("a convex polytope needs a 2d non-periodic grid");
        }
    };
    std::visit(Check{grid}, domain);
}

std::vector<std::uint8_t> domain_mask(const DomainShape& domain, const Grid& grid) {
    ensure_compatible(domain, grid);
    std::vector<std::uint8_t> mask(grid.node_count(), 0);
    if (std::holds_alternative<FullTorus>(domain)) {
        std::fill(mask.begin(), mask.end(), 1);
        return mask;
    }
    for (std::size_t i = 0; i < mask.size(); ++i)
        mask[i] = member(domain, grid.coords(i)) ? 1 : 0;
    return mask;
}

std::vector<std::array<int, 2>> ball_offsets(const Grid& grid, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw ParamError("ball radius must be positive and finite");
    const int n = grid.nodes_per_axis();
    const double h = grid.spacing();
    const int pos_cap = grid.periodic() ? n / 2 : n - 1;
    const int neg_cap = grid.periodic() ? n / 2 - 1 : n - 1;

    std::vector<std::array<int, 2>> offsets;
    if (grid.dim() == 1) {
        int hi = max_axis_offset(h, radius, pos_cap);
        int lo = -max_axis_offset(h, radius, neg_cap);
        for (int o = lo; o <= hi; ++o) offsets.push_back({o, 0});
        return offsets;
    }
    int hi = max_axis_offset(h, radius, pos_cap);
    int lo = -max_axis_offset(h, radius, neg_cap);
    for (int o1 = lo; o1 <= hi; ++o1) {
        int w_hi = row_half_width(o1, h, radius, pos_cap);
        int w_lo = row_half_width(o1, h, radius, neg_cap);
        if (w_hi < 0) continue;
        for (int o2 = -w_lo; o2 <= w_hi; ++o2) offsets.push_back({o1, o2});
    }
    return offsets;
}

QuadratureSet ball_quadrature(const Grid& grid, const DomainShape& domain,
                              std::size_t center, double radius) {
    ensure_compatible(domain, grid);
    auto mask = domain_mask(domain, grid);
    QuadratureSet quad;
    quad.weight = std::pow(grid.spacing(), grid.dim());
    for (auto o : ball_offsets(grid, radius)) {
        std::size_t node;
        if (!grid.shift(center, o, node)) continue;
        if (mask[node]) quad.nodes.push_back(node);
    }
    return quad;
}

StepSet admissible_steps(const Grid& grid, const DomainShape& domain,
                         std::size_t center, double radius, int order) {
    ensure_compatible(domain, grid);
    if (order < 1) throw ParamError("difference order must be >= 1");
    auto mask = domain_mask(domain, grid);
    StepSet steps;
    steps.weight = std::pow(grid.spacing(), grid.dim());
    for (auto o : ball_offsets(grid, radius)) {
        bool ok = true;
        for (int l = 0; l <= order && ok; ++l) {
            std::size_t node;
            if (!grid.shift(center, {l * o[0], l * o[1]}, node) || !mask[node]) ok = false;
        }
        if (ok) steps.offsets.push_back(o);
    }
    return steps;
}

double domain_diameter(const DomainShape& domain, const Grid& grid) {
    struct Diameter {
        const Grid& grid;
        double operator()(const FullTorus&) const {
            throw GeometryError("the torus has no meaningful diameter");
        }
        double operator()(const Interval& iv) const { return iv.b - iv.a; }
        double operator()(const SpecialLipschitz& g) const {
            auto mask = domain_mask(DomainShape{g}, grid);
            double lo0 = 1e300, lo1 = 1e300, hi0 = -1e300, hi1 = -1e300;
            bool any = false;
            for (std::size_t i = 0; i < mask.size(); ++i) {
                if (!mask[i]) continue;
                any = true;
                auto x = grid.coords(i);
                lo0 = std::min(lo0, x[0]);
                hi0 = std::max(hi0, x[0]);
                lo1 = std::min(lo1, x[1]);
                hi1 = std::max(hi1, x[1]);
            }
            if (!any) throw GeometryError("Lipschitz graph region contains no grid nodes");
            return std::hypot(hi0 - lo0, hi1 - lo1);
        }
        double operator()(const ConvexPolytope& p) const {
            double best = 0.0;
            for (std::size_t i = 0; i < p.vertices.size(); ++i)
                for (std::size_t j = i + 1; j < p.vertices.size(); ++j)
                    best = std::max(best, std::hypot(p.vertices[i][0] - p.vertices[j][0],
                                                     p.vertices[i][1] - p.vertices[j][1]));
            return best;
        }
    };
    ensure_compatible(domain, grid);
    return std::visit(Diameter{grid}, domain);
}

double domain_volume(const DomainShape& domain, const Grid& grid) {
    ensure_compatible(domain, grid);
    if (std::holds_alternative<FullTorus>(domain))
        return std::pow(grid.extent(), grid.dim());
    auto mask = domain_mask(domain, grid);
    std::size_t count = 0;
    for (auto m : mask) count += m;
    return static_cast<double>(count) * std::pow(grid.spacing(), grid.dim());
}

} // namespace smnorm
