#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "smnorm/grid.hpp"

namespace smnorm {

/// The whole torus sampled by a periodic grid (surrogate for free space).
struct FullTorus {
    bool operator==(const FullTorus&) const = default;
};

/// Open interval (a, b) on a 1d non-periodic grid.
struct Interval {
    double a = 0.0;
    double b = 1.0;
    bool operator==(const Interval&) const = default;
};

/// Region above a Lipschitz graph, {(x1, x2) : x2 > omega(x1)}, clipped to
/// the grid's bounding box.  omega is one of a few closed forms so the
/// Lipschitz constant is known exactly.
struct SpecialLipschitz {
    enum class Graph { flat, vee, sine };
    Graph graph = Graph::flat;
    double level = 0.0;  // vertical offset
    double scale = 0.0;  // slope (vee) or amplitude (sine)
    double shift = 0.0;  // horizontal offset

    double height(double x1) const;
    double lipschitz_bound() const;
    bool operator==(const SpecialLipschitz&) const = default;
};

/// Open convex polygon in the plane, vertices in counter-clockwise order.
/// Build through make_polytope so convexity is checked once.
struct ConvexPolytope {
    std::vector<std::array<double, 2>> vertices;
    bool operator==(const ConvexPolytope&) const = default;
};

/// Validates (>= 3 vertices, strictly convex, consistent orientation) and
/// normalizes the order to counter-clockwise.
ConvexPolytope make_polytope(std::vector<std::array<double, 2>> vertices);

using DomainShape = std::variant<FullTorus, Interval, SpecialLipschitz, ConvexPolytope>;

/// Compact text form: "torus" | "interval:a:b" | "polytope:x,y;x,y;..." |
/// "graph:flat|vee|sine:level[:scale[:shift]]".
DomainShape parse_domain(std::string_view text);
std::string domain_name(const DomainShape& domain);

/// Strict membership x in the open domain.  Dimension follows the shape.
bool member(const DomainShape& domain, std::array<double, 2> x);

/// True when the shape can live on this grid (torus needs a periodic grid,
/// the bounded shapes need a non-periodic one of matching dimension).
void ensure_compatible(const DomainShape& domain, const Grid& grid);

/// 1 for grid nodes inside the domain, 0 otherwise.
std::vector<std::uint8_t> domain_mask(const DomainShape& domain, const Grid& grid);

/// Integer offsets o with |o * spacing| < radius.  On periodic grids offsets
/// are the canonical representatives in (-n/2, n/2], so each node appears at
/// most once however large the radius; on non-periodic grids they span the
/// whole index range and callers clip per center.
std::vector<std::array<int, 2>> ball_offsets(const Grid& grid, double radius);

/// Discrete ball quadrature: the grid nodes y inside the domain with
/// |y - x| < radius (periodic metric on the torus), each carrying the cell
/// volume spacing^d as weight.  May be empty near the boundary.
struct QuadratureSet {
    std::vector<std::size_t> nodes;
    double weight = 0.0;
};
QuadratureSet ball_quadrature(const Grid& grid, const DomainShape& domain,
                              std::size_t center, double radius);

/// Discrete admissible steps: grid displacements h with |h| < radius such
/// that x + l*h stays in the domain for every l = 0..order.  The weight is
/// the cell volume (the h-integral's measure).
struct StepSet {
    std::vector<std::array<int, 2>> offsets;
    double weight = 0.0;
};
StepSet admissible_steps(const Grid& grid, const DomainShape& domain,
                         std::size_t center, double radius, int order);

/// Exact diameter for intervals and polytopes, bounding-box estimate for
/// Lipschitz graph regions; the torus has no meaningful diameter and throws.
double domain_diameter(const DomainShape& domain, const Grid& grid);

/// Lebesgue measure estimate: cell volume times the node count of the mask
/// (exact extent^d for the torus).
double domain_volume(const DomainShape& domain, const Grid& grid);

/// For every grid node x, the sum of a[y] over the grid ball B(x, radius).
/// `a` is expected to carry any domain masking (zeros outside).  Periodic
/// grids wrap; the reduction is deterministic.
std::vector<double> ball_sum_map(const Grid& grid, std::span<const double> a, double radius);

/// Same walk, max-reduction (for sup-style means).  The center itself always
/// lies in the ball, so the result is well defined everywhere.
std::vector<double> ball_max_map(const Grid& grid, std::span<const double> a, double radius);

} // namespace smnorm
