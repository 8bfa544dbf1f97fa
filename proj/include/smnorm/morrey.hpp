#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "smnorm/geometry.hpp"
#include "smnorm/grid.hpp"
#include "smnorm/params.hpp"

namespace smnorm {

/**
 * Dyadic radius ladder t_j = extent * 2^-j, j = j_min .. j_max.  The finest
 * level is pinned at two grid spacings (j_max = log2(n) - 1), below which a
 * discrete ball no longer resolves a radius change.  The same ladder drives
 * the Morrey supremum over ball radii and, truncated at a time horizon, the
 * scale ladder of the seminorms.
 */
class RadiusLadder {
public:
    static RadiusLadder full(const Grid& grid, int j_min = 0);
    /// Levels of the full ladder with radius <= horizon.  Throws when the
    /// horizon undercuts even the finest resolvable radius.
    static RadiusLadder up_to(const Grid& grid, Exponent horizon);

    int j_min() const noexcept { return j_min_; }
    int j_max() const noexcept { return j_max_; }
    int levels() const noexcept { return j_max_ - j_min_ + 1; }
    double radius(int level) const noexcept {
        return extent_ * std::pow(0.5, j_min_ + level);
    }

private:
    RadiusLadder(double extent, int j_min, int j_max)
        : extent_(extent), j_min_(j_min), j_max_(j_max) {}
    double extent_;
    int j_min_;
    int j_max_;
};

/**
 * Discrete Morrey norm: the maximum over ladder radii r and centers y inside
 * the domain of  r^{d(1/u - 1/p)} (sum_{z in B(y,r) cap domain} |f(z)|^p h^d)^{1/p}.
 *
 * The weight normalizes by a power of the radius rather than of the ball
 * volume; the two conventions differ by the constant (unit-ball volume)^{1/u-1/p},
 * applied uniformly across the toolkit.  u = p recovers the plain L_p norm.
 */
double morrey_norm(const SampledFunction& f, const DomainShape& domain, double p, double u,
                   const RadiusLadder& ladder);

/// morrey_norm over an explicit non-negative plane (|f| already applied);
/// the building block shared by the base terms and the seminorms.
double morrey_plane_norm(const Grid& grid, const DomainShape& domain,
                         std::span<const double> plane, double p, double u,
                         const RadiusLadder& ladder);

/**
 * Base term of the quasi-norms on domains: the Morrey norm of
 *   g(x) = (sum_{y in B(x,R) cap domain} |f(y)|^v h^d)^{1/v}
 * (max over the ball when v = inf).  No radius normalization on the inner
 * mean: R is a fixed reference scale, not a ladder variable.
 */
double local_average_term(const SampledFunction& f, const DomainShape& domain, Exponent v,
                          double R, double p, double u, const RadiusLadder& ladder);

/// Both sides of the power identity
///   ||f||_{M(p,u)} = || |f|^mu ||_{M(p/mu, u/mu)}^{1/mu},
/// which holds exactly for the discrete norm as well.
struct PowerIdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_err = 0.0;
};
PowerIdentityCheck power_identity_check(const SampledFunction& f, const DomainShape& domain,
                                        double p, double u, double mu,
                                        const RadiusLadder& ladder);

/**
 * Dyadic surrogate of the scale integral (int_0^T [t^{-s} g_t(x)]^q dt/t)^{1/q}:
 * per node,  (sum_j [t_j^{-s} planes[j](x)]^q ln 2)^{1/q},  with the sup over
 * levels when q = inf.  planes[j] must align with ladder level j.
 */
std::vector<double> scale_integral(const RadiusLadder& ladder,
                                   const std::vector<std::vector<double>>& planes, double s,
                                   Exponent q);

} // namespace smnorm
