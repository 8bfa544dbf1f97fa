#pragma once

#include <array>
#include <complex>
#include <vector>

#include "smnorm/geometry.hpp"
#include "smnorm/grid.hpp"
#include "smnorm/morrey.hpp"
#include "smnorm/params.hpp"
#include "smnorm/report.hpp"

namespace smnorm {

/**
 * N-th forward difference  sum_{k=0..N} (-1)^{N-k} C(N,k) f(x + k h)  at a
 * grid node.  The step must be grid-aligned (an exact multiple of the
 * spacing per axis); reads that leave a non-periodic grid throw, so callers
 * own the domain question.
 */
std::complex<double> delta_n(const SampledFunction& f, std::size_t node,
                             std::array<double, 2> step, int order);

/// Domain form: the same difference when the whole segment [x, x + order*h]
/// lies inside the domain, zero otherwise.  Segment membership is sampled at
/// 4*order + 1 equispaced points (endpoints suffice for convex shapes; the
/// oversampling covers Lipschitz graphs).  On the torus this is delta_n.
std::complex<double> delta_n_domain(const SampledFunction& f, const DomainShape& domain,
                                    std::size_t node, std::array<double, 2> step, int order);

/// Local difference mean at one node:
///   D_t(x) = (t^{-d} sum_{h in V(x,t)} |Delta^N_h f(x)|^v h^d)^{1/v},
/// max over admissible steps when v = inf, 0 when V(x,t) is empty.  V(x,t)
/// holds the grid steps |h| < t with x + l h inside the domain for l = 0..N.
double diff_local_mean(const SampledFunction& f, const DomainShape& domain, std::size_t node,
                       double t, int order, Exponent v);

/// D_t on every grid node (zero off the domain), one plane per ladder level.
struct DifferenceProfile {
    std::vector<std::vector<double>> levels;
};
DifferenceProfile difference_profile(const SampledFunction& f, const DomainShape& domain,
                                     int order, Exponent v, const RadiusLadder& ladder);

/// Batched variant: one plane set per requested v, sharing the difference
/// evaluations (the dominant cost) across all of them.
std::vector<DifferenceProfile> difference_profiles(const SampledFunction& f,
                                                   const DomainShape& domain, int order,
                                                   const std::vector<Exponent>& vs,
                                                   const RadiusLadder& ladder);

/// Morrey norm of the dyadic scale integral of D_t over t <= T.
double diff_seminorm(const SampledFunction& f, const DomainShape& domain,
                     const ValidatedParams& params);

/// Full quasi-norm report: base term (plain Morrey norm or local averages)
/// plus the difference seminorm.
NormReport diff_quasinorm(const SampledFunction& f, const DomainShape& domain,
                          const ValidatedParams& params, BaseTerm base);

} // namespace smnorm
