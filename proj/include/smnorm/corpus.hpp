#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "smnorm/grid.hpp"

namespace smnorm {

/// Polynomial with coefficients over graded-lex monomials (1, x, y, x^2, xy,
/// y^2, ... in 2d; 1, x, x^2, ... in 1d).
struct PolynomialSpec {
    std::vector<double> coefficients;
};

/// Single trigonometric mode cos(2 pi k (x_1 + ... + x_d)).
struct TrigModeSpec {
    int k = 1;
};

/// Algebraic cusp of strength alpha at `center`.  On periodic grids the
/// distance is the periodic surrogate sqrt(sum_a sin^2(pi (x_a - c_a))), so
/// the sample is smooth away from the cusp and truly periodic; on
/// non-periodic grids it is the Euclidean distance.
struct CuspSpec {
    double alpha = 0.5;
    std::array<double, 2> center{0.5, 0.5};
};

/// Truncated Weierstrass sum  sum_{j<levels} a^j cos(2 pi b^j (x_1+...+x_d)).
struct WeierstrassSpec {
    double a = 0.5;
    int b = 2;
    int levels = 8;
};

/// Indicator of the half-open axis-aligned box [lo, hi).
struct IndicatorSpec {
    std::array<double, 2> lo{0.25, 0.25};
    std::array<double, 2> hi{0.75, 0.75};
};

/// Band-limited random trigonometric polynomial with i.i.d. standard normal
/// coefficients drawn from a fixed seed; frequencies range over
/// 0 < |k|_inf <= cutoff (plus a constant term), so cutoff < n/2 resolves.
struct RandomSmoothSpec {
    std::uint64_t seed = 1;
    int cutoff = 4;
};

using CorpusSpec = std::variant<PolynomialSpec, TrigModeSpec, CuspSpec,
                                WeierstrassSpec, IndicatorSpec, RandomSmoothSpec>;

/// Compact text form used by config files and the CLI:
///   poly:c0,c1,...   trig:k   cusp:alpha:cx[,cy]   weier:a:b:levels
///   indicator:lo,hi[:lo2,hi2]   random:seed:cutoff
CorpusSpec parse_corpus_spec(std::string_view text);

/// Stable display name, also used as the CSV key (round-trips the parameters).
std::string corpus_name(const CorpusSpec& spec);

/// Evaluates the spec at every grid node.  Deterministic, including the
/// seeded random family; rejects invalid spec parameters and non-resolvable
/// cutoffs.
SampledFunction sample(const CorpusSpec& spec, const Grid& grid);

} // namespace smnorm
