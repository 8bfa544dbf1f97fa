#pragma once

#include <vector>

#include "smnorm/grid.hpp"
#include "smnorm/params.hpp"
#include "smnorm/report.hpp"

namespace smnorm {

/// Radial cutoff profiles for the dyadic decomposition.  Both are 1 on
/// |xi| <= 1, 0 on |xi| >= 3/2, and infinitely smooth; `steep` is a second
/// admissible choice so partition independence can be checked empirically.
enum class CutoffProfile { standard, steep };

/// phi_0 as a function of |xi|: the smooth step between the plateaus, built
/// from g(x) = exp(-1/x) (standard) or exp(-1/x^2) (steep).
double cutoff_value(CutoffProfile profile, double r);

/**
 * Smooth dyadic decomposition of unity on the grid's frequency lattice:
 * phi_0 from the cutoff profile and phi_j(xi) = phi_0(2^-j xi) -
 * phi_0(2^-j+1 xi) for j = 1..J, with 2^(J+1) <= n/2 so the top band is
 * alias-free.  The symbols telescope: sum_j phi_j = phi_0(2^-J xi), which is
 * exactly 1 for |xi| <= 2^J.
 */
class DyadicPartition {
public:
    static DyadicPartition build(const Grid& grid,
                                 CutoffProfile profile = CutoffProfile::standard);

    const Grid& grid() const noexcept { return grid_; }
    /// Top band index J; the partition has J+1 bands.
    int top_level() const noexcept { return top_; }
    int bands() const noexcept { return top_ + 1; }
    /// Symbol plane of band j in the unshifted transform layout.
    const std::vector<double>& symbol(int j) const { return symbols_[static_cast<std::size_t>(j)]; }
    /// Frequency magnitude |xi| per lattice node (same layout).
    const std::vector<double>& freq_mod() const noexcept { return freq_; }

private:
    DyadicPartition(Grid grid, int top) : grid_(grid), top_(top) {}
    Grid grid_;
    int top_;
    std::vector<double> freq_;
    std::vector<std::vector<double>> symbols_;
};

/// One frequency band of f: the inverse transform of symbol_j times the
/// transform of f.  Exact on single modes: lp_band(e_k, j) = phi_j(k) e_k.
SampledFunction lp_band(const SampledFunction& f, const DyadicPartition& partition, int j);

/// All bands with a single forward transform.
std::vector<SampledFunction> lp_bands(const SampledFunction& f,
                                      const DyadicPartition& partition);

/// L_2 energy per band (diagnostic CSV fodder).
std::vector<double> band_energies(const SampledFunction& f, const DyadicPartition& partition);

/// The Fourier-analytic smoothness norm: the Morrey norm of
///   x -> (sum_j (2^{js} |band_j(x)|)^q)^{1/q}   (sup over j when q = inf).
double lp_norm(const SampledFunction& f, const ValidatedParams& params,
               const DyadicPartition& partition);

/// NormReport wrapper (route lp); builds the standard partition internally.
/// The value is one indivisible Morrey norm, reported as seminorm and total
/// with a zero base.
NormReport lp_quasinorm(const SampledFunction& f, const ValidatedParams& params);

} // namespace smnorm
