#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "smnorm/config.hpp"
#include "smnorm/corpus.hpp"
#include "smnorm/geometry.hpp"
#include "smnorm/grid.hpp"
#include "smnorm/params.hpp"
#include "smnorm/report.hpp"

namespace smnorm {

/**
 * One quasi-norm by the requested route.  lp and clubsuit are defined on the
 * full torus only and throw GeometryError elsewhere; clubsuit uses the
 * deepest resolvable dyadic level and ignores the base-term flavor (its value
 * is a single indivisible Morrey norm).  The report's `func` field is left
 * empty; callers that know a corpus label fill it in.
 */
NormReport compute_norm(const SampledFunction& f, const DomainShape& domain,
                        const ValidatedParams& params, Route route, BaseTerm base);

/**
 * Pairwise equivalence data point.  `ratio` = a.total / b.total and is
 * meaningful only when `valid`; two exactly-zero totals are the trivial
 * kernel and get the dedicated `both_zero` marker instead of a NaN.
 */
struct RatioRecord {
    NormReport a;
    NormReport b;
    double ratio = 0.0;
    bool valid = false;
    bool both_zero = false;
    bool window_ok = false;
};
RatioRecord compare_norms(const SampledFunction& f, const DomainShape& domain,
                          const ValidatedParams& params, Route route_a, Route route_b,
                          BaseTerm base);

/// One evaluated sweep cell.  `ok = false` records a per-cell fault (message
/// in `error`) without aborting the sweep.
struct SweepCell {
    std::string func;
    std::string domain;
    int n = 0;
    int dim = 1;
    Route route = Route::diff;
    BaseTerm base_term = BaseTerm::plain;
    SmoothnessParams params;
    double lower_window = 0.0;
    bool window_ok = false;
    bool ok = false;
    double base = 0.0;
    double seminorm = 0.0;
    double total = 0.0;
    std::string error;
};

/// Ratio statistics for one ordered route pair, over cells that are inside
/// the parameter window with both totals finite and positive.
struct PairStats {
    Route route_a = Route::diff;
    Route route_b = Route::osc;
    int counted = 0;
    int both_zero = 0;
    int skipped = 0;
    double min_ratio = 0.0;
    double median_ratio = 0.0;
    double max_ratio = 0.0;
};

/// Worst movement of a route-pair ratio between two consecutive grid sizes,
/// maximized over functions and parameter combinations (1 = no movement,
/// 0 = no comparable cells).
struct DriftStat {
    Route route_a = Route::diff;
    Route route_b = Route::osc;
    int n_from = 0;
    int n_to = 0;
    double max_drift = 0.0;
};

/**
 * Sweep output.  `cells` is the full cross product in deterministic order:
 * function (slowest), then grid size, then parameter combination, then route
 * (fastest), so cell index = ((func * S + size) * C + combo) * R + route.
 */
struct EquivalenceReport {
    std::vector<SweepCell> cells;
    std::vector<std::string> funcs;
    std::vector<int> sizes;
    std::vector<Route> routes;
    int combos = 0;
    std::vector<PairStats> pairs;
    std::vector<DriftStat> drifts;
};

/**
 * Config-driven sweep over funcs x sizes x parameter grid x routes.  Keys:
 * funcs and sizes (required lists), domain, dim, routes, base, and the
 * parameter lists s u p q v order horizon radius (each a space-separated
 * list; the combination grid is their cross product).  Cells run in
 * parallel; assembly is ordered and the result is reproducible bit for bit.
 */
EquivalenceReport sweep(const Config& config);

/// CSV rows in the documented column order:
/// func,domain,n,dim,route,base_term,s,u,p,q,v,order,horizon,radius,
/// lower_window,window_ok,ok,base,seminorm,total,error
/// written atomically (temp file + rename), no timestamps.
void write_cells_csv(const std::vector<SweepCell>& cells,
                     const std::filesystem::path& path);

/// Sorted `key = value` manifest: the config echoed under config.* plus
/// derived.* quantities (cell counts, pair ratio stats, drifts).
std::map<std::string, std::string> sweep_manifest(const Config& config,
                                                  const EquivalenceReport& report);
void write_manifest(const std::map<std::string, std::string>& entries,
                    const std::filesystem::path& path);

/**
 * Whitney-type comparison on a bounded convex domain: the global
 * L2-projection approximation error measured in L_v (left) against the
 * largest L_v size of the domain-restricted order-N difference over all
 * admissible steps up to the domain diameter (right).  Both sides are raw
 * integrals with no radius normalization; 0/0 is reported as both_zero with
 * ratio 0.
 */
struct WhitneyRecord {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool both_zero = false;
};
WhitneyRecord whitney_check(const SampledFunction& f, const DomainShape& domain,
                            int order, Exponent v);

/**
 * Norm totals across at least three increasing grid sizes, with successive
 * ratios (both-zero pairs count as 1).  `drift_flag` marks a finest-pair
 * ratio outside [1/2, 2], the discretization-instability witness.
 */
struct TrendRecord {
    std::vector<int> sizes;
    std::vector<double> totals;
    std::vector<double> successive;
    bool drift_flag = false;
};
TrendRecord refinement_study(const CorpusSpec& spec, const DomainShape& domain,
                             Route route, BaseTerm base, const SmoothnessParams& raw,
                             const std::vector<int>& sizes);

} // namespace smnorm
