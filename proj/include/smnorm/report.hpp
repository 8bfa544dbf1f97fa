#pragma once

#include <string>
#include <string_view>

#include "smnorm/params.hpp"

namespace smnorm {

/// Independent computation routes for the same smoothness quasi-norm.
enum class Route { lp, diff, osc, clubsuit };

/// Base-term flavor added to a seminorm: the plain Morrey norm of f, or the
/// Morrey norm of local v-averages at the reference radius R.
enum class BaseTerm { plain, local_average };

Route parse_route(std::string_view text);
std::string_view route_name(Route route) noexcept;
BaseTerm parse_base_term(std::string_view text);
std::string_view base_term_name(BaseTerm base) noexcept;

/// One computed quasi-norm, with enough echo to reproduce the cell.
/// wall_seconds is a stdout diagnostic and never serialized: output files
/// must be byte-identical across reruns.
struct NormReport {
    Route route = Route::diff;
    BaseTerm base_term = BaseTerm::plain;
    std::string func;
    std::string domain;
    int n = 0;
    int dim = 1;
    SmoothnessParams params;
    double lower_window = 0.0;
    bool window_ok = false;
    double base = 0.0;
    double seminorm = 0.0;
    double total = 0.0;
    double wall_seconds = 0.0;
};

} // namespace smnorm
