#include "smnorm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>
#include <variant>

#include "smnorm/differences.hpp"
#include "smnorm/errors.hpp"
#include "smnorm/lp_reference.hpp"
#include "smnorm/morrey.hpp"
#include "smnorm/numfmt.hpp"
#include "smnorm/oscillation.hpp"

namespace smnorm {

namespace {

double parse_double_token(const std::string& token, const std::string& key) {
    try {
        std::size_t used = 0;
        double x = std::stod(token, &used);
        if (used != token.size() || !std::isfinite(x)) throw ParamError("");
        return x;
    } catch (const std::exception&) {
        throw ParamError("bad number '" + token + "' in key '" + key + "'");
    }
}

int parse_int_token(const std::string& token, const std::string& key) {
    try {
        std::size_t used = 0;
        int x = std::stoi(token, &used);
        if (used != token.size()) throw ParamError("");
        return x;
    } catch (const std::exception&) {
        throw ParamError("bad integer '" + token + "' in key '" + key + "'");
    }
}

std::vector<std::string> list_or(const Config& config, const std::string& key,
                                 const std::string& fallback) {
    if (config.has(key)) return config.get_list(key);
    return {fallback};
}

void atomic_write(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << text;
        out.flush();
        if (!out) throw IoError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() + "'");
}

/// Always-quoted CSV field; embedded quotes are doubled.
std::string csv_quote(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

} // namespace

Route parse_route(std::string_view text) {
    if (text == "lp") return Route::lp;
    if (text == "diff") return Route::diff;
    if (text == "osc") return Route::osc;
    if (text == "clubsuit") return Route::clubsuit;
    throw ParamError("unknown route '" + std::string(text) +
                     "' (expected lp, diff, osc, or clubsuit)");
}

std::string_view route_name(Route route) noexcept {
    switch (route) {
        case Route::lp: return "lp";
        case Route::diff: return "diff";
        case Route::osc: return "osc";
        case Route::clubsuit: return "clubsuit";
    }
    return "?";
}

BaseTerm parse_base_term(std::string_view text) {
    if (text == "plain") return BaseTerm::plain;
    if (text == "avg" || text == "local_average") return BaseTerm::local_average;
    throw ParamError("unknown base term '" + std::string(text) + "' (expected plain or avg)");
}

std::string_view base_term_name(BaseTerm base) noexcept {
    return base == BaseTerm::plain ? "plain" : "avg";
}

NormReport compute_norm(const SampledFunction& f, const DomainShape& domain,
                        const ValidatedParams& params, Route route, BaseTerm base) {
    switch (route) {
        case Route::lp:
            if (!std::holds_alternative<FullTorus>(domain))
                throw GeometryError("route lp is defined on the full torus only");
            return lp_quasinorm(f, params);
        case Route::clubsuit: {
            if (!std::holds_alternative<FullTorus>(domain))
                throw GeometryError("route clubsuit is defined on the full torus only");
            int j_max = RadiusLadder::full(f.grid()).j_max();
            return clubsuit_quasinorm(f, params, j_max);
        }
        case Route::diff:
            return diff_quasinorm(f, domain, params, base);
        case Route::osc:
            return osc_quasinorm(f, domain, params, base);
    }
    throw ParamError("unknown route");
}

RatioRecord compare_norms(const SampledFunction& f, const DomainShape& domain,
                          const ValidatedParams& params, Route route_a, Route route_b,
                          BaseTerm base) {
    RatioRecord rec;
    rec.a = compute_norm(f, domain, params, route_a, base);
    rec.b = compute_norm(f, domain, params, route_b, base);
    rec.window_ok = params.window_ok();
    double ta = rec.a.total;
    double tb = rec.b.total;
    if (ta == 0.0 && tb == 0.0) {
        rec.both_zero = true;
    } else if (positive_finite(ta) && positive_finite(tb)) {
        rec.ratio = ta / tb;
        rec.valid = true;
    }
    return rec;
}

namespace {

struct SweepPlan {
    std::vector<std::string> func_labels;
    std::vector<CorpusSpec> func_specs;
    std::vector<int> sizes;
    std::vector<Route> routes;
    BaseTerm base = BaseTerm::plain;
    DomainShape domain;
    std::string domain_label;
    int dim = 1;
    std::vector<SmoothnessParams> combos;
};

SweepPlan build_plan(const Config& config) {
    config.require_known({"funcs", "sizes", "domain", "dim", "routes", "base", "s", "u",
                          "p", "q", "v", "order", "horizon", "radius"});
    SweepPlan plan;
    if (!config.has("funcs")) throw ParamError("sweep config needs a 'funcs' list");
    plan.func_labels = config.get_list("funcs");
    if (plan.func_labels.empty()) throw ParamError("sweep config has an empty corpus");
    for (const auto& label : plan.func_labels)
        plan.func_specs.push_back(parse_corpus_spec(label));

    if (!config.has("sizes")) throw ParamError("sweep config needs a 'sizes' list");
    for (const auto& tok : config.get_list("sizes"))
        plan.sizes.push_back(parse_int_token(tok, "sizes"));
    if (plan.sizes.empty()) throw ParamError("sweep config has an empty 'sizes' list");

    const std::vector<std::string> route_tokens =
        config.has("routes") ? config.get_list("routes")
                             : std::vector<std::string>{"diff", "osc"};
    for (const auto& tok : route_tokens) {
        Route r = parse_route(tok);
        if (std::find(plan.routes.begin(), plan.routes.end(), r) != plan.routes.end())
            throw ParamError("duplicate route '" + tok + "' in sweep config");
        plan.routes.push_back(r);
    }

    plan.base = parse_base_term(config.get_string_or("base", "plain"));
    plan.domain_label = config.get_string_or("domain", "torus");
    plan.domain = parse_domain(plan.domain_label);
    plan.dim = config.has("dim") ? config.get_int("dim") : 1;

    std::vector<double> s_list, u_list, p_list, radius_list;
    std::vector<Exponent> q_list, v_list, horizon_list;
    std::vector<int> order_list;
    for (const auto& t : list_or(config, "s", "0.5")) s_list.push_back(parse_double_token(t, "s"));
    for (const auto& t : list_or(config, "u", "2")) u_list.push_back(parse_double_token(t, "u"));
    for (const auto& t : list_or(config, "p", "2")) p_list.push_back(parse_double_token(t, "p"));
    for (const auto& t : list_or(config, "q", "2")) q_list.push_back(Exponent::parse(t));
    for (const auto& t : list_or(config, "v", "2")) v_list.push_back(Exponent::parse(t));
    for (const auto& t : list_or(config, "order", "1"))
        order_list.push_back(parse_int_token(t, "order"));
    for (const auto& t : list_or(config, "horizon", "1"))
        horizon_list.push_back(Exponent::parse(t));
    for (const auto& t : list_or(config, "radius", "1"))
        radius_list.push_back(parse_double_token(t, "radius"));

    for (double s : s_list)
        for (double u : u_list)
            for (double p : p_list)
                for (const Exponent& q : q_list)
                    for (const Exponent& v : v_list)
                        for (int order : order_list)
                            for (const Exponent& horizon : horizon_list)
                                for (double radius : radius_list) {
                                    SmoothnessParams raw;
                                    raw.s = s;
                                    raw.u = u;
                                    raw.p = p;
                                    raw.q = q;
                                    raw.v = v;
                                    raw.order = order;
                                    raw.time_horizon = horizon;
                                    raw.base_radius = radius;
                                    raw.dim = plan.dim;
                                    plan.combos.push_back(raw);
                                }
    return plan;
}

void run_group(const SweepPlan& plan, std::size_t func_idx, std::size_t size_idx,
               std::vector<SweepCell>& cells) {
    const std::size_t combos = plan.combos.size();
    const std::size_t routes = plan.routes.size();
    const std::size_t base_idx =
        (func_idx * plan.sizes.size() + size_idx) * combos * routes;

    SweepCell proto;
    proto.func = plan.func_labels[func_idx];
    proto.domain = plan.domain_label;
    proto.n = plan.sizes[size_idx];
    proto.dim = plan.dim;
    proto.base_term = plan.base;

    auto fill_group = [&](const std::string& error) {
        for (std::size_t c = 0; c < combos; ++c)
            for (std::size_t r = 0; r < routes; ++r) {
                SweepCell cell = proto;
                cell.params = plan.combos[c];
                cell.route = plan.routes[r];
                cell.error = error;
                cells[base_idx + c * routes + r] = std::move(cell);
            }
    };

    bool periodic = std::holds_alternative<FullTorus>(plan.domain);
    Grid grid = Grid::make(plan.dim, proto.n, {0.0, 0.0}, 1.0, periodic);
    SampledFunction f(grid, std::vector<double>(grid.node_count(), 0.0));
    try {
        f = sample(plan.func_specs[func_idx], grid);
    } catch (const std::exception& e) {
        fill_group(e.what());
        return;
    }
    ensure_compatible(plan.domain, grid);

    for (std::size_t c = 0; c < combos; ++c)
        for (std::size_t r = 0; r < routes; ++r) {
            SweepCell cell = proto;
            cell.params = plan.combos[c];
            cell.route = plan.routes[r];
            try {
                ValidatedParams params = ValidatedParams::validate(plan.combos[c]);
                cell.lower_window = params.lower_window();
                cell.window_ok = params.window_ok();
                NormReport rep = compute_norm(f, plan.domain, params, cell.route, plan.base);
                cell.base = rep.base;
                cell.seminorm = rep.seminorm;
                cell.total = rep.total;
                cell.ok = true;
            } catch (const std::exception& e) {
                cell.ok = false;
                cell.error = e.what();
            } catch (...) {
                cell.ok = false;
                cell.error = "unknown fault";
            }
            cells[base_idx + c * routes + r] = std::move(cell);
        }
}

void assemble_stats(EquivalenceReport& report) {
    const std::size_t F = report.funcs.size();
    const std::size_t S = report.sizes.size();
    const std::size_t C = static_cast<std::size_t>(report.combos);
    const std::size_t R = report.routes.size();
    auto at = [&](std::size_t f, std::size_t s, std::size_t c, std::size_t r) -> const SweepCell& {
        return report.cells[((f * S + s) * C + c) * R + r];
    };
    auto pair_ratio = [&](std::size_t f, std::size_t s, std::size_t c, std::size_t ra,
                          std::size_t rb, double& out) -> bool {
        const SweepCell& a = at(f, s, c, ra);
        const SweepCell& b = at(f, s, c, rb);
        if (!a.ok || !b.ok || !a.window_ok) return false;
        if (!positive_finite(a.total) || !positive_finite(b.total)) return false;
        out = a.total / b.total;
        return true;
    };

    for (std::size_t ra = 0; ra < R; ++ra)
        for (std::size_t rb = ra + 1; rb < R; ++rb) {
            PairStats ps;
            ps.route_a = report.routes[ra];
            ps.route_b = report.routes[rb];
            std::vector<double> ratios;
            for (std::size_t f = 0; f < F; ++f)
                for (std::size_t s = 0; s < S; ++s)
                    for (std::size_t c = 0; c < C; ++c) {
                        const SweepCell& a = at(f, s, c, ra);
                        const SweepCell& b = at(f, s, c, rb);
                        if (a.ok && b.ok && a.window_ok && a.total == 0.0 && b.total == 0.0) {
                            ++ps.both_zero;
                            continue;
                        }
                        double r = 0.0;
                        if (pair_ratio(f, s, c, ra, rb, r))
                            ratios.push_back(r);
                        else
                            ++ps.skipped;
                    }
            if (!ratios.empty()) {
                std::sort(ratios.begin(), ratios.end());
                ps.counted = static_cast<int>(ratios.size());
                ps.min_ratio = ratios.front();
                ps.max_ratio = ratios.back();
                std::size_t mid = ratios.size() / 2;
                ps.median_ratio = (ratios.size() % 2 == 1)
                                      ? ratios[mid]
                                      : 0.5 * (ratios[mid - 1] + ratios[mid]);
            }
            report.pairs.push_back(ps);

            for (std::size_t s = 0; s + 1 < S; ++s) {
                DriftStat ds;
                ds.route_a = report.routes[ra];
                ds.route_b = report.routes[rb];
                ds.n_from = report.sizes[s];
                ds.n_to = report.sizes[s + 1];
                for (std::size_t f = 0; f < F; ++f)
                    for (std::size_t c = 0; c < C; ++c) {
                        double r1 = 0.0;
                        double r2 = 0.0;
                        if (!pair_ratio(f, s, c, ra, rb, r1)) continue;
                        if (!pair_ratio(f, s + 1, c, ra, rb, r2)) continue;
                        ds.max_drift = std::max(ds.max_drift, std::max(r1 / r2, r2 / r1));
                    }
                report.drifts.push_back(ds);
            }
        }
}

} // namespace

EquivalenceReport sweep(const Config& config) {
    SweepPlan plan = build_plan(config);

    EquivalenceReport report;
    report.funcs = plan.func_labels;
    report.sizes = plan.sizes;
    report.routes = plan.routes;
    report.combos = static_cast<int>(plan.combos.size());

    const std::size_t groups = plan.func_labels.size() * plan.sizes.size();
    report.cells.resize(groups * plan.combos.size() * plan.routes.size());

    // Each group (function x size) samples once and writes only its own cell
    // slots, so the result is identical for any worker count.
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t g = next.fetch_add(1);
            if (g >= groups) return;
            std::size_t func_idx = g / plan.sizes.size();
            std::size_t size_idx = g % plan.sizes.size();
            run_group(plan, func_idx, size_idx, report.cells);
        }
    };
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t n_workers = std::min({groups, static_cast<std::size_t>(hw ? hw : 1),
                                      static_cast<std::size_t>(8)});
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    assemble_stats(report);
    return report;
}

void write_cells_csv(const std::vector<SweepCell>& cells,
                     const std::filesystem::path& path) {
    std::ostringstream out;
    out << "func,domain,n,dim,route,base_term,s,u,p,q,v,order,horizon,radius,"
           "lower_window,window_ok,ok,base,seminorm,total,error\n";
    for (const SweepCell& cell : cells) {
        const SmoothnessParams& pr = cell.params;
        out << csv_quote(cell.func) << ',' << csv_quote(cell.domain) << ',' << cell.n << ','
            << cell.dim << ',' << route_name(cell.route) << ',' << base_term_name(cell.base_term)
            << ',' << shortest_double(pr.s) << ',' << shortest_double(pr.u) << ','
            << shortest_double(pr.p) << ',' << pr.q.str() << ',' << pr.v.str() << ','
            << pr.order << ',' << pr.time_horizon.str() << ',' << shortest_double(pr.base_radius)
            << ',' << shortest_double(cell.lower_window) << ',' << (cell.window_ok ? 1 : 0) << ','
            << (cell.ok ? 1 : 0) << ',' << shortest_double(cell.base) << ','
            << shortest_double(cell.seminorm) << ',' << shortest_double(cell.total) << ','
            << csv_quote(cell.error) << '\n';
    }
    atomic_write(path, out.str());
}

std::map<std::string, std::string> sweep_manifest(const Config& config,
                                                  const EquivalenceReport& report) {
    std::map<std::string, std::string> m;
    for (const auto& [key, value] : config.values()) m["config." + key] = value;
    m["derived.cells"] = std::to_string(report.cells.size());
    std::size_t faults = 0;
    for (const SweepCell& cell : report.cells)
        if (!cell.ok) ++faults;
    m["derived.faults"] = std::to_string(faults);
    for (const PairStats& ps : report.pairs) {
        std::string prefix = std::string("derived.pair.") + std::string(route_name(ps.route_a)) +
                             "." + std::string(route_name(ps.route_b)) + ".";
        m[prefix + "counted"] = std::to_string(ps.counted);
        m[prefix + "both_zero"] = std::to_string(ps.both_zero);
        m[prefix + "skipped"] = std::to_string(ps.skipped);
        m[prefix + "min_ratio"] = shortest_double(ps.min_ratio);
        m[prefix + "median_ratio"] = shortest_double(ps.median_ratio);
        m[prefix + "max_ratio"] = shortest_double(ps.max_ratio);
    }
    for (const DriftStat& ds : report.drifts) {
        std::string key = std::string("derived.drift.") + std::string(route_name(ds.route_a)) +
                          "." + std::string(route_name(ds.route_b)) + "." +
                          std::to_string(ds.n_from) + "to" + std::to_string(ds.n_to);
        m[key] = shortest_double(ds.max_drift);
    }
    return m;
}

void write_manifest(const std::map<std::string, std::string>& entries,
                    const std::filesystem::path& path) {
    std::ostringstream out;
    for (const auto& [key, value] : entries) out << key << " = " << value << '\n';
    atomic_write(path, out.str());
}

namespace {

bool convex_bounded(const DomainShape& domain) {
    if (std::holds_alternative<Interval>(domain)) return true;
    if (std::holds_alternative<ConvexPolytope>(domain)) return true;
    if (const auto* g = std::get_if<SpecialLipschitz>(&domain))
        return g->graph != SpecialLipschitz::Graph::sine;
    return false;
}

std::vector<double> difference_weights(int order) {
    std::vector<double> c(static_cast<std::size_t>(order) + 1);
    double binom = 1.0;
    for (int k = 0; k <= order; ++k) {
        c[static_cast<std::size_t>(k)] = ((order - k) % 2 != 0) ? -binom : binom;
        binom = binom * (order - k) / (k + 1);
    }
    return c;
}

} // namespace

WhitneyRecord whitney_check(const SampledFunction& f, const DomainShape& domain,
                            int order, Exponent v) {
    if (order < 1) throw ParamError("whitney check needs order >= 1");
    if (!convex_bounded(domain))
        throw GeometryError("whitney check is defined on bounded convex domains only");
    const Grid& grid = f.grid();
    ensure_compatible(domain, grid);

    const int n = grid.nodes_per_axis();
    const int dim = grid.dim();
    const double h = grid.spacing();
    const double cell = dim == 1 ? h : h * h;
    const double diam = domain_diameter(domain, grid);
    const std::vector<std::uint8_t> mask = domain_mask(domain, grid);
    const double* fre = f.re().data();
    const double* fim = f.is_complex() ? f.im().data() : nullptr;

    // Scale reference: both sides of a degree-<order polynomial annihilate in
    // exact arithmetic, so anything at rounding level relative to the data is
    // snapped to an exact zero.
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        if (!mask[i]) continue;
        double a = fim ? std::hypot(fre[i], fim[i]) : std::fabs(fre[i]);
        sup = std::max(sup, a);
    }
    const double snap = 1e-10 * sup;

    // Left side: L_v error of the global least-squares polynomial fit.  A
    // ball wide enough to hold the whole domain turns the local oscillation
    // into exactly that (osc normalizes by radius^(dim/v), undone here).
    std::size_t center = 0;
    {
        double cx = 0.0;
        double cy = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < grid.node_count(); ++i) {
            if (!mask[i]) continue;
            auto yc = grid.coords(i);
            cx += yc[0];
            cy += yc[1];
            ++count;
        }
        if (count > 0) {
            cx /= static_cast<double>(count);
            cy /= static_cast<double>(count);
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < grid.node_count(); ++i) {
                if (!mask[i]) continue;
                auto yc = grid.coords(i);
                double d2 = (yc[0] - cx) * (yc[0] - cx) + (yc[1] - cy) * (yc[1] - cy);
                if (d2 < best) {
                    best = d2;
                    center = i;
                }
            }
        }
    }
    const double cover = 2.0 * grid.extent() * std::sqrt(static_cast<double>(dim));
    double lhs = osc(f, domain, center, cover, order, v);
    if (!v.is_inf()) lhs *= std::pow(cover, static_cast<double>(dim) / v.value());

    // Right side: sup over integer steps up to the diameter of the L_v size
    // of the order-th difference.  Convexity makes the segment condition an
    // endpoint test: both ends in the domain pin the whole segment inside.
    const std::vector<double> coef = difference_weights(order);
    const double vv = v.is_inf() ? 0.0 : v.value();
    double rhs = 0.0;
    const int o_lo = -(n - 1);
    const int o_hi = n - 1;
    for (int o0 = o_lo; o0 <= o_hi; ++o0) {
        const int o1_lo = dim == 2 ? o_lo : 0;
        const int o1_hi = dim == 2 ? o_hi : 0;
        for (int o1 = o1_lo; o1 <= o1_hi; ++o1) {
            if (o0 == 0 && o1 == 0) continue;
            double len2 = (static_cast<double>(o0) * o0 + static_cast<double>(o1) * o1) * h * h;
            if (len2 > diam * diam) continue;
            const long stride = dim == 1 ? o0 : static_cast<long>(o0) * n + o1;
            const int lo0 = std::max(0, -order * o0);
            const int hi0 = n - 1 - std::max(0, order * o0);
            const int lo1 = dim == 2 ? std::max(0, -order * o1) : 0;
            const int hi1 = dim == 2 ? n - 1 - std::max(0, order * o1) : 0;
            if (lo0 > hi0 || lo1 > hi1) continue;
            double acc = 0.0;
            double peak = 0.0;
            for (int i0 = lo0; i0 <= hi0; ++i0) {
                const long row = dim == 1 ? i0 : static_cast<long>(i0) * n;
                for (int i1 = lo1; i1 <= hi1; ++i1) {
                    const long flat = dim == 1 ? row : row + i1;
                    const long endpoint = flat + static_cast<long>(order) * stride;
                    if (!mask[static_cast<std::size_t>(flat)] ||
                        !mask[static_cast<std::size_t>(endpoint)])
                        continue;
                    double re = 0.0;
                    double im = 0.0;
                    for (int k = 0; k <= order; ++k) {
                        const auto tap = static_cast<std::size_t>(flat + k * stride);
                        re += coef[static_cast<std::size_t>(k)] * fre[tap];
                        if (fim) im += coef[static_cast<std::size_t>(k)] * fim[tap];
                    }
                    double a = fim ? std::hypot(re, im) : std::fabs(re);
                    if (v.is_inf()) {
                        peak = std::max(peak, a);
                    } else if (vv == 1.0) {
                        acc += a;
                    } else if (vv == 2.0) {
                        acc += a * a;
                    } else {
                        acc += std::pow(a, vv);
                    }
                }
            }
            double band = v.is_inf() ? peak : std::pow(acc * cell, 1.0 / vv);
            rhs = std::max(rhs, band);
        }
    }

    WhitneyRecord rec;
    rec.lhs = lhs < snap ? 0.0 : lhs;
    rec.rhs = rhs < snap ? 0.0 : rhs;
    if (rec.lhs == 0.0 && rec.rhs == 0.0) {
        rec.both_zero = true;
        rec.ratio = 0.0;
    } else if (rec.rhs == 0.0) {
        rec.ratio = std::numeric_limits<double>::infinity();
    } else {
        rec.ratio = rec.lhs / rec.rhs;
    }
    return rec;
}

TrendRecord refinement_study(const CorpusSpec& spec, const DomainShape& domain,
                             Route route, BaseTerm base, const SmoothnessParams& raw,
                             const std::vector<int>& sizes) {
    if (sizes.size() < 3) throw ParamError("refinement study needs at least 3 grid sizes");
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i)
        if (sizes[i] >= sizes[i + 1])
            throw ParamError("refinement study sizes must be strictly increasing");

    TrendRecord trend;
    trend.sizes = sizes;
    ValidatedParams params = ValidatedParams::validate(raw);
    bool periodic = std::holds_alternative<FullTorus>(domain);
    for (int n : sizes) {
        Grid grid = Grid::make(raw.dim, n, {0.0, 0.0}, 1.0, periodic);
        SampledFunction f = sample(spec, grid);
        NormReport rep = compute_norm(f, domain, params, route, base);
        trend.totals.push_back(rep.total);
    }
    for (std::size_t i = 0; i + 1 < trend.totals.size(); ++i) {
        double a = trend.totals[i];
        double b = trend.totals[i + 1];
        double r;
        if (a == 0.0 && b == 0.0)
            r = 1.0;
        else if (a == 0.0)
            r = std::numeric_limits<double>::infinity();
        else
            r = b / a;
        trend.successive.push_back(r);
    }
    double last = trend.successive.back();
    trend.drift_flag = !(std::isfinite(last) && last > 0.5 && last < 2.0);
    return trend;
}

} // namespace smnorm
