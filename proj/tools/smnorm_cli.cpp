#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "smnorm/config.hpp"
#include "smnorm/corpus.hpp"
#include "smnorm/differences.hpp"
#include "smnorm/errors.hpp"
#include "smnorm/geometry.hpp"
#include "smnorm/grid.hpp"
#include "smnorm/harness.hpp"
#include "smnorm/lp_reference.hpp"
#include "smnorm/morrey.hpp"
#include "smnorm/numfmt.hpp"
#include "smnorm/oscillation.hpp"
#include "smnorm/params.hpp"
#include "smnorm/report.hpp"

namespace {

using namespace smnorm;

struct ParamFlags {
    double s = 0.5;
    double u = 2.0;
    double p = 2.0;
    std::string q = "2";
    std::string v = "2";
    int order = 1;
    std::string horizon = "1";
    double radius = 1.0;
};

void add_param_flags(CLI::App* cmd, ParamFlags& pf) {
    cmd->add_option("--s", pf.s, "smoothness exponent s");
    cmd->add_option("--u", pf.u, "Morrey exponent u (p <= u)");
    cmd->add_option("--p", pf.p, "integrability exponent p");
    cmd->add_option("--q", pf.q, "fine index q (number or inf)");
    cmd->add_option("--v", pf.v, "inner exponent v (number or inf)");
    cmd->add_option("--order", pf.order, "difference / polynomial order N");
    cmd->add_option("--horizon", pf.horizon, "scale horizon T (number or inf)");
    cmd->add_option("--radius", pf.radius, "base-term ball radius R");
}

SmoothnessParams to_params(const ParamFlags& pf, int dim) {
    SmoothnessParams raw;
    raw.s = pf.s;
    raw.u = pf.u;
    raw.p = pf.p;
    raw.q = Exponent::parse(pf.q);
    raw.v = Exponent::parse(pf.v);
    raw.order = pf.order;
    raw.time_horizon = Exponent::parse(pf.horizon);
    raw.base_radius = pf.radius;
    raw.dim = dim;
    return raw;
}

struct InputFlags {
    std::string func;
    std::string input;
    std::string domain = "torus";
    int n = 256;
    int dim = 1;
};

void add_input_flags(CLI::App* cmd, InputFlags& in) {
    auto* func_opt =
        cmd->add_option("--func", in.func, "corpus spec (poly:c0,c1,... trig:k cusp:a:c "
                                           "weier:a:b:m indicator:lo,hi random:seed:cutoff)");
    auto* input_opt = cmd->add_option("--input", in.input, "gridded-function file to load");
    func_opt->excludes(input_opt);
    input_opt->excludes(func_opt);
    cmd->add_option("--domain", in.domain,
                    "torus | interval:a:b | polytope:x,y;... | graph:flat|vee|sine:level[:scale[:shift]]");
    cmd->add_option("--n", in.n, "grid nodes per axis (with --func)");
    cmd->add_option("--dim", in.dim, "grid dimension 1 or 2 (with --func)");
}

SampledFunction load_input(const InputFlags& in, const DomainShape& domain,
                           std::string& label) {
    if (!in.func.empty()) {
        label = in.func;
        bool periodic = std::holds_alternative<FullTorus>(domain);
        Grid grid = Grid::make(in.dim, in.n, {0.0, 0.0}, 1.0, periodic);
        return sample(parse_corpus_spec(in.func), grid);
    }
    if (!in.input.empty()) {
        label = in.input;
        return read_gridfun(in.input);
    }
    throw ParamError("give one of --func or --input");
}

SweepCell cell_from_report(const NormReport& rep) {
    SweepCell cell;
    cell.func = rep.func;
    cell.domain = rep.domain;
    cell.n = rep.n;
    cell.dim = rep.dim;
    cell.route = rep.route;
    cell.base_term = rep.base_term;
    cell.params = rep.params;
    cell.lower_window = rep.lower_window;
    cell.window_ok = rep.window_ok;
    cell.ok = true;
    cell.base = rep.base;
    cell.seminorm = rep.seminorm;
    cell.total = rep.total;
    return cell;
}

void echo_params(std::map<std::string, std::string>& m, const SmoothnessParams& pr) {
    m["config.s"] = shortest_double(pr.s);
    m["config.u"] = shortest_double(pr.u);
    m["config.p"] = shortest_double(pr.p);
    m["config.q"] = pr.q.str();
    m["config.v"] = pr.v.str();
    m["config.order"] = std::to_string(pr.order);
    m["config.horizon"] = pr.time_horizon.str();
    m["config.radius"] = shortest_double(pr.base_radius);
}

void print_report(const NormReport& rep) {
    std::cout << "route " << route_name(rep.route) << ", base " << base_term_name(rep.base_term)
              << ", func " << rep.func << ", domain " << rep.domain << ", n " << rep.n
              << ", dim " << rep.dim << "\n";
    std::cout << "window_ok " << (rep.window_ok ? 1 : 0) << " (lower window "
              << shortest_double(rep.lower_window) << ", s " << shortest_double(rep.params.s)
              << ")\n";
    std::cout << "base     " << shortest_double(rep.base) << "\n";
    std::cout << "seminorm " << shortest_double(rep.seminorm) << "\n";
    std::cout << "total    " << shortest_double(rep.total) << "\n";
    std::printf("wall     %.3f s\n", rep.wall_seconds);
}

void write_diag(const NormReport& rep, const SampledFunction& f, const DomainShape& domain,
                const ValidatedParams& params, const std::filesystem::path& path) {
    std::ostringstream out;
    if (rep.route == Route::lp) {
        DyadicPartition partition = DyadicPartition::build(f.grid());
        std::vector<double> energies = band_energies(f, partition);
        out << "band,energy\n";
        for (std::size_t j = 0; j < energies.size(); ++j)
            out << j << ',' << shortest_double(energies[j]) << '\n';
    } else if (rep.route == Route::osc || rep.route == Route::clubsuit) {
        RadiusLadder ladder = rep.route == Route::osc
                                  ? RadiusLadder::up_to(f.grid(), params.time_horizon())
                                  : RadiusLadder::full(f.grid(), 1);
        std::size_t stride = std::max<std::size_t>(1, f.grid().node_count() / 4096);
        std::vector<BasisStats> stats =
            basis_diagnostics(domain, f.grid(), params.order(), ladder, stride);
        out << "level,radius,min_rank,max_sup_norm,max_ortho_residual\n";
        for (const BasisStats& st : stats)
            out << st.level << ',' << shortest_double(st.radius) << ',' << st.min_rank << ','
                << shortest_double(st.max_sup_norm) << ','
                << shortest_double(st.max_ortho_residual) << '\n';
    } else {
        throw ParamError("--diag supports routes lp, osc, and clubsuit");
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError("cannot open '" + tmp.string() + "' for writing");
        file << out.str();
    }
    std::filesystem::rename(tmp, path);
    std::cout << "diagnostics written to " << path.string() << "\n";
}

int run_norm(const InputFlags& in, const ParamFlags& pf, const std::string& route_text,
             const std::string& base_text, const std::string& out_path,
             const std::string& diag_path) {
    DomainShape domain = parse_domain(in.domain);
    std::string label;
    SampledFunction f = load_input(in, domain, label);
    ValidatedParams params = ValidatedParams::validate(to_params(pf, f.grid().dim()));
    Route route = parse_route(route_text);
    BaseTerm base = parse_base_term(base_text);

    NormReport rep = compute_norm(f, domain, params, route, base);
    rep.func = label;
    print_report(rep);

    if (!out_path.empty()) {
        write_cells_csv({cell_from_report(rep)}, out_path);
        std::map<std::string, std::string> m;
        m["config.command"] = "norm";
        m["config.func"] = label;
        m["config.domain"] = in.domain;
        m["config.n"] = std::to_string(rep.n);
        m["config.dim"] = std::to_string(rep.dim);
        m["config.route"] = std::string(route_name(route));
        m["config.base"] = std::string(base_term_name(base));
        echo_params(m, rep.params);
        m["derived.base"] = shortest_double(rep.base);
        m["derived.seminorm"] = shortest_double(rep.seminorm);
        m["derived.total"] = shortest_double(rep.total);
        m["derived.window_ok"] = rep.window_ok ? "1" : "0";
        m["derived.lower_window"] = shortest_double(rep.lower_window);
        write_manifest(m, out_path + ".manifest");
        std::cout << "report written to " << out_path << " (+.manifest)\n";
    }
    if (!diag_path.empty()) write_diag(rep, f, domain, params, diag_path);
    return 0;
}

int run_compare(const InputFlags& in, const ParamFlags& pf, const std::string& route_a_text,
                const std::string& route_b_text, const std::string& base_text,
                const std::string& out_path) {
    DomainShape domain = parse_domain(in.domain);
    std::string label;
    SampledFunction f = load_input(in, domain, label);
    ValidatedParams params = ValidatedParams::validate(to_params(pf, f.grid().dim()));
    Route route_a = parse_route(route_a_text);
    Route route_b = parse_route(route_b_text);
    BaseTerm base = parse_base_term(base_text);

    RatioRecord rec = compare_norms(f, domain, params, route_a, route_b, base);
    rec.a.func = label;
    rec.b.func = label;
    std::cout << route_name(route_a) << " total " << shortest_double(rec.a.total) << "  ("
              << shortest_double(rec.a.wall_seconds) << " s)\n";
    std::cout << route_name(route_b) << " total " << shortest_double(rec.b.total) << "  ("
              << shortest_double(rec.b.wall_seconds) << " s)\n";
    if (rec.both_zero)
        std::cout << "ratio: both totals are exactly zero (trivial kernel)\n";
    else if (rec.valid)
        std::cout << "ratio " << route_name(route_a) << "/" << route_name(route_b) << " = "
                  << shortest_double(rec.ratio) << "\n";
    else
        std::cout << "ratio undefined (a total is zero or non-finite)\n";
    std::cout << "window_ok " << (rec.window_ok ? 1 : 0) << "\n";

    if (!out_path.empty()) {
        write_cells_csv({cell_from_report(rec.a), cell_from_report(rec.b)}, out_path);
        std::map<std::string, std::string> m;
        m["config.command"] = "compare";
        m["config.func"] = label;
        m["config.domain"] = in.domain;
        m["config.route_a"] = std::string(route_name(route_a));
        m["config.route_b"] = std::string(route_name(route_b));
        m["config.base"] = std::string(base_term_name(base));
        echo_params(m, rec.a.params);
        m["derived.total_a"] = shortest_double(rec.a.total);
        m["derived.total_b"] = shortest_double(rec.b.total);
        m["derived.ratio"] = shortest_double(rec.ratio);
        m["derived.valid"] = rec.valid ? "1" : "0";
        m["derived.both_zero"] = rec.both_zero ? "1" : "0";
        m["derived.window_ok"] = rec.window_ok ? "1" : "0";
        write_manifest(m, out_path + ".manifest");
        std::cout << "report written to " << out_path << " (+.manifest)\n";
    }
    return 0;
}

int run_sweep(const std::string& config_path, const std::string& out_path) {
    Config config = Config::parse_file(config_path);
    auto start = std::chrono::steady_clock::now();
    EquivalenceReport report = sweep(config);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::size_t faults = 0;
    for (const SweepCell& cell : report.cells)
        if (!cell.ok) ++faults;
    std::cout << report.cells.size() << " cells (" << report.funcs.size() << " funcs x "
              << report.sizes.size() << " sizes x " << report.combos << " param combos x "
              << report.routes.size() << " routes), " << faults << " faults\n";
    for (const PairStats& ps : report.pairs) {
        std::cout << "pair " << route_name(ps.route_a) << "/" << route_name(ps.route_b)
                  << ": counted " << ps.counted << ", both_zero " << ps.both_zero << ", skipped "
                  << ps.skipped;
        if (ps.counted > 0)
            std::cout << ", ratio min " << shortest_double(ps.min_ratio) << " median "
                      << shortest_double(ps.median_ratio) << " max "
                      << shortest_double(ps.max_ratio);
        std::cout << "\n";
    }
    for (const DriftStat& ds : report.drifts)
        std::cout << "drift " << route_name(ds.route_a) << "/" << route_name(ds.route_b) << " "
                  << ds.n_from << "->" << ds.n_to << ": "
                  << (ds.max_drift > 0 ? shortest_double(ds.max_drift) : std::string("n/a"))
                  << "\n";
    std::printf("wall %.3f s\n", wall);

    if (!out_path.empty()) {
        write_cells_csv(report.cells, out_path);
        write_manifest(sweep_manifest(config, report), out_path + ".manifest");
        std::cout << "report written to " << out_path << " (+.manifest)\n";
    }
    return 0;
}

int run_whitney(const InputFlags& in, int order, const std::string& v_text,
                const std::string& out_path) {
    DomainShape domain = parse_domain(in.domain);
    std::string label;
    SampledFunction f = load_input(in, domain, label);
    Exponent v = Exponent::parse(v_text);
    WhitneyRecord rec = whitney_check(f, domain, order, v);
    std::cout << "lhs (best polynomial error, L_" << v.str() << ")  "
              << shortest_double(rec.lhs) << "\n";
    std::cout << "rhs (sup of difference sizes)      " << shortest_double(rec.rhs) << "\n";
    if (rec.both_zero)
        std::cout << "ratio: both sides are exactly zero\n";
    else
        std::cout << "ratio " << shortest_double(rec.ratio) << "\n";

    if (!out_path.empty()) {
        std::ostringstream out;
        out << "func,domain,n,dim,order,v,lhs,rhs,ratio,both_zero\n";
        out << '"' << label << "\",\"" << in.domain << "\"," << f.grid().nodes_per_axis() << ','
            << f.grid().dim() << ',' << order << ',' << v.str() << ','
            << shortest_double(rec.lhs) << ',' << shortest_double(rec.rhs) << ','
            << shortest_double(rec.ratio) << ',' << (rec.both_zero ? 1 : 0) << '\n';
        std::filesystem::path tmp = out_path + ".tmp";
        {
            std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
            if (!file) throw IoError("cannot open '" + tmp.string() + "' for writing");
            file << out.str();
        }
        std::filesystem::rename(tmp, out_path);
        std::map<std::string, std::string> m;
        m["config.command"] = "whitney";
        m["config.func"] = label;
        m["config.domain"] = in.domain;
        m["config.order"] = std::to_string(order);
        m["config.v"] = v.str();
        m["derived.lhs"] = shortest_double(rec.lhs);
        m["derived.rhs"] = shortest_double(rec.rhs);
        m["derived.ratio"] = shortest_double(rec.ratio);
        m["derived.both_zero"] = rec.both_zero ? "1" : "0";
        write_manifest(m, out_path + ".manifest");
        std::cout << "report written to " << out_path << " (+.manifest)\n";
    }
    return 0;
}

int run_refine(const std::string& func, const std::string& domain_text, const ParamFlags& pf,
               const std::string& route_text, const std::string& base_text, int dim,
               std::vector<int> sizes, const std::string& out_path) {
    if (func.empty()) throw ParamError("refine needs --func (it resamples per grid size)");
    DomainShape domain = parse_domain(domain_text);
    CorpusSpec spec = parse_corpus_spec(func);
    Route route = parse_route(route_text);
    BaseTerm base = parse_base_term(base_text);
    SmoothnessParams raw = to_params(pf, dim);

    TrendRecord trend = refinement_study(spec, domain, route, base, raw, sizes);
    for (std::size_t i = 0; i < trend.sizes.size(); ++i) {
        std::cout << "n " << trend.sizes[i] << "  total " << shortest_double(trend.totals[i]);
        if (i > 0) std::cout << "  ratio to previous " << shortest_double(trend.successive[i - 1]);
        std::cout << "\n";
    }
    std::cout << (trend.drift_flag ? "drift at the finest pair exceeds 2x (unstable)\n"
                                   : "finest-pair drift within 2x (stable)\n");

    if (!out_path.empty()) {
        std::ostringstream out;
        out << "func,domain,route,base_term,n,total,ratio_to_prev\n";
        for (std::size_t i = 0; i < trend.sizes.size(); ++i) {
            out << '"' << func << "\",\"" << domain_text << "\"," << route_name(route) << ','
                << base_term_name(base) << ',' << trend.sizes[i] << ','
                << shortest_double(trend.totals[i]) << ',';
            if (i > 0) out << shortest_double(trend.successive[i - 1]);
            out << '\n';
        }
        std::filesystem::path tmp = out_path + ".tmp";
        {
            std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
            if (!file) throw IoError("cannot open '" + tmp.string() + "' for writing");
            file << out.str();
        }
        std::filesystem::rename(tmp, out_path);
        std::map<std::string, std::string> m;
        m["config.command"] = "refine";
        m["config.func"] = func;
        m["config.domain"] = domain_text;
        m["config.route"] = std::string(route_name(route));
        m["config.base"] = std::string(base_term_name(base));
        echo_params(m, raw);
        std::string sizes_text;
        for (std::size_t i = 0; i < trend.sizes.size(); ++i) {
            if (i > 0) sizes_text += ' ';
            sizes_text += std::to_string(trend.sizes[i]);
        }
        m["config.sizes"] = sizes_text;
        m["derived.drift_flag"] = trend.drift_flag ? "1" : "0";
        m["derived.final_total"] = shortest_double(trend.totals.back());
        write_manifest(m, out_path + ".manifest");
        std::cout << "report written to " << out_path << " (+.manifest)\n";
    }
    return 0;
}

int run_gen(const std::string& spec_text, const std::string& out_path, int n, int dim,
            const std::string& domain_text) {
    if (out_path.empty()) throw ParamError("gen needs --out");
    DomainShape domain = parse_domain(domain_text);
    bool periodic = std::holds_alternative<FullTorus>(domain);
    Grid grid = Grid::make(dim, n, {0.0, 0.0}, 1.0, periodic);
    SampledFunction f = sample(parse_corpus_spec(spec_text), grid);
    write_gridfun(out_path, f);
    std::cout << "wrote " << out_path << " (" << n << (dim == 2 ? "^2" : "") << " nodes, "
              << (f.is_complex() ? "complex" : "real") << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smoothness quasi-norms of sampled functions, by independent routes"};
    app.require_subcommand(1);

    auto* norm_cmd = app.add_subcommand("norm", "compute one quasi-norm");
    InputFlags norm_in;
    ParamFlags norm_pf;
    std::string norm_route = "diff";
    std::string norm_base = "plain";
    std::string norm_out;
    std::string norm_diag;
    add_input_flags(norm_cmd, norm_in);
    add_param_flags(norm_cmd, norm_pf);
    norm_cmd->add_option("--route", norm_route, "lp | diff | osc | clubsuit");
    norm_cmd->add_option("--base", norm_base, "plain | avg");
    norm_cmd->add_option("--out", norm_out, "write CSV report (plus .manifest)");
    norm_cmd->add_option("--diag", norm_diag,
                         "write route diagnostics CSV (lp: band energies; osc/clubsuit: "
                         "local basis health)");

    auto* compare_cmd = app.add_subcommand("compare", "compute two routes and their ratio");
    InputFlags cmp_in;
    ParamFlags cmp_pf;
    std::string cmp_route_a;
    std::string cmp_route_b;
    std::string cmp_base = "plain";
    std::string cmp_out;
    add_input_flags(compare_cmd, cmp_in);
    add_param_flags(compare_cmd, cmp_pf);
    compare_cmd->add_option("--route-a", cmp_route_a, "first route")->required();
    compare_cmd->add_option("--route-b", cmp_route_b, "second route")->required();
    compare_cmd->add_option("--base", cmp_base, "plain | avg");
    compare_cmd->add_option("--out", cmp_out, "write CSV report (plus .manifest)");

    auto* sweep_cmd = app.add_subcommand("sweep", "run a config-driven equivalence sweep");
    std::string sweep_config;
    std::string sweep_out;
    sweep_cmd->add_option("--config", sweep_config, "sweep config file")->required();
    sweep_cmd->add_option("--out", sweep_out, "write CSV report (plus .manifest)");

    auto* whitney_cmd =
        app.add_subcommand("whitney", "polynomial-approximation vs difference comparison");
    InputFlags wh_in;
    int wh_order = 1;
    std::string wh_v = "2";
    std::string wh_out;
    add_input_flags(whitney_cmd, wh_in);
    whitney_cmd->add_option("--order", wh_order, "difference / polynomial order N");
    whitney_cmd->add_option("--v", wh_v, "integration exponent v (number or inf)");
    whitney_cmd->add_option("--out", wh_out, "write CSV report (plus .manifest)");

    auto* refine_cmd = app.add_subcommand("refine", "norm totals across increasing grid sizes");
    std::string rf_func;
    std::string rf_domain = "torus";
    ParamFlags rf_pf;
    std::string rf_route = "diff";
    std::string rf_base = "plain";
    int rf_dim = 1;
    std::vector<int> rf_sizes;
    std::string rf_out;
    refine_cmd->add_option("--func", rf_func, "corpus spec (resampled per size)")->required();
    refine_cmd->add_option("--domain", rf_domain, "domain spec");
    refine_cmd->add_option("--dim", rf_dim, "grid dimension 1 or 2");
    add_param_flags(refine_cmd, rf_pf);
    refine_cmd->add_option("--route", rf_route, "lp | diff | osc | clubsuit");
    refine_cmd->add_option("--base", rf_base, "plain | avg");
    refine_cmd->add_option("--sizes", rf_sizes, "at least 3 increasing grid sizes")
        ->required()
        ->delimiter(',')
        ->expected(-1);
    refine_cmd->add_option("--out", rf_out, "write CSV report (plus .manifest)");

    auto* gen_cmd = app.add_subcommand("gen", "sample a corpus function to a file");
    std::string gen_spec;
    std::string gen_out;
    int gen_n = 256;
    int gen_dim = 1;
    std::string gen_domain = "torus";
    gen_cmd->add_option("--spec", gen_spec, "corpus spec to sample")->required();
    gen_cmd->add_option("--out", gen_out, "output gridded-function file")->required();
    gen_cmd->add_option("--n", gen_n, "grid nodes per axis");
    gen_cmd->add_option("--dim", gen_dim, "grid dimension 1 or 2");
    gen_cmd->add_option("--domain", gen_domain, "domain spec (sets grid periodicity)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (norm_cmd->parsed())
            return run_norm(norm_in, norm_pf, norm_route, norm_base, norm_out, norm_diag);
        if (compare_cmd->parsed())
            return run_compare(cmp_in, cmp_pf, cmp_route_a, cmp_route_b, cmp_base, cmp_out);
        if (sweep_cmd->parsed()) return run_sweep(sweep_config, sweep_out);
        if (whitney_cmd->parsed()) return run_whitney(wh_in, wh_order, wh_v, wh_out);
        if (refine_cmd->parsed())
            return run_refine(rf_func, rf_domain, rf_pf, rf_route, rf_base, rf_dim, rf_sizes,
                              rf_out);
        if (gen_cmd->parsed())
            return run_gen(gen_spec, gen_out, gen_n, gen_dim, gen_domain);
    } catch (const ParamError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 2;
    } catch (const GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
