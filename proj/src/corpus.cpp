#include "smnorm/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "smnorm/errors.hpp"
#include "smnorm/numfmt.hpp"

namespace smnorm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double parse_num(std::string_view text, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(std::string(text), &pos);
        if (pos != text.size()) throw std::invalid_argument(std::string(text));
        return v;
    } catch (const std::exception&) {
        throw ParamError(std::string("corpus spec: bad ") + what + " '" + std::string(text) + "'");
    }
}

long parse_integer(std::string_view text, const char* what) {
    double v = parse_num(text, what);
    long r = static_cast<long>(v);
    if (static_cast<double>(r) != v)
        throw ParamError(std::string("corpus spec: ") + what + " must be an integer, got '" +
                         std::string(text) + "'");
    return r;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(text.substr(start));
            return parts;
        }
        parts.emplace_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

// Standard normal from explicit 53-bit uniforms (Box-Muller).  Spelled out
// because std::normal_distribution's draw sequence is not pinned by the
// standard, and the corpus must be reproducible byte for byte.
class NormalDraws {
public:
    explicit NormalDraws(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        double u1 = (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

private:
    std::mt19937_64 rng_;
};

// Graded-lex exponent multi-indices: degree blocks ascending, first axis
// exponent descending inside each block.
std::vector<std::array<int, 2>> graded_monomials(int dim, std::size_t count) {
    std::vector<std::array<int, 2>> exps;
    for (int deg = 0; exps.size() < count; ++deg) {
        if (dim == 1) {
            exps.push_back({deg, 0});
        } else {
            for (int a = deg; a >= 0 && exps.size() < count; --a)
                exps.push_back({a, deg - a});
        }
    }
    return exps;
}

struct Sampler {
    const Grid& grid;

    std::vector<double> operator()(const PolynomialSpec& spec) const {
        if (spec.coefficients.empty())
            throw ParamError("polynomial corpus spec needs at least one coefficient");
        auto exps = graded_monomials(grid.dim(), spec.coefficients.size());
        std::vector<double> vals(grid.node_count());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            auto x = grid.coords(i);
            double acc = 0.0;
            for (std::size_t j = 0; j < spec.coefficients.size(); ++j)
                acc += spec.coefficients[j] *
                       std::pow(x[0], exps[j][0]) * std::pow(x[1], exps[j][1]);
            vals[i] = acc;
        }
        return vals;
    }

    std::vector<double> operator()(const TrigModeSpec& spec) const {
        std::vector<double> vals(grid.node_count());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            auto x = grid.coords(i);
            double phase = x[0];
            if (grid.dim() == 2) phase += x[1];
            vals[i] = std::cos(kTwoPi * spec.k * phase);
        }
        return vals;
    }

    std::vector<double> operator()(const CuspSpec& spec) const {
        if (!(spec.alpha > 0.0))
            throw ParamError("cusp strength alpha must be positive");
        std::vector<double> vals(grid.node_count());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            auto x = grid.coords(i);
            double rho2 = 0.0;
            for (int a = 0; a < grid.dim(); ++a) {
                double delta = x[static_cast<std::size_t>(a)] -
                               spec.center[static_cast<std::size_t>(a)];
                if (grid.periodic()) {
                    double sn = std::sin(std::numbers::pi * delta / grid.extent());
                    rho2 += sn * sn;
                } else {
                    rho2 += delta * delta;
                }
            }
            vals[i] = std::pow(rho2, 0.5 * spec.alpha);
        }
        return vals;
    }

    std::vector<double> operator()(const WeierstrassSpec& spec) const {
        if (!(spec.a > 0.0 && spec.a < 1.0))
            throw ParamError("weierstrass amplitude a must lie in (0,1)");
        if (spec.b < 2) throw ParamError("weierstrass frequency base b must be >= 2");
        if (spec.levels < 1) throw ParamError("weierstrass needs at least one level");
        std::vector<double> vals(grid.node_count());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            auto x = grid.coords(i);
            double phase = x[0];
            if (grid.dim() == 2) phase += x[1];
            double acc = 0.0;
            double amp = 1.0;
            double freq = 1.0;
            for (int j = 0; j < spec.levels; ++j) {
                acc += amp * std::cos(kTwoPi * freq * phase);
                amp *= spec.a;
                freq *= spec.b;
            }
            vals[i] = acc;
        }
        return vals;
    }

    std::vector<double> operator()(const IndicatorSpec& spec) const {
        for (int a = 0; a < grid.dim(); ++a)
            if (!(spec.lo[static_cast<std::size_t>(a)] < spec.hi[static_cast<std::size_t>(a)]))
                throw ParamError("indicator box must satisfy lo < hi on every axis");
        std::vector<double> vals(grid.node_count());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            auto x = grid.coords(i);
            bool inside = true;
            for (int a = 0; a < grid.dim(); ++a) {
                auto ia = static_cast<std::size_t>(a);
                inside = inside && spec.lo[ia] <= x[ia] && x[ia] < spec.hi[ia];
            }
            vals[i] = inside ? 1.0 : 0.0;
        }
        return vals;
    }

    std::vector<double> operator()(const RandomSmoothSpec& spec) const {
        if (spec.cutoff < 1)
            throw ParamError("random corpus cutoff must be >= 1");
        if (spec.cutoff >= grid.nodes_per_axis() / 2)
            throw ParamError("random corpus cutoff must stay below n/2");
        NormalDraws draw(spec.seed);
        // Frequency list: constant term, then the half lattice that spans all
        // real modes once (k1 > 0, or k1 == 0 and k2 > 0).
        std::vector<std::array<int, 2>> freqs;
        if (grid.dim() == 1) {
            for (int k = 1; k <= spec.cutoff; ++k) freqs.push_back({k, 0});
        } else {
            for (int k1 = 0; k1 <= spec.cutoff; ++k1)
                for (int k2 = -spec.cutoff; k2 <= spec.cutoff; ++k2)
                    if (k1 > 0 || k2 > 0) freqs.push_back({k1, k2});
        }
        double constant = draw();
        std::vector<double> amp_cos(freqs.size()), amp_sin(freqs.size());
        for (std::size_t j = 0; j < freqs.size(); ++j) {
            amp_cos[j] = draw();
            amp_sin[j] = draw();
        }
        std::vector<double> vals(grid.node_count());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            auto x = grid.coords(i);
            double acc = constant;
            for (std::size_t j = 0; j < freqs.size(); ++j) {
                double phase = kTwoPi * (freqs[j][0] * x[0] + freqs[j][1] * x[1]) /
                               grid.extent();
                acc += amp_cos[j] * std::cos(phase) + amp_sin[j] * std::sin(phase);
            }
            vals[i] = acc;
        }
        return vals;
    }
};

} // namespace

CorpusSpec parse_corpus_spec(std::string_view text) {
    auto parts = split(text, ':');
    const std::string& kind = parts[0];
    auto want = [&](std::size_t args) {
        if (parts.size() != args + 1)
            throw ParamError("corpus spec '" + std::string(text) + "': expected " +
                             std::to_string(args) + " ':'-separated arguments");
    };
    if (kind == "poly") {
        want(1);
        PolynomialSpec spec;
        for (const auto& c : split(parts[1], ','))
            spec.coefficients.push_back(parse_num(c, "polynomial coefficient"));
        return spec;
    }
    if (kind == "trig") {
        want(1);
        return TrigModeSpec{static_cast<int>(parse_integer(parts[1], "wave index"))};
    }
    if (kind == "cusp") {
        want(2);
        CuspSpec spec;
        spec.alpha = parse_num(parts[1], "cusp strength");
        auto center = split(parts[2], ',');
        if (center.size() > 2)
            throw ParamError("cusp center takes at most two coordinates");
        spec.center[0] = parse_num(center[0], "cusp center");
        spec.center[1] = center.size() == 2 ? parse_num(center[1], "cusp center") : spec.center[0];
        return spec;
    }
    if (kind == "weier") {
        want(3);
        WeierstrassSpec spec;
        spec.a = parse_num(parts[1], "weierstrass amplitude");
        spec.b = static_cast<int>(parse_integer(parts[2], "weierstrass base"));
        spec.levels = static_cast<int>(parse_integer(parts[3], "weierstrass level count"));
        return spec;
    }
    if (kind == "indicator") {
        want(2);
        IndicatorSpec spec;
        auto lo = split(parts[1], ','), hi = split(parts[2], ',');
        if (lo.size() > 2 || hi.size() > 2)
            throw ParamError("indicator corners take at most two coordinates");
        spec.lo[0] = parse_num(lo[0], "indicator corner");
        spec.lo[1] = lo.size() == 2 ? parse_num(lo[1], "indicator corner") : spec.lo[0];
        spec.hi[0] = parse_num(hi[0], "indicator corner");
        spec.hi[1] = hi.size() == 2 ? parse_num(hi[1], "indicator corner") : spec.hi[0];
        return spec;
    }
    if (kind == "random") {
        want(2);
        RandomSmoothSpec spec;
        long seed = parse_integer(parts[1], "random seed");
        if (seed < 0) throw ParamError("random seed must be non-negative");
        spec.seed = static_cast<std::uint64_t>(seed);
        spec.cutoff = static_cast<int>(parse_integer(parts[2], "random cutoff"));
        return spec;
    }
    throw ParamError("unknown corpus kind '" + kind + "'");
}

std::string corpus_name(const CorpusSpec& spec) {
    struct Namer {
        std::string operator()(const PolynomialSpec& s) const {
            std::string out = "poly:";
            for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
                if (i) out += ',';
                out += shortest_double(s.coefficients[i]);
            }
            return out;
        }
        std::string operator()(const TrigModeSpec& s) const {
            return "trig:" + std::to_string(s.k);
        }
        std::string operator()(const CuspSpec& s) const {
            return "cusp:" + shortest_double(s.alpha) + ":" + shortest_double(s.center[0]) +
                   "," + shortest_double(s.center[1]);
        }
        std::string operator()(const WeierstrassSpec& s) const {
            return "weier:" + shortest_double(s.a) + ":" + std::to_string(s.b) + ":" +
                   std::to_string(s.levels);
        }
        std::string operator()(const IndicatorSpec& s) const {
            return "indicator:" + shortest_double(s.lo[0]) + "," + shortest_double(s.lo[1]) +
                   ":" + shortest_double(s.hi[0]) + "," + shortest_double(s.hi[1]);
        }
        std::string operator()(const RandomSmoothSpec& s) const {
            return "random:" + std::to_string(s.seed) + ":" + std::to_string(s.cutoff);
        }
    };
    return std::visit(Namer{}, spec);
}

SampledFunction sample(const CorpusSpec& spec, const Grid& grid) {
    return SampledFunction(grid, std::visit(Sampler{grid}, spec));
}

} // namespace smnorm
