#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "smnorm/corpus.hpp"
#include "smnorm/errors.hpp"
#include "smnorm/geometry.hpp"
#include "smnorm/grid.hpp"
#include "smnorm/morrey.hpp"

using namespace smnorm;

namespace {

std::vector<std::uint8_t> all_ones(std::size_t n) {
    return std::vector<std::uint8_t>(n, 1);
}

std::vector<std::uint8_t> interval_mask(const Grid& g, double a, double b) {
    std::vector<std::uint8_t> mask(g.node_count(), 0);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        double x = g.coords(i)[0];
        mask[i] = (x > a && x < b) ? 1 : 0;
    }
    return mask;
}

std::vector<double> ladder_radii(const RadiusLadder& ladder) {
    std::vector<double> r;
    for (int l = 0; l < ladder.levels(); ++l) r.push_back(ladder.radius(l));
    return r;
}

} // namespace

TEST_CASE("radius ladders are dyadic and clamp at two spacings") {
    Grid g = Grid::make(1, 64, {0.0, 0.0}, 1.0, true);
    RadiusLadder full = RadiusLadder::full(g);
    CHECK(full.j_min() == 0);
    CHECK(full.j_max() == 5);
    CHECK(full.levels() == 6);
    CHECK(full.radius(0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(full.radius(5) == doctest::Approx(1.0 / 32).epsilon(1e-15));
    // Finest radius is two spacings.
    CHECK(full.radius(full.levels() - 1) == doctest::Approx(2 * g.spacing()).epsilon(1e-15));

    RadiusLadder trunc = RadiusLadder::up_to(g, Exponent::finite(0.25));
    CHECK(trunc.j_min() == 2);
    CHECK(trunc.radius(0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(RadiusLadder::up_to(g, Exponent::infinity()).j_min() == 0);
    CHECK_THROWS_AS(RadiusLadder::up_to(g, Exponent::finite(0.01)), ParamError);
    CHECK_THROWS_AS(RadiusLadder::full(g, 9), ParamError);
}

TEST_CASE("morrey norm matches the brute-force oracle on the torus") {
    Grid g = Grid::make(1, 32, {0.0, 0.0}, 1.0, true);
    RadiusLadder ladder = RadiusLadder::full(g);
    auto radii = ladder_radii(ladder);
    auto mask = all_ones(g.node_count());

    for (const char* spec : {"trig:1", "cusp:0.5:0.5", "random:3:4"}) {
        SampledFunction f = sample(parse_corpus_spec(spec), g);
        auto plane = f.modulus();
        for (auto [p, u] : std::vector<std::pair<double, double>>{
                 {2.0, 2.0}, {2.0, 4.0}, {1.5, 3.0}, {0.5, 0.5}}) {
            double lib = morrey_norm(f, FullTorus{}, p, u, ladder);
            double ora = oracle::morrey(g, mask, plane, p, u, radii);
            INFO(spec << " p=" << p << " u=" << u);
            CHECK(lib == doctest::Approx(ora).epsilon(1e-12));
        }
    }
}

TEST_CASE("morrey norm matches the oracle on an interval and in the plane") {
    Grid g1 = Grid::make(1, 32, {0.0, 0.0}, 1.0, false);
    Interval iv{0.0, 1.0};
    RadiusLadder lad1 = RadiusLadder::full(g1);
    auto mask1 = interval_mask(g1, 0.0, 1.0);
    SampledFunction f1 = sample(parse_corpus_spec("poly:0,1"), g1);
    double lib1 = morrey_norm(f1, iv, 2.0, 3.0, lad1);
    double ora1 = oracle::morrey(g1, mask1, f1.modulus(), 2.0, 3.0, ladder_radii(lad1));
    CHECK(lib1 == doctest::Approx(ora1).epsilon(1e-12));

    Grid g2 = Grid::make(2, 16, {0.0, 0.0}, 1.0, false);
    ConvexPolytope sq = make_polytope({{0.2, 0.2}, {0.8, 0.2}, {0.8, 0.8}, {0.2, 0.8}});
    std::vector<std::uint8_t> mask2(g2.node_count(), 0);
    for (std::size_t i = 0; i < g2.node_count(); ++i) {
        auto x = g2.coords(i);
        mask2[i] = (x[0] > 0.2 && x[0] < 0.8 && x[1] > 0.2 && x[1] < 0.8) ? 1 : 0;
    }
    RadiusLadder lad2 = RadiusLadder::full(g2);
    SampledFunction f2 = sample(parse_corpus_spec("trig:1"), g2);
    double lib2 = morrey_norm(f2, sq, 1.0, 2.0, lad2);
    double ora2 = oracle::morrey(g2, mask2, f2.modulus(), 1.0, 2.0, ladder_radii(lad2));
    CHECK(lib2 == doctest::Approx(ora2).epsilon(1e-12));
}

TEST_CASE("u equal to p reduces the morrey norm to the plain L_p norm") {
    Grid g = Grid::make(1, 64, {0.0, 0.0}, 1.0, true);
    RadiusLadder ladder = RadiusLadder::full(g);
    for (const char* spec : {"trig:2", "weier:0.5:2:5", "random:7:6"}) {
        SampledFunction f = sample(parse_corpus_spec(spec), g);
        double mn = morrey_norm(f, FullTorus{}, 2.0, 2.0, ladder);
        double lp = 0.0;
        for (double val : f.modulus()) lp += val * val * g.spacing();
        lp = std::sqrt(lp);
        INFO(spec);
        CHECK(mn == doctest::Approx(lp).epsilon(1e-10));
    }
}

TEST_CASE("the power identity holds to rounding") {
    Grid g = Grid::make(1, 64, {0.0, 0.0}, 1.0, true);
    RadiusLadder ladder = RadiusLadder::full(g);
    SampledFunction f = sample(parse_corpus_spec("random:5:5"), g);
    for (double mu : {0.5, 1.0, 2.0, 3.0}) {
        auto chk = power_identity_check(f, FullTorus{}, 2.0, 4.0, mu, ladder);
        INFO("mu=" << mu);
        CHECK(chk.rel_err <= 1e-12);
        CHECK(chk.lhs == doctest::Approx(chk.rhs).epsilon(1e-12));
    }
}

TEST_CASE("morrey norm is absolutely homogeneous and monotone in the data") {
    Grid g = Grid::make(1, 32, {0.0, 0.0}, 1.0, true);
    RadiusLadder ladder = RadiusLadder::full(g);
    SampledFunction f = sample(parse_corpus_spec("random:2:4"), g);
    double base = morrey_norm(f, FullTorus{}, 1.5, 2.5, ladder);

    std::vector<double> scaled = f.re();
    for (double& x : scaled) x *= -3.0;
    double tripled = morrey_norm(SampledFunction(g, scaled), FullTorus{}, 1.5, 2.5, ladder);
    CHECK(tripled == doctest::Approx(3.0 * base).epsilon(1e-12));

    // Pointwise domination of the modulus dominates the norm.
    std::vector<double> bigger = f.modulus();
    for (double& x : bigger) x += 0.5;
    double dominated =
        morrey_plane_norm(g, FullTorus{}, bigger, 1.5, 2.5, ladder);
    CHECK(dominated >= base);
}

TEST_CASE("constant function on the unit interval has a computable norm") {
    // For f = 1 on (0,1) with p = 2, u = 2 the norm is the L_2 norm of the
    // mask, sqrt(#nodes * h); interior node counts make this exact.
    Grid g = Grid::make(1, 64, {0.0, 0.0}, 1.0, false);
    SampledFunction one(g, std::vector<double>(g.node_count(), 1.0));
    RadiusLadder ladder = RadiusLadder::full(g);
    double norm = morrey_norm(one, Interval{0.0, 1.0}, 2.0, 2.0, ladder);
    CHECK(norm == doctest::Approx(std::sqrt(63.0 / 64.0)).epsilon(1e-12));

    // With u > p sub-unit radii carry weight r^{-1/4} > 1.  The winner is
    // r = 1/2 centered at 0.5, whose ball still holds all 63 interior nodes.
    double mn = morrey_norm(one, Interval{0.0, 1.0}, 2.0, 4.0, ladder);
    CHECK(mn == doctest::Approx(std::pow(2.0, 0.25) * std::sqrt(63.0 / 64.0)).epsilon(1e-12));
    CHECK(mn > norm);
}

TEST_CASE("scale integral matches the oracle combine and handles q = inf") {
    Grid g = Grid::make(1, 32, {0.0, 0.0}, 1.0, true);
    RadiusLadder ladder = RadiusLadder::up_to(g, Exponent::finite(0.5));
    auto radii = ladder_radii(ladder);
    REQUIRE(ladder.levels() == 4);

    std::vector<std::vector<double>> planes(radii.size(),
                                            std::vector<double>(g.node_count()));
    for (std::size_t j = 0; j < planes.size(); ++j)
        for (std::size_t x = 0; x < g.node_count(); ++x)
            planes[j][x] = 0.25 + 0.1 * static_cast<double>(j) +
                           0.01 * static_cast<double>(x % 5);

    for (double s : {0.3, 0.9}) {
        for (double q : {1.0, 2.0, oracle::kInf}) {
            Exponent qe = q == oracle::kInf ? Exponent::infinity() : Exponent::finite(q);
            auto combined = scale_integral(ladder, planes, s, qe);
            REQUIRE(combined.size() == g.node_count());
            for (std::size_t x = 0; x < g.node_count(); x += 7) {
                std::vector<double> vals;
                for (std::size_t j = 0; j < planes.size(); ++j) vals.push_back(planes[j][x]);
                double expect = oracle::scale_combine(vals, radii, s, q);
                INFO("s=" << s << " q=" << q << " x=" << x);
                CHECK(combined[x] == doctest::Approx(expect).epsilon(1e-12));
            }
        }
    }

    // A single level with q finite reduces to t^{-s} g (ln 2)^{1/q}.
    RadiusLadder one = RadiusLadder::full(g, 4);
    REQUIRE(one.levels() == 1);
    std::vector<std::vector<double>> single{std::vector<double>(g.node_count(), 2.0)};
    auto out = scale_integral(one, single, 0.5, Exponent::finite(2.0));
    double t = one.radius(0);
    CHECK(out[0] == doctest::Approx(std::pow(t, -0.5) * 2.0 *
                                    std::sqrt(std::numbers::ln2))
                        .epsilon(1e-13));
    auto sup = scale_integral(one, single, 0.5, Exponent::infinity());
    CHECK(sup[0] == doctest::Approx(std::pow(t, -0.5) * 2.0).epsilon(1e-13));
}

TEST_CASE("local average term matches the oracle plane run through the norm") {
    Grid g = Grid::make(1, 32, {0.0, 0.0}, 1.0, false);
    Interval iv{0.0, 1.0};
    RadiusLadder ladder = RadiusLadder::full(g);
    auto mask = interval_mask(g, 0.0, 1.0);
    SampledFunction f = sample(parse_corpus_spec("cusp:0.7:0.4"), g);

    for (double v : {1.0, 2.0, oracle::kInf}) {
        Exponent ve = v == oracle::kInf ? Exponent::infinity() : Exponent::finite(v);
        for (double R : {0.25, 1.0}) {
            double lib = local_average_term(f, iv, ve, R, 2.0, 3.0, ladder);
            auto plane = oracle::local_average_plane(g, mask, f.modulus(), v, R);
            double ora = oracle::morrey(g, mask, plane, 2.0, 3.0, ladder_radii(ladder));
            INFO("v=" << v << " R=" << R);
            CHECK(lib == doctest::Approx(ora).epsilon(1e-12));
        }
    }
}

TEST_CASE("local average term grows with the reference radius") {
    Grid g = Grid::make(1, 64, {0.0, 0.0}, 1.0, true);
    RadiusLadder ladder = RadiusLadder::full(g);
    for (const char* spec : {"trig:1", "random:4:6", "cusp:0.5:0.5"}) {
        SampledFunction f = sample(parse_corpus_spec(spec), g);
        double prev = 0.0;
        for (double R : {0.125, 0.25, 0.5, 1.0}) {
            double term =
                local_average_term(f, FullTorus{}, Exponent::finite(2.0), R, 2.0, 2.0, ladder);
            INFO(spec << " R=" << R);
            CHECK(term >= prev - 1e-14);
            prev = term;
        }
    }
}

TEST_CASE("norm arguments are validated") {
    Grid g = Grid::make(1, 32, {0.0, 0.0}, 1.0, true);
    RadiusLadder ladder = RadiusLadder::full(g);
    SampledFunction f = sample(parse_corpus_spec("trig:1"), g);
    CHECK_THROWS_AS(morrey_norm(f, FullTorus{}, 3.0, 2.0, ladder), ParamError);   // p > u
    CHECK_THROWS_AS(morrey_norm(f, FullTorus{}, -1.0, 2.0, ladder), ParamError);
    CHECK_THROWS_AS(morrey_norm(f, Interval{0.0, 1.0}, 2.0, 2.0, ladder), GeometryError);
    std::vector<double> short_plane(3, 1.0);
    CHECK_THROWS_AS(morrey_plane_norm(g, FullTorus{}, short_plane, 2.0, 2.0, ladder),
                    ParamError);
}
