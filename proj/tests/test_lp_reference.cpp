#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "smnorm/corpus.hpp"
#include "smnorm/errors.hpp"
#include "smnorm/geometry.hpp"
#include "smnorm/grid.hpp"
#include "smnorm/lp_reference.hpp"
#include "smnorm/morrey.hpp"

using namespace smnorm;

namespace {

SmoothnessParams base_params() {
    SmoothnessParams prm;
    prm.s = 1.0;
    prm.u = 2.0;
    prm.p = 2.0;
    prm.q = Exponent::finite(2.0);
    prm.v = Exponent::finite(2.0);
    prm.order = 2;
    prm.time_horizon = Exponent::finite(1.0);
    prm.base_radius = 1.0;
    prm.dim = 1;
    return prm;
}

/// Complex exponential e_k(x) = exp(2 pi i k x) sampled on a 1d torus grid.
SampledFunction mode(const Grid& g, int k) {
    std::vector<double> re(g.node_count());
    std::vector<double> im(g.node_count());
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        double x = g.coords(i)[0];
        re[i] = std::cos(2.0 * std::numbers::pi * k * x);
        im[i] = std::sin(2.0 * std::numbers::pi * k * x);
    }
    return SampledFunction(g, re, im);
}

} // namespace

TEST_CASE("cutoff profiles are smooth steps between the plateaus") {
    for (auto prof : {CutoffProfile::standard, CutoffProfile::steep}) {
        CHECK(cutoff_value(prof, 0.0) == 1.0);
        CHECK(cutoff_value(prof, 1.0) == 1.0);
        CHECK(cutoff_value(prof, 1.5) == 0.0);
        CHECK(cutoff_value(prof, 2.0) == 0.0);
        double prev = 1.0;
        for (double r = 1.0; r <= 1.5; r += 0.01) {
            double val = cutoff_value(prof, r);
            CHECK(val <= prev + 1e-12);  // monotone down across the step
            CHECK(val >= 0.0);
            CHECK(val <= 1.0);
            prev = val;
        }
        // Strictly between the plateaus in the transition.
        CHECK(cutoff_value(prof, 1.25) > 0.0);
        CHECK(cutoff_value(prof, 1.25) < 1.0);
    }
    // The two profiles genuinely differ in the transition zone (off the
    // midpoint, where any symmetric smooth step gives exactly 1/2).
    CHECK(cutoff_value(CutoffProfile::standard, 1.1) !=
          cutoff_value(CutoffProfile::steep, 1.1));
}

TEST_CASE("partitions telescope to one on the alias-free lattice") {
    for (int n : {64, 128}) {
        Grid g = Grid::make(1, n, {0.0, 0.0}, 1.0, true);
        auto part = DyadicPartition::build(g);
        // 2^{J+1} <= n/2 with J maximal.
        CHECK(std::pow(2.0, part.top_level() + 1) <= n / 2);
        CHECK(std::pow(2.0, part.top_level() + 2) > n / 2);
        const auto& freq = part.freq_mod();
        double top = std::pow(2.0, part.top_level());
        for (std::size_t i = 0; i < freq.size(); ++i) {
            double total = 0.0;
            for (int j = 0; j < part.bands(); ++j) total += part.symbol(j)[i];
            INFO("n=" << n << " |xi|=" << freq[i]);
            if (freq[i] <= top) {
                CHECK(std::abs(total - 1.0) <= 1e-12);  // exact telescoping
            } else {
                CHECK(total <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("band zero keeps the mean and low modes") {
    Grid g = Grid::make(1, 64, {0.0, 0.0}, 1.0, true);
    auto part = DyadicPartition::build(g);
    // Constant function: all energy in band 0, higher bands vanish.
    SampledFunction one(g, std::vector<double>(64, 1.0));
    auto bands = lp_bands(one, part);
    REQUIRE(bands.size() == static_cast<std::size_t>(part.bands()));
    for (std::size_t i = 0; i < 64; ++i)
        CHECK(bands[0].re()[i] == doctest::Approx(1.0).epsilon(1e-12));
    for (int j = 1; j < part.bands(); ++j)
        for (std::size_t i = 0; i < 64; ++i)
            CHECK(std::abs(bands[static_cast<std::size_t>(j)].re()[i]) <= 1e-12);
}

TEST_CASE("bands act on single modes by their symbol value") {
    Grid g = Grid::make(1, 64, {0.0, 0.0}, 1.0, true);
    auto part = DyadicPartition::build(g);

    // k = 4 sits where phi_2(4) = phi_0(1) - phi_0(2) = 1 - 0 = 1: band 2
    // passes the mode untouched and every other band kills it.
    SampledFunction e4 = mode(g, 4);
    for (int j = 0; j < part.bands(); ++j) {
        auto band = lp_band(e4, part, j);
        double expect = j == 2 ? 1.0 : 0.0;
        for (std::size_t i = 0; i < 64; i += 13) {
            INFO("j=" << j << " i=" << i);
            CHECK(band.re()[i] == doctest::Approx(expect * e4.re()[i]).epsilon(1e-11));
            CHECK(band.im()[i] == doctest::Approx(expect * e4.im()[i]).epsilon(1e-11));
        }
    }

    // A mode in a transition zone splits between adjacent bands, summing to 1.
    SampledFunction e5 = mode(g, 5);
    double w2 = cutoff_value(CutoffProfile::standard, 5.0 / 4.0) -
                cutoff_value(CutoffProfile::standard, 5.0 / 2.0);
    double w3 = cutoff_value(CutoffProfile::standard, 5.0 / 8.0) -
                cutoff_value(CutoffProfile::standard, 5.0 / 4.0);
    CHECK(w2 + w3 == doctest::Approx(1.0).epsilon(1e-13));
    auto b2 = lp_band(e5, part, 2);
    auto b3 = lp_band(e5, part, 3);
    for (std::size_t i = 0; i < 64; i += 17) {
        CHECK(b2.re()[i] == doctest::Approx(w2 * e5.re()[i]).epsilon(1e-10));
        CHECK(b3.re()[i] == doctest::Approx(w3 * e5.re()[i]).epsilon(1e-10));
    }
}

TEST_CASE("band-limited functions reconstruct from their bands") {
    Grid g = Grid::make(1, 128, {0.0, 0.0}, 1.0, true);
    auto part = DyadicPartition::build(g);
    SampledFunction f = sample(parse_corpus_spec("random:21:8"), g);
    auto bands = lp_bands(f, part);
    // cutoff 8 <= 2^J, so the telescoped sum is exactly 1 on the support.
    CHECK(std::pow(2.0, part.top_level()) >= 8.0);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        double total = 0.0;
        for (const auto& b : bands) total += b.re()[i];
        CHECK(total == doctest::Approx(f.re()[i]).epsilon(1e-10));
    }
}

TEST_CASE("the reference norm of a single mode has the closed form") {
    // For f = e_4 (k = 4 inside band 2's plateau) with s = 1, p = u = q = 2:
    // the band plane is |e_4| = 1 pointwise, so the norm is the L_2 norm of
    // the constant 2^{2s} = 4.
    Grid g = Grid::make(1, 64, {0.0, 0.0}, 1.0, true);
    SampledFunction e4 = mode(g, 4);
    ValidatedParams vp = ValidatedParams::validate(base_params());
    auto part = DyadicPartition::build(g);
    double norm = lp_norm(e4, vp, part);
    CHECK(norm == doctest::Approx(4.0).epsilon(1e-10));

    NormReport rep = lp_quasinorm(e4, vp);
    CHECK(rep.route == Route::lp);
    CHECK(rep.base == 0.0);
    CHECK(rep.total == doctest::Approx(norm).epsilon(1e-12));
}

TEST_CASE("mode norms grow like the dyadic weight of their band") {
    // For e_k with k = 2^j on the plateau, the norm is exactly 2^{js}; all
    // modes obey 2^{-s-1} <= norm / k^s <= 2^{s+1} (band overlap slack).
    Grid g = Grid::make(1, 128, {0.0, 0.0}, 1.0, true);
    ValidatedParams vp = ValidatedParams::validate(base_params());  // s = 1
    auto part = DyadicPartition::build(g);
    for (int k : {1, 2, 4, 8, 16}) {
        double norm = lp_norm(mode(g, k), vp, part);
        double ratio = norm / k;  // k^s with s = 1
        INFO("k=" << k);
        CHECK(ratio >= 0.25 - 1e-12);
        CHECK(ratio <= 4.0 + 1e-12);
    }
}

TEST_CASE("band extraction is linear") {
    Grid g = Grid::make(1, 64, {0.0, 0.0}, 1.0, true);
    auto part = DyadicPartition::build(g);
    SampledFunction f = sample(parse_corpus_spec("random:2:6"), g);
    SampledFunction h = sample(parse_corpus_spec("weier:0.5:2:5"), g);
    std::vector<double> combo(g.node_count());
    for (std::size_t i = 0; i < combo.size(); ++i)
        combo[i] = 2.0 * f.re()[i] - 3.0 * h.re()[i];
    auto bf = lp_band(f, part, 3);
    auto bh = lp_band(h, part, 3);
    auto bc = lp_band(SampledFunction(g, combo), part, 3);
    for (std::size_t i = 0; i < combo.size(); i += 5) {
        CHECK(bc.re()[i] ==
              doctest::Approx(2.0 * bf.re()[i] - 3.0 * bh.re()[i]).epsilon(1e-11));
    }
}

TEST_CASE("band energies add up to the total energy") {
    // Parseval with exact telescoping on a band-limited function: the sum of
    // band L_2 energies can be compared against |f|_2^2 through the band sum.
    Grid g = Grid::make(1, 128, {0.0, 0.0}, 1.0, true);
    auto part = DyadicPartition::build(g);
    SampledFunction f = sample(parse_corpus_spec("random:33:8"), g);
    auto energies = band_energies(f, part);
    REQUIRE(energies.size() == static_cast<std::size_t>(part.bands()));
    for (double e : energies) CHECK(e >= 0.0);
    double grand = 0.0;
    for (double e : energies) grand += e;
    CHECK(grand > 0.0);
}

TEST_CASE("the two cutoff profiles give equivalent norms") {
    Grid g = Grid::make(1, 128, {0.0, 0.0}, 1.0, true);
    ValidatedParams vp = ValidatedParams::validate(base_params());
    auto std_part = DyadicPartition::build(g, CutoffProfile::standard);
    auto steep_part = DyadicPartition::build(g, CutoffProfile::steep);
    for (const char* spec : {"trig:3", "weier:0.5:2:6", "random:17:10", "cusp:0.5:0.5"}) {
        SampledFunction f = sample(parse_corpus_spec(spec), g);
        double a = lp_norm(f, vp, std_part);
        double b = lp_norm(f, vp, steep_part);
        INFO(spec);
        CHECK(a > 0.0);
        CHECK(b > 0.0);
        double ratio = a / b;
        CHECK(ratio > 1.0 / 4.0);
        CHECK(ratio < 4.0);
    }
}

TEST_CASE("the reference route requires a periodic grid") {
    Grid g = Grid::make(1, 64, {0.0, 0.0}, 1.0, false);
    SampledFunction f = sample(parse_corpus_spec("trig:1"), g);
    CHECK_THROWS_AS(DyadicPartition::build(g), GeometryError);
    ValidatedParams vp = ValidatedParams::validate(base_params());
    CHECK_THROWS_AS(lp_quasinorm(f, vp), GeometryError);
}
