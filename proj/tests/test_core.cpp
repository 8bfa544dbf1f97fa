#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "smnorm/config.hpp"
#include "smnorm/corpus.hpp"
#include "smnorm/errors.hpp"
#include "smnorm/grid.hpp"
#include "smnorm/numfmt.hpp"
#include "smnorm/params.hpp"

using namespace smnorm;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("grid construction validates its inputs") {
    CHECK_NOTHROW(Grid::make(1, 16, {0.0, 0.0}, 1.0, true));
    CHECK_NOTHROW(Grid::make(2, 64, {0.0, 0.0}, 2.0, false));
    CHECK_THROWS_AS(Grid::make(3, 64, {0.0, 0.0}, 1.0, true), ParamError);
    CHECK_THROWS_AS(Grid::make(0, 64, {0.0, 0.0}, 1.0, true), ParamError);
    CHECK_THROWS_AS(Grid::make(1, 48, {0.0, 0.0}, 1.0, true), ParamError);
    CHECK_THROWS_AS(Grid::make(1, 8, {0.0, 0.0}, 1.0, true), ParamError);
    CHECK_THROWS_AS(Grid::make(1, 64, {0.0, 0.0}, 0.0, true), ParamError);
    CHECK_THROWS_AS(Grid::make(1, 64, {0.0, 0.0}, -1.0, true), ParamError);
}

TEST_CASE("grid indexing round-trips and spacing is extent over n") {
    Grid g1 = Grid::make(1, 32, {0.25, 0.0}, 2.0, false);
    CHECK(g1.node_count() == 32);
    CHECK(g1.spacing() == doctest::Approx(2.0 / 32).epsilon(1e-15));
    CHECK(g1.coords(5)[0] == doctest::Approx(0.25 + 5 * g1.spacing()).epsilon(1e-15));

    Grid g2 = Grid::make(2, 16, {0.0, 0.0}, 1.0, true);
    CHECK(g2.node_count() == 256);
    for (std::size_t flat : {std::size_t{0}, std::size_t{17}, std::size_t{255}}) {
        CHECK(g2.flat_of(g2.index_of(flat)) == flat);
    }
    CHECK(g2.index_of(16 * 3 + 7)[0] == 3);
    CHECK(g2.index_of(16 * 3 + 7)[1] == 7);
}

TEST_CASE("grid shift wraps on the torus and rejects off-grid steps elsewhere") {
    Grid torus = Grid::make(1, 16, {0.0, 0.0}, 1.0, true);
    std::size_t out = 0;
    REQUIRE(torus.shift(15, {1, 0}, out));
    CHECK(out == 0);
    REQUIRE(torus.shift(0, {-1, 0}, out));
    CHECK(out == 15);

    Grid box = Grid::make(1, 16, {0.0, 0.0}, 1.0, false);
    CHECK(box.shift(15, {1, 0}, out) == false);
    CHECK(box.shift(0, {-1, 0}, out) == false);
    REQUIRE(box.shift(7, {3, 0}, out));
    CHECK(out == 10);
}

TEST_CASE("sampled functions enforce shape and finiteness") {
    Grid g = Grid::make(1, 16, {0.0, 0.0}, 1.0, true);
    std::vector<double> ok(16, 1.0);
    CHECK_NOTHROW(SampledFunction(g, ok));
    CHECK_THROWS_AS(SampledFunction(g, std::vector<double>(15, 1.0)), ParamError);
    std::vector<double> bad(16, 1.0);
    bad[3] = std::nan("");
    CHECK_THROWS_AS(SampledFunction(g, bad), ParamError);
    CHECK_THROWS_AS(SampledFunction(g, ok, std::vector<double>(5, 0.0)), ParamError);

    SampledFunction c(g, ok, std::vector<double>(16, 2.0));
    CHECK(c.is_complex());
    CHECK(c.modulus()[0] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
    SampledFunction r(g, std::vector<double>(16, -3.0));
    CHECK(!r.is_complex());
    CHECK(r.modulus()[7] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("gridded-function files round-trip exactly") {
    Grid g = Grid::make(2, 16, {0.0, 0.5}, 1.0, false);
    std::vector<double> re(g.node_count());
    std::vector<double> im(g.node_count());
    for (std::size_t i = 0; i < re.size(); ++i) {
        re[i] = std::sin(0.1 * static_cast<double>(i)) * 1e-7;
        im[i] = std::cos(0.2 * static_cast<double>(i)) * 1e3;
    }
    SampledFunction f(g, re, im);
    auto path = temp_file("smnorm_roundtrip.grd");
    write_gridfun(path, f);
    SampledFunction back = read_gridfun(path);
    REQUIRE(back.grid() == g);
    REQUIRE(back.is_complex());
    for (std::size_t i = 0; i < re.size(); ++i) {
        CHECK(back.re()[i] == re[i]);
        CHECK(back.im()[i] == im[i]);
    }

    SampledFunction realf(g, re);
    write_gridfun(path, realf);
    SampledFunction back2 = read_gridfun(path);
    CHECK(!back2.is_complex());
    std::filesystem::remove(path);
}

TEST_CASE("gridded-function reader rejects malformed files") {
    auto path = temp_file("smnorm_bad.grd");
    {
        std::ofstream out(path, std::ios::binary);
        out << "not a sample file at all";
    }
    CHECK_THROWS_AS(read_gridfun(path), IoError);

    // A valid file cut short must fail loudly, not zero-fill.
    Grid g = Grid::make(1, 16, {0.0, 0.0}, 1.0, true);
    SampledFunction f(g, std::vector<double>(16, 1.5));
    write_gridfun(path, f);
    auto size = std::filesystem::file_size(path);
    std::filesystem::resize_file(path, size - 8);
    CHECK_THROWS_AS(read_gridfun(path), IoError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_gridfun(temp_file("smnorm_missing.grd")), IoError);
}

TEST_CASE("exponents parse numbers and inf") {
    Exponent two = Exponent::parse("2");
    CHECK(!two.is_inf());
    CHECK(two.value() == 2.0);
    CHECK(two.reciprocal() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(two.str() == "2");

    Exponent inf = Exponent::parse("inf");
    CHECK(inf.is_inf());
    CHECK(inf.reciprocal() == 0.0);
    CHECK(inf.str() == "inf");
    CHECK(Exponent::infinity() == inf);

    CHECK(Exponent::parse("0.5").value() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(Exponent::parse("0"), ParamError);
    CHECK_THROWS_AS(Exponent::parse("-1"), ParamError);
    CHECK_THROWS_AS(Exponent::parse("abc"), ParamError);
    CHECK_THROWS_AS(Exponent::parse(""), ParamError);
}

TEST_CASE("parameter validation enforces the exponent constraints") {
    SmoothnessParams raw;
    raw.s = 0.7;
    raw.u = 2.0;
    raw.p = 2.0;
    raw.q = Exponent::finite(2.0);
    raw.v = Exponent::finite(2.0);
    raw.order = 2;
    raw.time_horizon = Exponent::finite(1.0);
    raw.base_radius = 1.0;
    raw.dim = 1;
    CHECK_NOTHROW(ValidatedParams::validate(raw));

    SmoothnessParams bad = raw;
    bad.p = 3.0;  // p > u
    CHECK_THROWS_AS(ValidatedParams::validate(bad), ParamError);
    bad = raw;
    bad.order = 0;
    CHECK_THROWS_AS(ValidatedParams::validate(bad), ParamError);
    bad = raw;
    bad.dim = 3;
    CHECK_THROWS_AS(ValidatedParams::validate(bad), ParamError);
    bad = raw;
    bad.base_radius = 0.0;
    CHECK_THROWS_AS(ValidatedParams::validate(bad), ParamError);
}

TEST_CASE("smoothness thresholds match the defining formulas") {
    SmoothnessParams raw;
    raw.s = 0.7;
    raw.u = 2.0;
    raw.p = 2.0;
    raw.q = Exponent::finite(2.0);
    raw.v = Exponent::finite(2.0);
    raw.order = 2;
    raw.dim = 1;
    ValidatedParams vp = ValidatedParams::validate(raw);
    CHECK(vp.sigma_p() == 0.0);
    CHECK(vp.sigma_pq() == 0.0);
    CHECK(vp.tau() == 1.0);
    CHECK(vp.lower_window() == 0.0);
    CHECK(vp.window_ok());  // 0 < 0.7 < 2

    // p = 1/2: sigma_p = d (1/p - 1) = 1, and v = 2 adds 1/p - 1/v = 3/2.
    raw.p = 0.5;
    raw.u = 0.5;
    raw.q = Exponent::finite(2.0);
    vp = ValidatedParams::validate(raw);
    CHECK(vp.sigma_p() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(vp.tau() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(vp.lower_window() == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(!vp.window_ok());  // s = 0.7 < 1.5
    raw.s = 1.7;
    vp = ValidatedParams::validate(raw);
    CHECK(vp.window_ok());  // 1.5 < 1.7 < 2

    // q below 1 enters through sigma_pq; v = inf drops the 1/v terms.
    raw = SmoothnessParams{};
    raw.s = 1.2;
    raw.u = 2.0;
    raw.p = 2.0;
    raw.q = Exponent::finite(0.5);
    raw.v = Exponent::infinity();
    raw.order = 2;
    raw.dim = 2;
    vp = ValidatedParams::validate(raw);
    // max{0, 1/p-1, 1/q-1, 1/p-1/v, 1/q-1/v} = max{0,-1/2,1,1/2,2} = 2, times d.
    CHECK(vp.lower_window() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(vp.sigma_pq() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(vp.tau() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("corpus specs parse and reject garbage") {
    CHECK(corpus_name(parse_corpus_spec("poly:1,0,2")) == "poly:1,0,2");
    CHECK(corpus_name(parse_corpus_spec("trig:3")) == "trig:3");
    CHECK(corpus_name(parse_corpus_spec("cusp:0.5:0.25")) == "cusp:0.5:0.25,0.25");
    CHECK(corpus_name(parse_corpus_spec("weier:0.5:2:8")) == "weier:0.5:2:8");
    CHECK(corpus_name(parse_corpus_spec("indicator:0.25:0.75")) ==
          "indicator:0.25,0.25:0.75,0.75");
    CHECK(corpus_name(parse_corpus_spec("random:7:4")) == "random:7:4");
    CHECK_THROWS_AS(parse_corpus_spec("unknown:1"), ParamError);
    CHECK_THROWS_AS(parse_corpus_spec(""), ParamError);
    CHECK_THROWS_AS(parse_corpus_spec("poly:"), ParamError);
    CHECK_THROWS_AS(parse_corpus_spec("trig:x"), ParamError);
}

TEST_CASE("corpus samples match their defining formulas") {
    Grid g = Grid::make(1, 64, {0.0, 0.0}, 1.0, true);

    SampledFunction poly = sample(parse_corpus_spec("poly:1,-2,3"), g);
    for (std::size_t i = 0; i < 64; i += 13) {
        double x = g.coords(i)[0];
        CHECK(poly.re()[i] == doctest::Approx(1.0 - 2.0 * x + 3.0 * x * x).epsilon(1e-14));
    }

    SampledFunction trig = sample(parse_corpus_spec("trig:2"), g);
    for (std::size_t i = 0; i < 64; i += 7) {
        double x = g.coords(i)[0];
        CHECK(trig.re()[i] ==
              doctest::Approx(std::cos(4.0 * std::numbers::pi * x)).epsilon(1e-14));
    }

    SampledFunction ind = sample(parse_corpus_spec("indicator:0.25:0.75"), g);
    CHECK(ind.re()[16] == 1.0);  // x = 0.25 inside the half-open box
    CHECK(ind.re()[47] == 1.0);  // x < 0.75
    CHECK(ind.re()[48] == 0.0);  // x = 0.75 outside
    CHECK(ind.re()[0] == 0.0);

    // Cusp on the torus uses the periodic surrogate distance, so the sample
    // is seam-free: values at mirror nodes around the cusp agree.
    SampledFunction cusp = sample(parse_corpus_spec("cusp:0.5:0.5"), g);
    CHECK(cusp.re()[31] == doctest::Approx(cusp.re()[33]).epsilon(1e-12));
    CHECK(cusp.re()[0] == doctest::Approx(cusp.re()[0]).epsilon(1e-12));
    CHECK(cusp.re()[32] == doctest::Approx(0.0).epsilon(1e-12));

    SampledFunction w = sample(parse_corpus_spec("weier:0.5:2:3"), g);
    for (std::size_t i = 0; i < 64; i += 17) {
        double x = g.coords(i)[0];
        double expect = 0.0;
        for (int j = 0; j < 3; ++j)
            expect += std::pow(0.5, j) *
                      std::cos(2.0 * std::numbers::pi * std::pow(2.0, j) * x);
        CHECK(w.re()[i] == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("random corpus draws are seeded and deterministic") {
    Grid g = Grid::make(1, 64, {0.0, 0.0}, 1.0, true);
    SampledFunction a = sample(parse_corpus_spec("random:7:4"), g);
    SampledFunction b = sample(parse_corpus_spec("random:7:4"), g);
    SampledFunction c = sample(parse_corpus_spec("random:8:4"), g);
    bool same = true;
    bool different = false;
    for (std::size_t i = 0; i < 64; ++i) {
        same = same && a.re()[i] == b.re()[i];
        different = different || a.re()[i] != c.re()[i];
    }
    CHECK(same);
    CHECK(different);

    // The draw is a fixed trigonometric polynomial of the coordinates, so a
    // finer grid samples the same underlying function.
    Grid g2 = Grid::make(1, 128, {0.0, 0.0}, 1.0, true);
    SampledFunction fine = sample(parse_corpus_spec("random:7:4"), g2);
    for (std::size_t i = 0; i < 64; ++i)
        CHECK(fine.re()[2 * i] == doctest::Approx(a.re()[i]).epsilon(1e-12));
}

TEST_CASE("config files parse key-value lines with comments") {
    Config cfg = Config::parse("# comment\nfuncs = trig:1 trig:2\n\nn = 64\nflag = true\n");
    CHECK(cfg.has("funcs"));
    CHECK(cfg.get_list("funcs") == std::vector<std::string>{"trig:1", "trig:2"});
    CHECK(cfg.get_int("n") == 64);
    CHECK(cfg.get_bool("flag"));
    CHECK(cfg.get_string_or("missing", "fallback") == "fallback");
    CHECK_THROWS_AS(cfg.get_string("missing"), ParamError);
    CHECK_THROWS_AS(cfg.get_int("funcs"), ParamError);

    CHECK_THROWS_AS(Config::parse("a = 1\na = 2\n"), ParamError);
    CHECK_THROWS_AS(Config::parse("novalue\n"), ParamError);
    CHECK_THROWS_AS(Config::parse_file("/nonexistent/path.cfg"), IoError);

    CHECK_NOTHROW(cfg.require_known({"funcs", "n", "flag"}));
    CHECK_THROWS_AS(cfg.require_known({"funcs", "n"}), ParamError);
}

TEST_CASE("shortest double formatting parses back exactly") {
    for (double x : {0.1, 1.0 / 3.0, 2.0, 1e-300, 6.02e23, -0.75, 0.0}) {
        std::string text = shortest_double(x);
        CHECK(std::strtod(text.c_str(), nullptr) == x);
    }
    CHECK(shortest_double(2.0) == "2");
    CHECK(shortest_double(0.5) == "0.5");
}
