#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "smnorm/errors.hpp"
#include "smnorm/geometry.hpp"
#include "smnorm/grid.hpp"

using namespace smnorm;

TEST_CASE("domain text forms parse and name round-trips") {
    CHECK(std::holds_alternative<FullTorus>(parse_domain("torus")));
    CHECK(domain_name(parse_domain("torus")) == "torus");

    auto iv = parse_domain("interval:0:1");
    REQUIRE(std::holds_alternative<Interval>(iv));
    CHECK(std::get<Interval>(iv).a == 0.0);
    CHECK(std::get<Interval>(iv).b == 1.0);
    CHECK(domain_name(iv) == "interval:0:1");

    auto poly = parse_domain("polytope:0,0;1,0;0.5,1");
    REQUIRE(std::holds_alternative<ConvexPolytope>(poly));
    CHECK(std::get<ConvexPolytope>(poly).vertices.size() == 3);

    auto graph = parse_domain("graph:vee:0.3:0.5");
    REQUIRE(std::holds_alternative<SpecialLipschitz>(graph));
    CHECK(std::get<SpecialLipschitz>(graph).graph == SpecialLipschitz::Graph::vee);
    CHECK(std::get<SpecialLipschitz>(graph).level == 0.3);
    CHECK(std::get<SpecialLipschitz>(graph).scale == 0.5);

    CHECK_THROWS_AS(parse_domain("sphere"), ParamError);
    CHECK_THROWS_AS(parse_domain("interval:1:0"), ParamError);
    CHECK_THROWS_AS(parse_domain(""), ParamError);
}

TEST_CASE("polytope construction rejects degenerate input") {
    CHECK_NOTHROW(make_polytope({{0, 0}, {1, 0}, {0.5, 1}}));
    // Clockwise input is normalized, not rejected.
    ConvexPolytope cw = make_polytope({{0, 0}, {0.5, 1}, {1, 0}});
    CHECK(cw.vertices.size() == 3);
    CHECK_THROWS_AS(make_polytope({{0, 0}, {1, 0}}), GeometryError);
    // Collinear points give a zero-area polygon.
    CHECK_THROWS_AS(make_polytope({{0, 0}, {1, 0}, {2, 0}}), GeometryError);
    // Non-convex quadrilateral (reflex vertex).
    CHECK_THROWS_AS(make_polytope({{0, 0}, {1, 0}, {0.4, 0.4}, {0, 1}}), GeometryError);
}

TEST_CASE("membership is strict on the open sets") {
    Interval iv{0.25, 0.75};
    CHECK(member(iv, {0.5, 0.0}));
    CHECK(!member(iv, {0.25, 0.0}));
    CHECK(!member(iv, {0.75, 0.0}));
    CHECK(!member(iv, {0.9, 0.0}));
    CHECK(member(FullTorus{}, {123.0, -5.0}));

    ConvexPolytope tri = make_polytope({{0, 0}, {1, 0}, {0.5, 1}});
    CHECK(member(tri, {0.5, 0.3}));
    CHECK(!member(tri, {0.0, 0.0}));   // vertex
    CHECK(!member(tri, {0.5, 0.0}));   // edge
    CHECK(!member(tri, {0.5, 1.01}));

    SpecialLipschitz flat;
    flat.level = 0.5;
    CHECK(member(flat, {0.3, 0.6}));
    CHECK(!member(flat, {0.3, 0.5}));
    CHECK(!member(flat, {0.3, 0.4}));

    SpecialLipschitz vee;
    vee.graph = SpecialLipschitz::Graph::vee;
    vee.level = 0.25;
    vee.scale = 1.0;
    vee.shift = 0.5;
    CHECK(vee.height(0.5) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(vee.height(0.7) == doctest::Approx(0.45).epsilon(1e-14));
    CHECK(vee.lipschitz_bound() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(member(vee, {0.5, 0.3}));
    CHECK(!member(vee, {0.7, 0.4}));
}

TEST_CASE("domain and grid compatibility is enforced") {
    Grid torus1 = Grid::make(1, 16, {0.0, 0.0}, 1.0, true);
    Grid box1 = Grid::make(1, 16, {0.0, 0.0}, 1.0, false);
    Grid box2 = Grid::make(2, 16, {0.0, 0.0}, 1.0, false);

    CHECK_NOTHROW(ensure_compatible(FullTorus{}, torus1));
    CHECK_THROWS_AS(ensure_compatible(FullTorus{}, box1), GeometryError);
    CHECK_NOTHROW(ensure_compatible(Interval{0.0, 1.0}, box1));
    CHECK_THROWS_AS(ensure_compatible(Interval{0.0, 1.0}, torus1), GeometryError);
    CHECK_THROWS_AS(ensure_compatible(Interval{0.0, 1.0}, box2), GeometryError);
    ConvexPolytope tri = make_polytope({{0, 0}, {1, 0}, {0.5, 1}});
    CHECK_NOTHROW(ensure_compatible(tri, box2));
    CHECK_THROWS_AS(ensure_compatible(tri, box1), GeometryError);
}

TEST_CASE("domain masks match pointwise membership") {
    Grid g = Grid::make(2, 16, {0.0, 0.0}, 1.0, false);
    ConvexPolytope tri = make_polytope({{0.1, 0.1}, {0.9, 0.1}, {0.5, 0.9}});
    auto mask = domain_mask(tri, g);
    REQUIRE(mask.size() == g.node_count());
    std::size_t inside = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        CHECK(static_cast<bool>(mask[i]) == member(tri, g.coords(i)));
        inside += mask[i];
    }
    CHECK(inside > 0);
    CHECK(inside < g.node_count());

    Grid t = Grid::make(1, 16, {0.0, 0.0}, 1.0, true);
    auto full = domain_mask(FullTorus{}, t);
    CHECK(std::count(full.begin(), full.end(), 1) == 16);
}

TEST_CASE("ball offsets use canonical periodic representatives") {
    Grid t = Grid::make(1, 16, {0.0, 0.0}, 1.0, true);
    // Huge radius: every node once, offsets in (-n/2, n/2].
    auto offs = ball_offsets(t, 100.0);
    CHECK(offs.size() == 16);
    std::set<int> seen;
    for (auto o : offs) seen.insert(o[0]);
    CHECK(*seen.begin() == -7);
    CHECK(*seen.rbegin() == 8);

    // Strict inequality: radius = 3 h admits |o| <= 2 only.
    auto small = ball_offsets(t, 3.0 / 16.0);
    std::set<int> small_seen;
    for (auto o : small) small_seen.insert(o[0]);
    CHECK(*small_seen.begin() == -2);
    CHECK(*small_seen.rbegin() == 2);
    CHECK(small.size() == 5);

    Grid b = Grid::make(1, 16, {0.0, 0.0}, 1.0, false);
    auto wide = ball_offsets(b, 100.0);
    std::set<int> wide_seen;
    for (auto o : wide) wide_seen.insert(o[0]);
    CHECK(*wide_seen.begin() == -15);
    CHECK(*wide_seen.rbegin() == 15);

    Grid t2 = Grid::make(2, 16, {0.0, 0.0}, 1.0, true);
    auto disc = ball_offsets(t2, 2.5 / 16.0);
    // |o| < 2.5 in index units: all |o|^2 in {0,1,2,4,5} <= 6 -> 21 offsets.
    CHECK(disc.size() == 21);
    for (auto o : disc) CHECK(o[0] * o[0] + o[1] * o[1] < 2.5 * 2.5);
}

TEST_CASE("ball quadrature collects masked nodes with cell weights") {
    Grid g = Grid::make(1, 32, {0.0, 0.0}, 1.0, false);
    Interval iv{0.0, 1.0};
    // Center x = 0.5 (node 16), radius 0.1: nodes with |y - 0.5| < 0.1.
    auto q = ball_quadrature(g, iv, 16, 0.1);
    CHECK(q.weight == doctest::Approx(1.0 / 32).epsilon(1e-15));
    std::set<std::size_t> got(q.nodes.begin(), q.nodes.end());
    std::set<std::size_t> expect;
    for (std::size_t i = 0; i < 32; ++i) {
        double y = g.coords(i)[0];
        if (std::abs(y - 0.5) < 0.1 && member(iv, {y, 0.0})) expect.insert(i);
    }
    CHECK(got == expect);
    CHECK(got.count(16) == 1);

    // Near the boundary the ball is clipped by the mask.
    auto qb = ball_quadrature(g, Interval{0.4, 0.6}, 16, 0.5);
    for (auto nidx : qb.nodes) {
        CHECK(member(Interval{0.4, 0.6}, g.coords(nidx)));
    }

    // Periodic metric: ball around node 0 wraps.
    Grid t = Grid::make(1, 32, {0.0, 0.0}, 1.0, true);
    auto qt = ball_quadrature(t, FullTorus{}, 0, 0.1);
    std::set<std::size_t> tgot(qt.nodes.begin(), qt.nodes.end());
    CHECK(tgot.count(31) == 1);
    CHECK(tgot.count(1) == 1);
    CHECK(tgot.count(16) == 0);
}

TEST_CASE("admissible steps keep the whole difference chain inside") {
    Grid g = Grid::make(1, 32, {0.0, 0.0}, 1.0, false);
    Interval iv{0.0, 1.0};
    int order = 2;
    // Center node 28 (x = 0.875): step h must satisfy x + 2h inside (0,1).
    auto st = admissible_steps(g, iv, 28, 0.5, order);
    CHECK(st.weight == doctest::Approx(1.0 / 32).epsilon(1e-15));
    for (auto o : st.offsets) {
        for (int l = 0; l <= order; ++l) {
            double y = g.coords(28)[0] + l * o[0] * g.spacing();
            CHECK(member(iv, {y, 0.0}));
        }
        CHECK(std::abs(o[0]) * g.spacing() < 0.5);
    }
    // Positive steps cannot exceed (1 - 0.875)/2 = 0.0625 = 2 cells.
    int max_pos = 0;
    for (auto o : st.offsets) max_pos = std::max(max_pos, o[0]);
    CHECK(max_pos == 1);  // 2 cells would land exactly on the boundary

    // On the torus every step below the radius is admissible.
    Grid t = Grid::make(1, 32, {0.0, 0.0}, 1.0, true);
    auto stt = admissible_steps(t, FullTorus{}, 5, 3.0 / 32.0, 3);
    CHECK(stt.offsets.size() == 5);  // offsets -2..2 including 0
}

TEST_CASE("diameter and volume match closed forms") {
    Grid g1 = Grid::make(1, 64, {0.0, 0.0}, 1.0, false);
    CHECK(domain_diameter(Interval{0.2, 0.9}, g1) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(domain_volume(Interval{0.0, 1.0}, g1) ==
          doctest::Approx(1.0).epsilon(0.05));

    Grid g2 = Grid::make(2, 64, {0.0, 0.0}, 1.0, false);
    ConvexPolytope sq = make_polytope({{0.1, 0.1}, {0.9, 0.1}, {0.9, 0.9}, {0.1, 0.9}});
    CHECK(domain_diameter(sq, g2) ==
          doctest::Approx(0.8 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(domain_volume(sq, g2) == doctest::Approx(0.64).epsilon(0.07));

    Grid t = Grid::make(1, 64, {0.0, 0.0}, 1.0, true);
    CHECK(domain_volume(FullTorus{}, t) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(domain_diameter(FullTorus{}, t), GeometryError);
}

TEST_CASE("ball maps agree with direct per-node reduction") {
    Grid t = Grid::make(1, 32, {0.0, 0.0}, 1.0, true);
    // The sum map is contracted for non-negative data (it clamps rounding
    // noise at zero), so keep the samples positive.
    std::vector<double> a(32);
    for (std::size_t i = 0; i < 32; ++i) a[i] = std::sin(0.3 * static_cast<double>(i)) + 1.1;
    double radius = 0.13;

    auto sums = ball_sum_map(t, a, radius);
    auto maxs = ball_max_map(t, a, radius);
    auto offs = ball_offsets(t, radius);
    for (std::size_t x = 0; x < 32; ++x) {
        double s = 0.0;
        double m = -std::numeric_limits<double>::infinity();
        for (auto o : offs) {
            std::size_t y = 0;
            REQUIRE(t.shift(x, o, y));
            s += a[y];
            m = std::max(m, a[y]);
        }
        CHECK(sums[x] == doctest::Approx(s).epsilon(1e-13));
        CHECK(maxs[x] == doctest::Approx(m).epsilon(1e-13));
    }

    // Non-periodic edition clips at the edges.
    Grid b = Grid::make(1, 32, {0.0, 0.0}, 1.0, false);
    auto bs = ball_sum_map(b, a, radius);
    double edge = 0.0;
    for (int o = -4; o <= 4; ++o) {
        if (o >= 0) edge += a[static_cast<std::size_t>(o)];
    }
    CHECK(bs[0] == doctest::Approx(edge).epsilon(1e-13));
}
