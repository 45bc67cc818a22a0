#include <doctest.h>

#include "support.hpp"

#include <random>

using namespace ghk;

namespace {

Wall line(const Point& base, const LatticeVec& dir, const Rat& c, unsigned family) {
    Wall w;
    w.base = base;
    w.direction = dir;
    w.kind = WallKind::Line;
    w.fn = LaurentPoly::constant(1);
    w.fn.add_term(dir, 1, c);
    w.family = family;
    return w;
}

LaurentPoly mono(const LatticeVec& n) { return LaurentPoly::monomial(n, 1, 0); }

// fn is 1 plus positive powers of z^direction with positive valuation
bool well_formed(const Wall& w) {
    bool unit = false;
    for (const auto& [n, s] : w.fn.terms()) {
        if (n.is_zero()) {
            unit = s == TExponentSeries::one();
            continue;
        }
        if (wedge(n, w.direction) != 0) return false;
        if (n.a * w.direction.a + n.b * w.direction.b <= 0) return false;
        if (s.valuation() <= 0) return false;
    }
    return unit;
}

}  // namespace

TEST_CASE("initial walls") {
    auto p2 = make_model("P2");
    CHECK(initial_walls(p2, default_omega("P2"), ratio(1, 16)).walls.empty());

    auto bl = make_model("BlpP2");
    auto d = initial_walls(bl, default_omega("BlpP2"), ratio(1, 16));
    REQUIRE(d.walls.size() == 1);
    CHECK(d.walls[0].direction == LatticeVec{1, 0});
    CHECK(d.walls[0].kind == WallKind::Line);
    LaurentPoly want = LaurentPoly::constant(1);
    want.add_term({1, 0}, 1, ratio(1, 3));
    CHECK(d.walls[0].fn == want);
    // to the right of R>=0 n_1, i.e. below the x-axis
    CHECK(d.walls[0].base.y < 0);

    auto dp3 = make_model("dP3");
    auto w3 = default_omega("dP3");
    auto d3 = initial_walls(dp3, w3, ratio(1, 16));
    CHECK(d3.walls.size() == 6);
    // the larger c sits closer to the origin
    for (int i = 0; i < 3; ++i) {
        std::vector<const Wall*> on;
        for (const auto& wl : d3.walls)
            if (wl.ray_index == i) on.push_back(&wl);
        REQUIRE(on.size() == 2);
        auto dist = [&](const Wall* x) { return rwedge(as_point(dp3.ray(i)), x->base); };
        auto cval = [&](const Wall* x) { return x->fn.coeff(dp3.ray(i)).valuation(); };
        if (abs(dist(on[0])) > abs(dist(on[1]))) std::swap(on[0], on[1]);
        CHECK(cval(on[0]) > cval(on[1]));
    }
    CHECK(d3.theta == default_theta(dp3, w3));
}

TEST_CASE("default truncation order") {
    CHECK(default_theta(make_model("P2"), default_omega("P2")) == 4);
    CHECK(default_theta(make_model("BlpP2"), default_omega("BlpP2")) == Rat(4) + ratio(1, 3));
}

TEST_CASE("cross examples") {
    Rat c = ratio(1, 3), theta = 4;
    Wall w = line({0, 0}, {1, 0}, c, 1);
    CHECK(cross({1, 0}, 1, 0, w, {0, -1}, theta) == mono({1, 0}));

    LaurentPoly up = cross({0, 1}, 1, 0, w, {0, -1}, theta);
    LaurentPoly f = laurent_pow(w.fn, 1, theta), finv = laurent_pow(w.fn, -1, theta);
    bool plus = up == mono({0, 1}) * f, minus = up == mono({0, 1}) * finv;
    CHECK((plus || minus));

    LaurentPoly down = cross({0, -1}, 1, 0, w, {0, 1}, theta);
    CHECK((down == mono({0, -1}) * f || down == mono({0, -1}) * finv));
    CHECK(cross_poly(down, w, {0, -1}, theta) == mono({0, -1}));
    CHECK_THROWS(cross({0, 1}, 1, 0, w, {1, 0}, theta));
}

TEST_CASE("crossing back is the identity") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> d(-4, 4), v(1, 8);
    int done = 0;
    while (done < 1000) {
        LatticeVec dir{d(rng), d(rng)};
        if (dir.is_zero() || lattice_gcd(dir) != 1) continue;
        LatticeVec travel{d(rng), d(rng)};
        if (wedge(dir, travel) == 0) continue;
        LatticeVec q{d(rng), d(rng)};
        Rat theta = ratio(v(rng) + 4, 2);
        Wall w = line({0, 0}, dir, ratio(v(rng), 4), 1);
        w.fn.add_term(dir * 2, -1, ratio(v(rng) + 8, 4));
        LaurentPoly there = cross(q, 1, 0, w, travel, theta);
        LaurentPoly back = cross_poly(there, w, -travel, theta);
        LaurentPoly want(theta);
        want.add_term(q, 1, 0);
        back.set_theta(theta);
        CHECK(back == want);
        ++done;
    }
}

TEST_CASE("path products of small diagrams") {
    ScatteringDiagram empty;
    empty.theta = 3;
    CHECK(path_product(empty, {}, mono({1, 0})) == mono({1, 0}));

    ScatteringDiagram one;
    one.theta = 3;
    one.walls.push_back(line({0, 0}, {1, 0}, ratio(1, 2), 1));
    auto loop1 = loop_around(one, {5, 0});
    CHECK(loop1.size() == 2);
    CHECK(path_product(one, loop1, mono({0, 1})) == mono({0, 1}));

    Rat c1 = ratio(1, 3), c2 = ratio(1, 2);
    ScatteringDiagram two;
    two.theta = c1 + c2;
    two.walls.push_back(line({0, 0}, {1, 0}, c1, 1));
    two.walls.push_back(line({0, 0}, {0, 1}, c2, 2));
    CHECK(is_singular_point(two, {0, 0}));
    auto loop2 = loop_around(two, {0, 0});
    CHECK(loop2.size() == 4);
    LaurentPoly defect = path_product(two, loop2, mono({1, 0})) - mono({1, 0});
    REQUIRE_FALSE(defect.is_zero());
    CHECK(*defect.valuation() == c1 + c2);
    CHECK(check_consistency(two).failures == 1);
}

TEST_CASE("two lines complete to one ray") {
    Rat c1 = ratio(1, 3), c2 = ratio(1, 2);
    ScatteringDiagram two;
    two.theta = c1 + c2;
    two.walls.push_back(line({0, 0}, {1, 0}, c1, 1));
    two.walls.push_back(line({0, 0}, {0, 1}, c2, 2));
    CompletionStats st;
    auto d = complete(two, two.theta, &st);
    REQUIRE(d.walls.size() == 3);
    CHECK(st.rays_added == 1);
    const Wall& r = d.walls[2];
    CHECK(r.kind == WallKind::Ray);
    CHECK(r.direction == LatticeVec{1, 1});
    CHECK(r.family == 3u);
    LaurentPoly want = LaurentPoly::constant(1);
    want.add_term({1, 1}, 1, c1 + c2);
    CHECK(r.fn == want);
    CHECK(check_consistency(d).ok());
}

TEST_CASE("empty diagram completes to itself") {
    auto p2 = make_model("P2");
    auto d0 = initial_walls(p2, default_omega("P2"), ratio(1, 16));
    auto d = complete(d0, d0.theta);
    CHECK(d.walls.empty());
    CHECK(check_consistency(d).ok());
}

TEST_CASE("completed presets are consistent") {
    for (const char* name : {"BlpP2", "dP5", "dP3"}) {
        CAPTURE(name);
        const auto& P = testing::preset(name);
        auto rep = check_consistency(P.diagram);
        // BlpP2 has a single wall and no intersection points
        CHECK((rep.points > 0 || P.diagram.walls.size() == 1));
        CHECK(rep.ok());
        for (const auto& w : P.diagram.walls) {
            CHECK(well_formed(w));
            CHECK(w.min_valuation() <= P.diagram.theta);
        }
    }
}

TEST_CASE("dP3 rays from two neighbouring families have the three GPS shapes") {
    const auto& P = testing::preset("dP3");
    bool low = false, mid = false, high = false;
    for (const auto& w : P.diagram.walls) {
        if (w.kind != WallKind::Ray || w.family != 3u) continue;
        const auto& v = w.direction;
        bool a = v.a >= 1 && v.b == v.a + 1;
        bool b = v.a == 1 && v.b == 1;
        bool c = v.b >= 1 && v.a == v.b + 1;
        CHECK((a || b || c));
        low |= a;
        mid |= b;
        high |= c;
        // leading term 1 + t^c z^v, as in the three GPS families
        CHECK_FALSE(w.fn.coeff(v).is_zero());
    }
    CHECK(low);
    CHECK(mid);
    CHECK(high);
}

TEST_CASE("completion is deterministic") {
    auto m = make_model("dP5");
    auto w = default_omega("dP5");
    Rat h = default_spacing(m, w);
    auto d0 = initial_walls(m, w, h);
    auto a = complete(d0, d0.theta), b = complete(d0, d0.theta);
    REQUIRE(a.walls.size() == b.walls.size());
    for (std::size_t k = 0; k < a.walls.size(); ++k) {
        CHECK(a.walls[k].base == b.walls[k].base);
        CHECK(a.walls[k].direction == b.walls[k].direction);
        CHECK(a.walls[k].fn == b.walls[k].fn);
    }
}
