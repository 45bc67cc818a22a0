#include <doctest.h>

#include "support.hpp"

using namespace ghk;

namespace {

// D'_i . D'_j on the toric surface: s_i on the diagonal, 1 for neighbours
Rat toric_pairing(const ToricModel& m, int i, int j) {
    if (m.idx(i) == m.idx(j)) return Rat(m.self_int[static_cast<std::size_t>(m.idx(i))]);
    if (m.idx(i + 1) == m.idx(j) || m.idx(i - 1) == m.idx(j)) return 1;
    return 0;
}

}  // namespace

TEST_CASE("presets") {
    auto p2 = make_model("P2");
    CHECK(p2.rays == std::vector<LatticeVec>{{1, 0}, {0, 1}, {-1, -1}});
    CHECK(p2.blowups == std::vector<int>{0, 0, 0});
    CHECK(make_model("BlpP2").blowups == std::vector<int>{1, 0, 0});
    auto dp3 = make_model("dP3");
    CHECK(dp3.rays == p2.rays);
    CHECK(dp3.blowups == std::vector<int>{2, 2, 2});
    CHECK_THROWS(make_model("P3"));
    for (const auto& name : preset_names()) {
        auto m = make_model(name);
        CHECK_NOTHROW(check_model(m));
        for (int i = 0; i < m.n(); ++i) {
            CHECK(wedge(m.ray(i), m.ray(i + 1)) == 1);
            CHECK((m.ray(i - 1) + m.ray(i + 1) + m.ray(i) * m.self_int[static_cast<std::size_t>(i)]).is_zero());
        }
    }
}

TEST_CASE("intersection examples") {
    auto bl = make_model("BlpP2");
    auto E = DivisorClass::exceptional(bl, 0, 0);
    CHECK(intersect(bl, E, E) == -1);
    auto p2 = make_model("P2");
    auto D1 = DivisorClass::total(p2, 0);
    CHECK(intersect(p2, D1, D1) == 1);
    auto D1p = DivisorClass::proper(bl, 0);
    CHECK(D1p == DivisorClass::total(bl, 0) - E);
    CHECK(intersect(bl, D1p, D1p) == 0);
}

TEST_CASE("chern examples and Noether") {
    auto c = [](const std::string& n) {
        auto m = make_model(n);
        auto ch = chern(m);
        return std::make_pair(intersect(m, ch.c1, ch.c1), ch.c2);
    };
    CHECK(c("P2") == std::make_pair(Rat(9), std::int64_t{3}));
    CHECK(c("BlpP2") == std::make_pair(Rat(8), std::int64_t{4}));
    CHECK(c("dP3") == std::make_pair(Rat(3), std::int64_t{9}));
    for (const auto& n : preset_names()) {
        auto [deg, c2] = c(n);
        CHECK(deg + Rat(c2) == 12);
    }
}

TEST_CASE("pairing is symmetric and adjunction holds on the boundary") {
    for (const auto& n : preset_names()) {
        auto m = make_model(n);
        auto c1 = chern(m).c1;
        std::vector<DivisorClass> basis;
        for (int i = 0; i < m.n(); ++i) basis.push_back(DivisorClass::total(m, i));
        for (int i = 0; i < m.n(); ++i)
            for (int j = 0; j < m.blowups[static_cast<std::size_t>(i)]; ++j)
                basis.push_back(DivisorClass::exceptional(m, i, j));
        for (const auto& a : basis)
            for (const auto& b : basis) CHECK(intersect(m, a, b) == intersect(m, b, a));
        for (int i = 0; i < m.n(); ++i) {
            auto Di = DivisorClass::proper(m, i);
            CHECK(intersect(m, c1, Di) == 2 + intersect(m, Di, Di));
            CHECK(intersect(m, Di, DivisorClass::proper(m, i + 1)) == 1);
        }
    }
}

TEST_CASE("validate_omega examples") {
    auto p2 = make_model("P2");
    CHECK(validate_omega(p2, {{1, 1, 1}, {{}, {}, {}}}).ok());
    auto bl = make_model("BlpP2");
    auto bad = validate_omega(bl, {{1, 1, 1}, {{1}, {}, {}}});
    CHECK_FALSE(bad.ok());
    CHECK_FALSE(bad.c_in_range);
    CHECK(validate_omega(bl, {{1, 1, 1}, {{ratio(1, 3)}, {}, {}}}).ok());
    CHECK_THROWS_AS(require_valid(bl, {{1, 1, 1}, {{1}, {}, {}}}), std::invalid_argument);
    // repeated c on one ray
    auto dp3 = make_model("dP3");
    auto w = default_omega("dP3");
    w.c[0][1] = w.c[0][0];
    CHECK_FALSE(validate_omega(dp3, w).distinct_c);
    for (const auto& n : preset_names()) CHECK(validate_omega(make_model(n), default_omega(n)).ok());
}

TEST_CASE("fiber exponents") {
    auto bl = make_model("BlpP2");
    KahlerClass w{{ratio(5, 4), ratio(3, 2), ratio(7, 6)}, {{ratio(1, 3)}, {}, {}}};
    REQUIRE(validate_omega(bl, w).ok());
    CHECK(fiber_exponent(bl, w, DivisorClass::zero(bl)) == 0);
    CHECK(fiber_exponent(bl, w, DivisorClass::exceptional(bl, 0, 0)) == w.lambdas[0] - w.c[0][0]);
    // the pullback of a line is any D'_i
    CHECK(fiber_exponent(bl, w, DivisorClass::total(bl, 1)) == w.lambdas[0] + w.lambdas[1] + w.lambdas[2]);
}

TEST_CASE("kink examples") {
    auto p2 = make_model("P2");
    CHECK(pl_kinks(p2, DivisorClass::zero(p2)) == std::vector<Rat>{0, 0, 0});
    CHECK(pl_kinks(p2, DivisorClass::total(p2, 0)) == std::vector<Rat>{1, 1, 1});
    auto dp5 = make_model("dP5");
    auto k = pl_kinks(dp5, DivisorClass::total(dp5, 2));
    for (int i = 0; i < dp5.n(); ++i) CHECK(k[static_cast<std::size_t>(i)] == toric_pairing(dp5, i, 2));
    CHECK_THROWS(pl_kinks(make_model("BlpP2"), DivisorClass::exceptional(make_model("BlpP2"), 0, 0)));
}

TEST_CASE("random kinks close and equal the pairing") {
    std::mt19937 rng(21);
    for (const auto& n : preset_names()) {
        auto m = make_model(n);
        for (int rep = 0; rep < 100; ++rep) {
            auto L = testing::random_toric(m, rng);
            auto k = pl_kinks(m, L);
            Rat sx = 0, sy = 0;
            for (int i = 0; i < m.n(); ++i) {
                Rat want = 0;
                for (int j = 0; j < m.n(); ++j) want += L.a[static_cast<std::size_t>(j)] * toric_pairing(m, i, j);
                CHECK(k[static_cast<std::size_t>(i)] == want);
                MVec d = dual_of(m.ray(i));
                sx += k[static_cast<std::size_t>(i)] * Rat(d.a);
                sy += k[static_cast<std::size_t>(i)] * Rat(d.b);
            }
            CHECK(sx == 0);
            CHECK(sy == 0);
        }
    }
}

TEST_CASE("exceptional classes of the presets") {
    CHECK(exceptional_classes(make_model("P2")).empty());
    CHECK(exceptional_classes(make_model("BlpP2")).size() == 1);
    // a cubic surface carries 27 lines
    CHECK(exceptional_classes(make_model("dP3")).size() == 27);
    CHECK(exceptional_classes(make_model("dP5")).size() == 10);
}

TEST_CASE("random omegas are valid") {
    std::mt19937 rng(22);
    for (const auto& n : preset_names()) {
        auto m = make_model(n);
        for (int k = 0; k < 5; ++k) CHECK(validate_omega(m, testing::random_omega(m, rng)).ok());
    }
}
