#include "orbistar/weyl.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace orbistar;

namespace {

// every term must carry hbar; divide it out
YPoly div_h(const YPoly& f) {
    YPoly r;
    for (const auto& [k, c] : f.terms) {
        for (const auto& [pk, v] : c.terms) REQUIRE(pk.first >= 1);
        ParamPoly shifted;
        for (const auto& [pk, v] : c.terms) shifted.terms[{pk.first - 1, pk.second}] = v;
        r.add_term(k.first, k.second, shifted);
    }
    return r;
}

YPoly comm(const YPoly& a, const YPoly& b) { return moyal_star(a, b) - moyal_star(b, a); }

}  // namespace

TEST_CASE("epsilon convention") {
    const auto& c = epsilon_convention();
    CHECK(c.lower(1, 2) == 1);
    CHECK(c.lower(2, 1) == -1);
    CHECK(c.lower(1, 1) == 0);
    CHECK(c.upper(1, 2) == 1);
    CHECK(c.contraction_sign == -1);
    CHECK_THROWS_AS(c.lower(0, 1), std::out_of_range);
}

TEST_CASE("single contraction terms") {
    auto terms = cross_power_terms(1, {1, 0}, {0, 1});
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].left == std::pair{0, 0});
    CHECK(terms[0].right == std::pair{0, 0});
    CHECK(terms[0].factor == -1);

    // P^2 on y1y2 x y1y2: only the mixed d1d2 x d2d1 channel survives
    auto t2 = cross_power_terms(2, {1, 1}, {1, 1});
    REQUIRE(t2.size() == 1);
    CHECK(t2[0].left == std::pair{0, 0});
    CHECK(t2[0].factor == -2);  // binomial(2,1) with sign (-1)^k
}

TEST_CASE("moyal product basics") {
    YPoly y1 = YPoly::y1(), y2 = YPoly::y2();
    ParamPoly h = ParamPoly::hbar();

    CHECK(moyal_star(y1, y2) == YPoly::monomial(1, 1) - YPoly(h));
    CHECK(moyal_star(y2, y1) == YPoly::monomial(1, 1) + YPoly(h));
    CHECK(comm(y1, y2) == YPoly(h.scaled(-2)));
    CHECK(moyal_star(y1, y1) == YPoly::monomial(2, 0));
    CHECK(moyal_star(YPoly(3), y2) == y2.scaled(Scalar(3)));
}

TEST_CASE("moyal associativity on low-degree triples") {
    std::vector<YPoly> basis;
    for (int d = 0; d <= 3; ++d)
        for (int a = 0; a <= d; ++a) basis.push_back(YPoly::monomial(a, d - a));
    for (const auto& a : basis)
        for (const auto& b : basis)
            for (const auto& c : basis)
                CHECK(moyal_star(moyal_star(a, b), c) == moyal_star(a, moyal_star(b, c)));
}

TEST_CASE("quadratics close into sp2") {
    // (1/h) [t_ab, t_cd] = eps_bc t_ad + eps_ac t_bd + eps_bd t_ac + eps_ad t_bc
    const auto& eps = epsilon_convention();
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
            for (int c = 1; c <= 2; ++c)
                for (int d = 1; d <= 2; ++d) {
                    YPoly lhs = div_h(comm(sp2_bilinear(a, b), sp2_bilinear(c, d)));
                    YPoly rhs = sp2_bilinear(a, d).scaled(Scalar(eps.lower(b, c))) +
                                sp2_bilinear(b, d).scaled(Scalar(eps.lower(a, c))) +
                                sp2_bilinear(a, c).scaled(Scalar(eps.lower(b, d))) +
                                sp2_bilinear(b, c).scaled(Scalar(eps.lower(a, d)));
                    CHECK(lhs == rhs);
                }
}

TEST_CASE("index raising") {
    CHECK(raised_y(1) == YPoly::y2());
    CHECK(raised_y(2) == -YPoly::y1());
}

TEST_CASE("crossed product with the reflection") {
    OrbifoldElement y1(YPoly::y1());
    OrbifoldElement r = OrbifoldElement::reflection();
    CHECK(crossed_star(r, r) == OrbifoldElement(YPoly(1)));
    CHECK(crossed_star(r, crossed_star(y1, r)) == -y1);

    OrbifoldElement y1r(YPoly(), YPoly::y1());
    CHECK(crossed_star(y1r, y1r) == OrbifoldElement(-YPoly::monomial(2, 0)));

    // componentwise: (f + g R) * (p + q R) keeps the Moyal block structure
    OrbifoldElement mixed(YPoly::y1(), YPoly::y2());
    OrbifoldElement out = crossed_star(mixed, mixed);
    CHECK(out.part0 == moyal_star(YPoly::y1(), YPoly::y1()) +
                           moyal_star(YPoly::y2(), twist(YPoly::y2())));
    CHECK(out.part1 == moyal_star(YPoly::y1(), YPoly::y2()) +
                           moyal_star(YPoly::y2(), twist(YPoly::y1())));
}
