#include "orbistar/deformation.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace orbistar;

namespace {

OrbifoldElement at_u_zero(const OrbifoldElement& e) {
    Scalar zero = 0;
    return {e.part0.substitute_params(nullptr, &zero),
            e.part1.substitute_params(nullptr, &zero)};
}

OrbifoldElement random_graded(std::mt19937& rng, int max_degree) {
    std::uniform_int_distribution<int> d(0, max_degree), s(0, 1), c(-3, 3);
    int a = d(rng);
    std::uniform_int_distribution<int> split(0, a);
    int a1 = split(rng);
    YPoly m = YPoly::monomial(a1, a - a1, ParamPoly(c(rng)));
    return s(rng) ? OrbifoldElement(YPoly(), m) : OrbifoldElement(m);
}

}  // namespace

TEST_CASE("first-order kernel coefficients") {
    const auto& k = build_phi_kernel(1, PhiParameterization::UV);
    auto u = IntegrandPoly::variable(2, 0);
    auto v = IntegrandPoly::variable(2, 1);
    auto one = IntegrandPoly::constant(2, Scalar(1));
    CHECK(k.exponent.at({0, 1}) == one - (u * v).scaled(Scalar(2)));
    CHECK(k.exponent.at({0, 2}) == one - v.scaled(Scalar(2)));
    CHECK(k.exponent.at({1, 2}) ==
          (one - v.scaled(Scalar(2)) + (u * v).scaled(Scalar(2))).scaled(ParamPoly::hbar()));
    CHECK(k.overall == v.scaled(Scalar(4)));
    CHECK(k.prefactor == std::map<SlotPair, int>{{{1, 2}, 1}});
    CHECK(k.domain == CellDomain{1, 1});
}

TEST_CASE("homotopy coefficient recurrence reproduces the closed forms") {
    const int n = 5;
    auto seq = hpt_omega_recurrence(n);
    REQUIRE(static_cast<int>(seq.size()) == n);
    for (int i = 1; i <= n; ++i) CHECK(seq[i - 1] == hpt_omega_closed_form(i, n));
    CHECK_THROWS_AS(hpt_omega_recurrence(0), std::invalid_argument);
}

TEST_CASE("first deformation map on generators") {
    YPoly y1 = YPoly::y1(), y2 = YPoly::y2();
    CHECK(phi(1, y1, y2) == YPoly(Scalar(-1)));
    CHECK(phi(1, y2, y1) == YPoly(Scalar(1)));
    const auto& eps = epsilon_convention();
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
            YPoly ya = YPoly::monomial(a == 1, a == 2), yb = YPoly::monomial(b == 1, b == 2);
            CHECK(phi(1, ya, yb) - phi(1, yb, ya) == YPoly(Scalar(-2 * eps.lower(a, b))));
        }
    CHECK(phi(2, y1, y1 * y2).is_zero());  // n exceeds deg of the first slot
    CHECK(phi(1, YPoly(1), y1 * y2).is_zero());
    CHECK_THROWS_AS(phi(0, y1, y2), std::invalid_argument);
}

TEST_CASE("three kernel parameterizations agree") {
    std::vector<std::pair<int, int>> monos{{1, 0}, {0, 1}, {1, 1}, {2, 0}, {2, 1}, {0, 3}};
    for (int n = 1; n <= 2; ++n)
        for (auto a : monos)
            for (auto b : monos) {
                YPoly f = YPoly::monomial(a.first, a.second);
                YPoly g = YPoly::monomial(b.first, b.second);
                YPoly base = phi(n, f, g);
                CHECK(phi_with_parameterization(n, f, g, PhiParameterization::W) == base);
                CHECK(phi_via_hpt(n, f, g) == base);
            }
}

TEST_CASE("quoted second-order integrand is a fourth route") {
    const auto& quoted = phi2_explicit_kernel();
    std::vector<std::pair<int, int>> monos{{2, 0}, {1, 1}, {0, 2}, {2, 1}, {1, 2}, {3, 0}};
    for (auto a : monos)
        for (auto b : monos) {
            YPoly f = YPoly::monomial(a.first, a.second);
            YPoly g = YPoly::monomial(b.first, b.second);
            CHECK(kernel_integrate(quoted, {f, g}).scaled(spow(phi_calibration(), 2)) ==
                  phi(2, f, g));
        }
}

TEST_CASE("deformed commutator of the generators") {
    OrbifoldElement y1(YPoly::y1()), y2(YPoly::y2());
    OrbifoldElement comm = circle_product(y1, y2) - circle_product(y2, y1);
    OrbifoldElement expect(YPoly(ParamPoly::hbar().scaled(-2)),
                           YPoly(ParamPoly::u().scaled(-2)));
    CHECK(comm == expect);
    CHECK(circle_product(y1, y1) == OrbifoldElement(moyal_star(YPoly::y1(), YPoly::y1())));
}

TEST_CASE("series base case and conjugation covariance") {
    std::mt19937 rng(11);
    OrbifoldElement r = OrbifoldElement::reflection();
    auto conj = [&r](const OrbifoldElement& x) {
        return circle_product(circle_product(r, x), r);
    };
    for (int trial = 0; trial < 40; ++trial) {
        OrbifoldElement a = random_graded(rng, 4), b = random_graded(rng, 4);
        CHECK(at_u_zero(circle_product(a, b)) == crossed_star(at_u_zero(a), at_u_zero(b)));
        CHECK(conj(circle_product(a, b)) == circle_product(conj(a), conj(b)));
    }
}

TEST_CASE("difference-quotient product") {
    DunklElement w(YPoly::y1()), wb(YPoly::y2());
    DunklElement one(YPoly(1));
    YPoly wwb = YPoly::monomial(1, 1);

    CHECK(dunkl_product(one, wb) == wb);
    DunklElement fwd = dunkl_product(w, wb);
    CHECK(fwd.part0 == wwb);
    CHECK(fwd.part1 == YPoly(ParamPoly::u().scaled(Scalar(1) / 2)));
    DunklElement bwd = dunkl_product(wb, w);
    CHECK(bwd.part0 == wwb);
    CHECK(bwd.part1.is_zero());

    // even x even: both difference quotients vanish
    DunklElement even(YPoly::monomial(2, 0) + YPoly::monomial(0, 2));
    CHECK(dunkl_product(even, even).part1.is_zero());
}

TEST_CASE("generating function of the first map") {
    auto table = phi1_generating_table(3);
    series3::Series expect{
        {{0, 0, 1}, 2},           {{0, 0, 2}, Scalar(2) / 3}, {{0, 0, 3}, Scalar(1) / 3},
        {{0, 1, 1}, Scalar(-2) / 3}, {{0, 2, 1}, Scalar(1) / 3}, {{1, 0, 1}, Scalar(2) / 3},
        {{2, 0, 1}, Scalar(1) / 3}};
    CHECK(table == expect);

    // integral side: coefficient of x^i y^j z^{m+1} carries hbar^m
    for (const auto& [k, v] : table) {
        REQUIRE(k[2] >= 1);
        ParamPoly amp = phi1_amplitude(k[0], k[1], k[2] - 1);
        CHECK(amp == ParamPoly::hbar(k[2] - 1).scaled(v));
    }
    // entries absent from the table integrate to zero
    CHECK(phi1_amplitude(1, 1, 0).is_zero());
    CHECK(phi1_amplitude(0, 0, 1).coefficient(1, 0) == Scalar(2) / 3);
}

TEST_CASE("commutative-limit generating function") {
    auto table = phi_commutative_cocycle_data(4);
    REQUIRE(!table.empty());
    for (const auto& [k, v] : table) CHECK(k[2] == 1);  // overall factor z, no a12 channel
    CHECK(table.at({0, 0, 1}) == 2);
    for (const auto& [k, v] : table)
        CHECK(phi1_amplitude(k[0], k[1], 0).coefficient(0, 0) == v);
    // and the amplitude side has no h-free terms the table misses
    for (int i = 0; i + 1 <= 4; ++i)
        for (int j = 0; i + j + 1 <= 4; ++j)
            if (!table.count({i, j, 1}))
                CHECK(phi1_amplitude(i, j, 0).coefficient(0, 0) == 0);
}
