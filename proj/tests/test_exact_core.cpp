#include "orbistar/ypoly.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace orbistar;

TEST_CASE("rational helpers") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(binomial(7, 3) == 35);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(5, 0) == 1);
    CHECK(falling(4, 2) == 12);
    CHECK(falling(2, 4) == 0);  // crosses zero
    CHECK(falling(3, 0) == 1);
    CHECK(spow(Scalar(2) / 3, 3) == Scalar(8) / 27);
    CHECK(spow(Scalar(7), 0) == 1);
    CHECK_THROWS_AS(spow(Scalar(2), -1), std::invalid_argument);
}

TEST_CASE("scalar text round trip") {
    CHECK(scalar_text(Scalar(5)) == "5");
    CHECK(scalar_text(Scalar(-3) / 4) == "-3/4");
    CHECK(scalar_from_text("5") == 5);
    CHECK(scalar_from_text("-7/2") == Scalar(-7) / 2);
    CHECK(scalar_from_text(scalar_text(Scalar(22) / 7)) == Scalar(22) / 7);
    CHECK_THROWS_AS(scalar_from_text("7/0"), std::invalid_argument);
    CHECK_THROWS_AS(scalar_from_text("7/-2"), std::invalid_argument);
    CHECK_THROWS_AS(scalar_from_text("abc"), std::invalid_argument);
}

TEST_CASE("parameter polynomial ring") {
    ParamPoly h = ParamPoly::hbar();
    ParamPoly u = ParamPoly::u();
    CHECK((ParamPoly(1) + h) * (ParamPoly(1) - h) == ParamPoly(1) - h * h);
    CHECK((h + u) - (h + u) == ParamPoly());
    CHECK(ParamPoly().is_zero());
    CHECK(h.shifted(1, 2) == ParamPoly::hbar(2) * ParamPoly::u(2));
    CHECK((h * u + ParamPoly(3)).coefficient(1, 1) == 1);
    CHECK((h * u + ParamPoly(3)).coefficient(0, 0) == 3);
    CHECK((h * u).coefficient(2, 0) == 0);

    Scalar half = Scalar(1) / 2;
    ParamPoly p = ParamPoly::hbar(2) + ParamPoly::u().scaled(4);
    CHECK(p.substitute(&half, nullptr) ==
          ParamPoly(Scalar(1) / 4) + ParamPoly::u().scaled(4));
    Scalar zero = 0;
    CHECK(p.substitute(&half, &zero) == ParamPoly(Scalar(1) / 4));
    CHECK(ParamPoly(7).constant_value() == 7);
    CHECK_THROWS_AS(h.constant_value(), std::logic_error);
}

TEST_CASE("y polynomial ring") {
    YPoly y1 = YPoly::y1(), y2 = YPoly::y2();
    YPoly sq = (y1 + y2) * (y1 + y2);
    CHECK(sq == y1 * y1 + YPoly::monomial(1, 1, ParamPoly(2)) + y2 * y2);
    CHECK(sq.degree() == 2);
    CHECK(YPoly().degree() == -1);
    CHECK(YPoly(3).degree() == 0);

    YPoly f = YPoly::monomial(3, 1);
    CHECK(f.derivative(1) == YPoly::monomial(2, 1, ParamPoly(3)));
    CHECK(f.derivative(2) == YPoly::monomial(3, 0));
    CHECK(YPoly(5).derivative(1).is_zero());
}

TEST_CASE("parity twist and scaling substitution") {
    YPoly f = YPoly::monomial(3, 0) + YPoly::monomial(1, 1);
    CHECK(twist(f) == -YPoly::monomial(3, 0) + YPoly::monomial(1, 1));
    CHECK(twist(twist(f)) == f);

    // f(c y) picks up c^degree per monomial
    ParamPoly c = ParamPoly::hbar().scaled(2);
    CHECK(poly_scale_substitute(YPoly::monomial(1, 1), c) ==
          YPoly::monomial(1, 1, ParamPoly::hbar(2).scaled(4)));
    CHECK(poly_scale_substitute(YPoly(3), c) == YPoly(3));
}

TEST_CASE("graded element arithmetic") {
    OrbifoldElement a(YPoly::y1(), YPoly(1));
    OrbifoldElement b(YPoly(), YPoly(1));
    CHECK((a - a).is_zero());
    CHECK(a + b == OrbifoldElement(YPoly::y1(), YPoly(2)));
    CHECK(OrbifoldElement::reflection() == b);
    CHECK(twist(a) == OrbifoldElement(-YPoly::y1(), YPoly(1)));
    CHECK(a.scaled(Scalar(2)) == OrbifoldElement(YPoly::y1().scaled(Scalar(2)), YPoly(2)));
}
