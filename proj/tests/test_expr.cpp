#include "orbistar/expr.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace orbistar;

TEST_CASE("expression grammar") {
    auto sym = ExprSymbols::orbifold();
    ExprAst two = parse_expression("3/2*y1^2*y2 + u*R", sym);
    REQUIRE(two.terms.size() == 2);
    CHECK(two.terms[0].coeff == Scalar(3) / 2);
    CHECK(two.terms[0].y1_pow == 2);
    CHECK(two.terms[0].y2_pow == 1);
    CHECK(two.terms[1].u_pow == 1);
    CHECK(two.terms[1].r_pow == 1);

    ExprAst expanded = parse_expression("y1*(y2 + 1)", sym);
    CHECK(expanded == parse_expression("y1 + y1*y2", sym));

    CHECK(parse_expression("  - y1 + 2 ", sym) == parse_expression("2 - y1", sym));
    CHECK(parse_expression("R^5", sym) == parse_expression("R", sym));
    CHECK(parse_expression("R^4", sym) == parse_expression("1", sym));
    CHECK(parse_expression("(y1+y2)*(y1-y2)", sym) == parse_expression("y1^2 - y2^2", sym));
    CHECK(parse_expression("0*y1", sym).terms.empty());
    CHECK(parse_expression("y1 - y1", sym).terms.empty());
    CHECK(parse_expression("1/2*y1 + 1/2*y1", sym) == parse_expression("y1", sym));
}

TEST_CASE("grammar error paths") {
    auto sym = ExprSymbols::orbifold();
    CHECK_THROWS_AS(parse_expression("y1^-1", sym), ExprParseError);
    CHECK_THROWS_AS(parse_expression("y3", sym), ExprParseError);
    CHECK_THROWS_AS(parse_expression("w", sym), ExprParseError);
    CHECK_THROWS_AS(parse_expression("1/0", sym), ExprParseError);
    CHECK_THROWS_AS(parse_expression("y1 y2", sym), ExprParseError);  // implicit product
    CHECK_THROWS_AS(parse_expression("(y1", sym), ExprParseError);
    CHECK_THROWS_AS(parse_expression("", sym), ExprParseError);
    CHECK_THROWS_AS(parse_expression("y1*", sym), ExprParseError);
    CHECK_THROWS_AS(parse_expression("1 + @", sym), ExprParseError);

    CHECK_THROWS_AS(parse_expression("h", ExprSymbols::dunkl()), ExprParseError);
    CHECK_THROWS_AS(parse_expression("R", ExprSymbols::ypoly()), ExprParseError);
    CHECK(parse_expression("u*w*wb^2", ExprSymbols::dunkl()).terms.size() == 1);

    try {
        parse_expression("y1 + y3", sym);
        FAIL("expected a parse error");
    } catch (const ExprParseError& e) {
        CHECK(e.position == 5);
        CHECK(std::string(e.what()).find("y3") != std::string::npos);
    }
}

TEST_CASE("canonical printing") {
    auto sym = ExprSymbols::orbifold();
    CHECK(print_expression(parse_expression("y2*y1", sym)) == "y1*y2");
    CHECK(print_expression(parse_expression("R*u + y1*y2 - h", sym)) == "y1*y2 - h + u*R");
    CHECK(print_expression(parse_expression("0", sym)) == "0");
    CHECK(print_expression(parse_expression("-y1 - 1", sym)) == "-1 - y1");
    CHECK(print_expression(parse_expression("3/2*y1", sym)) == "3/2*y1");
    CHECK(print_expression(parse_expression("-1*y1^2", sym)) == "-y1^2");
    CHECK(print_expression(parse_expression("h^2*u^3", sym)) == "h^2*u^3");
    CHECK(print_expression(parse_expression("u*w*wb^2", ExprSymbols::dunkl()), true) ==
          "u*w*wb^2");
}

TEST_CASE("print then parse is the identity") {
    auto sym = ExprSymbols::orbifold();
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> e(0, 3), c(-6, 6), r(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ExprTerm> raw;
        for (int t = 0; t < 4; ++t)
            raw.push_back({Scalar(c(rng)) / (1 + e(rng)), e(rng), e(rng), e(rng), e(rng), r(rng)});
        ExprAst ast = detail::expr_canonical(raw);
        CHECK(parse_expression(print_expression(ast), sym) == ast);
    }
}

TEST_CASE("algebra conversions") {
    auto sym = ExprSymbols::orbifold();
    ExprAst ast = parse_expression("y1*y2 - h - u*R", sym);
    OrbifoldElement e = expr_to_element(ast);
    CHECK(e.part0 == YPoly::monomial(1, 1) - YPoly(ParamPoly::hbar()));
    CHECK(e.part1 == YPoly(ParamPoly::u().scaled(-1)));
    CHECK(element_to_expr(e) == ast);

    YPoly p = expr_to_ypoly(parse_expression("h*y1^2", ExprSymbols::ypoly()));
    CHECK(p == YPoly::monomial(2, 0, ParamPoly::hbar()));
    CHECK(ypoly_to_expr(p) == parse_expression("h*y1^2", ExprSymbols::ypoly()));

    DunklElement d = expr_to_dunkl(parse_expression("w*wb + u*R", ExprSymbols::dunkl()));
    CHECK(d.part0 == YPoly::monomial(1, 1));
    CHECK(d.part1 == YPoly(ParamPoly::u()));
    CHECK(print_expression(dunkl_to_expr(d), true) == "w*wb + u*R");
}

TEST_CASE("json term arrays") {
    auto sym = ExprSymbols::orbifold();
    ExprAst ast = parse_expression("y1*y2 - h - u*R", sym);
    std::string dumped = expression_json(ast).dump();
    CHECK(dumped ==
          R"([{"coeff":"1","hbar_pow":0,"u_pow":0,"y1_pow":1,"y2_pow":1,"r_pow":0},)"
          R"({"coeff":"-1","hbar_pow":1,"u_pow":0,"y1_pow":0,"y2_pow":0,"r_pow":0},)"
          R"({"coeff":"-1","hbar_pow":0,"u_pow":1,"y1_pow":0,"y2_pow":0,"r_pow":1}])");
    CHECK(expression_json(ast).dump() == dumped);  // deterministic
    CHECK(expression_json(ExprAst{}).dump() == "[]");
}

TEST_CASE("exponential sum rendering") {
    ExpSum s = localize_exponential({Scalar(1)});
    CHECK(expsum_text(s) == "(1)e^{1} + (-1)e^{0}");
    CHECK(expsum_json(s).dump() ==
          R"([{"weight":"1","node":"1"},{"weight":"-1","node":"0"}])");
    CHECK(expsum_text(ExpSum{}) == "0");
}
