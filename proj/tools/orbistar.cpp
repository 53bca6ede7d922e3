#include "orbistar/ainfinity.hpp"
#include "orbistar/expr.hpp"
#include "orbistar/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace orbistar;

YPoly substituted(const YPoly& p, const std::optional<std::string>& hbar_text,
                  const std::optional<std::string>& u_text) {
    if (!hbar_text && !u_text) return p;
    Scalar hv, uv;
    const Scalar* hp = nullptr;
    const Scalar* up = nullptr;
    if (hbar_text) {
        hv = scalar_from_text(*hbar_text);
        hp = &hv;
    }
    if (u_text) {
        uv = scalar_from_text(*u_text);
        up = &uv;
    }
    return p.substitute_params(hp, up);
}

OrbifoldElement substituted(const OrbifoldElement& e, const std::optional<std::string>& h,
                            const std::optional<std::string>& u) {
    return {substituted(e.part0, h, u), substituted(e.part1, h, u)};
}

void emit(const ExprAst& ast, bool json, bool dunkl_names = false) {
    if (json)
        std::cout << expression_json(ast).dump() << "\n";
    else
        std::cout << print_expression(ast, dunkl_names) << "\n";
}

int degree_cap_from_env() {
    const char* raw = std::getenv("ORBISTAR_MAX_DEGREE");
    if (!raw) return 5;
    try {
        return std::stoi(raw);
    } catch (const std::exception&) {
        return 5;
    }
}

std::vector<Scalar> parse_form(const std::string& text) {
    std::vector<Scalar> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string piece = text.substr(start, comma - start);
        std::size_t a = piece.find_first_not_of(" \t");
        if (a == std::string::npos) throw std::invalid_argument("empty entry in --form");
        std::size_t b = piece.find_last_not_of(" \t");
        out.push_back(scalar_from_text(piece.substr(a, b - a + 1)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

int report(const std::string& name, const SuiteResult& res, int degree = -1) {
    std::cout << name << ": " << (res.passed ? "PASS" : "FAIL") << " (" << res.checks
              << " checks";
    if (degree >= 0) std::cout << ", degree " << degree;
    std::cout << ")";
    if (!res.passed) std::cout << " " << res.detail;
    std::cout << "\n";
    return res.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact two-parameter deformation of the Z2 orbifold plane"};
    app.require_subcommand(1);
    int rc = 0;

    // prod
    std::string prod_a, prod_b;
    bool prod_json = false;
    std::optional<std::string> prod_hbar, prod_u;
    auto* prod = app.add_subcommand("prod", "circle product of two graded elements");
    prod->add_option("a", prod_a, "left factor")->required();
    prod->add_option("b", prod_b, "right factor")->required();
    prod->add_flag("--json", prod_json, "emit the term array as JSON");
    prod->add_option("--hbar", prod_hbar, "substitute a rational for h");
    prod->add_option("--u", prod_u, "substitute a rational for u");
    prod->callback([&] {
        auto sym = ExprSymbols::orbifold();
        OrbifoldElement a = expr_to_element(parse_expression(prod_a, sym));
        OrbifoldElement b = expr_to_element(parse_expression(prod_b, sym));
        OrbifoldElement r = substituted(circle_product(a, b), prod_hbar, prod_u);
        emit(element_to_expr(r), prod_json);
    });

    // phi
    int phi_n = 1;
    std::string phi_f, phi_g;
    bool phi_json = false;
    std::optional<std::string> phi_hbar, phi_u;
    auto* phic = app.add_subcommand("phi", "deformation map of a given order on two polynomials");
    phic->add_option("n", phi_n, "order (>= 1)")->required();
    phic->add_option("f", phi_f, "first argument")->required();
    phic->add_option("g", phi_g, "second argument")->required();
    phic->add_flag("--json", phi_json, "emit the term array as JSON");
    phic->add_option("--hbar", phi_hbar, "substitute a rational for h");
    phic->add_option("--u", phi_u, "substitute a rational for u");
    phic->callback([&] {
        auto sym = ExprSymbols::ypoly();
        YPoly f = expr_to_ypoly(parse_expression(phi_f, sym));
        YPoly g = expr_to_ypoly(parse_expression(phi_g, sym));
        emit(ypoly_to_expr(substituted(phi(phi_n, f, g), phi_hbar, phi_u)), phi_json);
    });

    // mn
    int mn_n = 1;
    std::string mn_a, mn_b;
    std::vector<std::string> mn_cs;
    bool mn_json = false;
    std::optional<std::string> mn_hbar, mn_u;
    auto* mnc = app.add_subcommand("mn", "structure map m_n(a, b, c_1..c_n)");
    mnc->add_option("n", mn_n, "number of c arguments")->required();
    mnc->add_option("a", mn_a, "first argument")->required();
    mnc->add_option("b", mn_b, "second argument")->required();
    mnc->add_option("cs", mn_cs, "the n extra arguments")->expected(-1);
    mnc->add_flag("--json", mn_json, "emit the term array as JSON");
    mnc->add_option("--hbar", mn_hbar, "substitute a rational for h");
    mnc->add_option("--u", mn_u, "substitute a rational for u");
    mnc->callback([&] {
        if (static_cast<int>(mn_cs.size()) != mn_n)
            throw std::invalid_argument("mn: expected " + std::to_string(mn_n) +
                                        " extra arguments, got " + std::to_string(mn_cs.size()));
        auto sym = ExprSymbols::ypoly();
        YPoly a = expr_to_ypoly(parse_expression(mn_a, sym));
        YPoly b = expr_to_ypoly(parse_expression(mn_b, sym));
        std::vector<YPoly> cs;
        for (const auto& text : mn_cs) cs.push_back(expr_to_ypoly(parse_expression(text, sym)));
        emit(ypoly_to_expr(substituted(mn(a, b, cs), mn_hbar, mn_u)), mn_json);
    });

    // dunkl
    std::string dunkl_a, dunkl_b;
    bool dunkl_json = false;
    std::optional<std::string> dunkl_u;
    auto* dun = app.add_subcommand("dunkl", "difference-operator product in the w plane");
    dun->add_option("a", dunkl_a, "left factor")->required();
    dun->add_option("b", dunkl_b, "right factor")->required();
    dun->add_flag("--json", dunkl_json, "emit the term array as JSON");
    dun->add_option("--u", dunkl_u, "substitute a rational for u");
    dun->callback([&] {
        auto sym = ExprSymbols::dunkl();
        DunklElement a = expr_to_dunkl(parse_expression(dunkl_a, sym));
        DunklElement b = expr_to_dunkl(parse_expression(dunkl_b, sym));
        DunklElement r = dunkl_product(a, b);
        OrbifoldElement out{substituted(r.part0, std::nullopt, dunkl_u),
                            substituted(r.part1, std::nullopt, dunkl_u)};
        emit(element_to_expr(out), dunkl_json, true);
    });

    // localize
    std::string localize_form;
    bool localize_json = false;
    auto* loc = app.add_subcommand("localize",
                                   "vertex localization of a simplex exponential integral");
    loc->add_option("--form", localize_form, "comma-separated rational coefficients a1,..,an")
        ->required();
    loc->add_flag("--json", localize_json, "emit weight/node pairs as JSON");
    loc->callback([&] {
        ExpSum s = localize_exponential(parse_form(localize_form));
        if (localize_json)
            std::cout << expsum_json(s).dump() << "\n";
        else
            std::cout << expsum_text(s) << "\n";
    });

    // verify
    std::string verify_target;
    int verify_degree = 4;
    auto* ver = app.add_subcommand("verify", "run an identity suite and report pass/fail");
    ver->add_option("target", verify_target, "which suite to run")
        ->required()
        ->check(CLI::IsMember({"assoc", "cocycle", "cocycle0", "second-order", "casimir",
                               "projectors", "pbw"}));
    ver->add_option("--max-degree", verify_degree, "cap on total monomial degree");
    ver->callback([&] {
        int degree = std::min(verify_degree, degree_cap_from_env());
        if (verify_target == "assoc")
            rc = report("assoc", verify_associativity(degree), degree);
        else if (verify_target == "cocycle")
            rc = report("cocycle", verify_cocycle(degree), degree);
        else if (verify_target == "cocycle0")
            rc = report("cocycle0", verify_commutative_cocycle(degree), degree);
        else if (verify_target == "second-order")
            rc = report("second-order", verify_second_order(degree), degree);
        else if (verify_target == "casimir")
            rc = report("casimir", verify_casimir(degree), degree);
        else if (verify_target == "projectors")
            rc = report("projectors", verify_projectors());
        else
            rc = report("pbw", verify_pbw(1000, 10, 20260814));
    });

    // casimir
    std::string casimir_product = "circle";
    bool casimir_json = false;
    auto* cas = app.add_subcommand("casimir", "quadratic Casimir under a chosen product");
    cas->add_option("--product", casimir_product, "star | circle | pbw")
        ->check(CLI::IsMember({"star", "circle", "pbw"}));
    cas->add_flag("--json", casimir_json, "emit the term array as JSON");
    cas->callback([&] {
        CasimirProduct which = casimir_product == "star"    ? CasimirProduct::Star
                               : casimir_product == "circle" ? CasimirProduct::Circle
                                                             : CasimirProduct::Pbw;
        emit(element_to_expr(casimir_element(which)), casimir_json);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ExprParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateForm& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
