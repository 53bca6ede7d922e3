#pragma once

#include "orbistar/ypoly.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace orbistar {

// Index conventions for the antisymmetric form. eps is the lower-index
// tensor, eps_up the upper one; raising is y^a = eps_up[a][b] y_b. Calibrated
// so that simultaneously
//   exp[p0.p1] f(y1) = f(y + y1),
//   [y_a, y_b]_star = -2 hbar eps_ab,
//   [y_a, y_b]_circ = -2 eps_ab (hbar + u R).
struct EpsilonConvention {
    std::array<std::array<int, 2>, 2> eps{{{0, 1}, {-1, 0}}};
    std::array<std::array<int, 2>, 2> eps_up{{{0, 1}, {-1, 0}}};
    // sign of the bidifferential contraction: P(f,g) = sign*(d1f d2g - d2f d1g)
    int contraction_sign = -1;

    int lower(int a, int b) const { return eps.at(a - 1).at(b - 1); }
    int upper(int a, int b) const { return eps_up.at(a - 1).at(b - 1); }
};

inline const EpsilonConvention& epsilon_convention() {
    static const EpsilonConvention c{};
    return c;
}

// One summand of P^M on a monomial pair: leftover exponents and the numeric
// weight collecting binomial, parity and falling-factorial factors.
struct CrossTerm {
    std::pair<int, int> left;
    std::pair<int, int> right;
    Scalar factor;
};

// P^M(f,g) = sign^M sum_k C(M,k) (-1)^k (d1^{M-k} d2^k f)(d2^{M-k} d1^k g)
// evaluated on the monomial pair y^a (x) y^b. Empty when the derivatives
// exhaust an exponent.
inline std::vector<CrossTerm> cross_power_terms(int M, std::pair<int, int> a,
                                                std::pair<int, int> b) {
    const int sign = epsilon_convention().contraction_sign;
    std::vector<CrossTerm> out;
    for (int k = 0; k <= M; ++k) {
        int p = M - k;  // d1^p d2^k on the left, d2^p d1^k on the right
        if (p > a.first || k > a.second || p > b.second || k > b.first) continue;
        Scalar fac = binomial(M, k) * falling(a.first, p) * falling(a.second, k) *
                     falling(b.second, p) * falling(b.first, k);
        if (k % 2) fac = -fac;
        if (M % 2 && sign < 0) fac = -fac;
        if (fac == 0) continue;
        out.push_back({{a.first - p, a.second - k}, {b.first - k, b.second - p}, fac});
    }
    return out;
}

inline YPoly contraction_power(const YPoly& f, const YPoly& g, int M) {
    YPoly out;
    for (const auto& [ka, ca] : f.terms)
        for (const auto& [kb, cb] : g.terms) {
            ParamPoly coeff = ca * cb;
            for (const auto& t : cross_power_terms(M, ka, kb))
                out.add_term(t.left.first + t.right.first, t.left.second + t.right.second,
                             coeff.scaled(t.factor));
        }
    return out;
}

// Moyal-Weyl product, summed over contraction order (terminates at
// min(deg f, deg g)). Normalized so that [y1, y2]_star = -2 hbar.
inline YPoly moyal_star(const YPoly& f, const YPoly& g) {
    int top = std::min(f.degree(), g.degree());
    YPoly out;
    for (int M = 0; M <= top; ++M) {
        YPoly c = contraction_power(f, g, M);
        if (c.is_zero()) continue;
        out += c.scaled(ParamPoly::hbar(M).scaled(Scalar(1) / factorial(M)));
    }
    return out;
}

// (f + f'R)(g + g'R) = f g + f' g~' + (f g' + f' g~) R, products Moyal.
inline OrbifoldElement crossed_star(const OrbifoldElement& a, const OrbifoldElement& b) {
    OrbifoldElement r;
    r.part0 = moyal_star(a.part0, b.part0) + moyal_star(a.part1, twist(b.part1));
    r.part1 = moyal_star(a.part0, b.part1) + moyal_star(a.part1, twist(b.part0));
    return r;
}

// t_ab = -1/2 y_a y_b, the sp2 generators. a, b in {1,2}.
inline YPoly sp2_bilinear(int a, int b) {
    if (a < 1 || a > 2 || b < 1 || b > 2) throw std::out_of_range("sp2_bilinear: index");
    return YPoly::monomial((a == 1) + (b == 1), (a == 2) + (b == 2),
                           ParamPoly(Scalar(-1) / 2));
}

// y^a = eps_up[a][b] y_b
inline YPoly raised_y(int a) {
    const auto& conv = epsilon_convention();
    YPoly r;
    for (int b = 1; b <= 2; ++b) {
        int c = conv.upper(a, b);
        if (c) r += YPoly::monomial(b == 1, b == 2, ParamPoly(Scalar(c)));
    }
    return r;
}

}  // namespace orbistar
