#pragma once

#include "orbistar/kernels.hpp"

#include <array>
#include <map>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace orbistar {

// The three equivalent integral presentations of the deformation maps.
enum class PhiParameterization { UV, W, HPT };

// Overall scale relating the raw integral kernels to the normalization in
// which [y1, y2]_circ = -2(hbar + u R): phi_n = (1/2)^n * (raw kernel
// integral). A cocycle rescaling of this kind is a reparameterization of u.
inline const Scalar& phi_calibration() {
    static const Scalar c = Scalar(1) / 2;
    return c;
}

namespace detail {

inline IntegrandPoly one_minus_2(const IntegrandPoly& x) {
    return IntegrandPoly::constant(x.nvars, Scalar(1)) - x.scaled(Scalar(2));
}

}  // namespace detail

// Homotopy-side coefficient quadruple (c_i, d_i, e_i, f_i) in the variables
// (k_1..k_n | t_1..t_n), k simplex block, t cube block.
struct OmegaCoefficients {
    IntegrandPoly c, d, e, f;

    bool operator==(const OmegaCoefficients& o) const {
        return c == o.c && d == o.d && e == o.e && f == o.f;
    }
};

// Recurrence: c_1 = 1, d_1 = 1-2t_1, e_1 = f_1 = t_1 k_1 and, with
// d'_i = 1-2t_i, e'_i = f'_i = t_i k_i,
//   c_i = d_{i-1} c_{i-1},  d_i = d_{i-1} d'_i,
//   e_i = e_{i-1} d'_i + e'_i,  f_i = f'_i d_{i-1} + f_{i-1}.
// Returns entries i = 1..n.
inline std::vector<OmegaCoefficients> hpt_omega_recurrence(int n) {
    if (n < 1) throw std::invalid_argument("hpt_omega_recurrence: n must be positive");
    const int nv = 2 * n;
    auto kv = [&](int i) { return IntegrandPoly::variable(nv, i); };
    auto tv = [&](int i) { return IntegrandPoly::variable(nv, n + i); };
    std::vector<OmegaCoefficients> seq;
    seq.push_back({IntegrandPoly::constant(nv, Scalar(1)), detail::one_minus_2(tv(0)),
                   tv(0) * kv(0), tv(0) * kv(0)});
    for (int i = 1; i < n; ++i) {
        IntegrandPoly dp = detail::one_minus_2(tv(i));
        IntegrandPoly ep = tv(i) * kv(i);
        const auto& prev = seq.back();
        OmegaCoefficients cur;
        cur.c = prev.d * prev.c;
        cur.d = prev.d * dp;
        cur.e = prev.e * dp + ep;
        cur.f = ep * prev.d + prev.f;
        seq.push_back(cur);
    }
    return seq;
}

// Closed forms: d_i = prod(1-2t_j), e_i = sum t_j k_j prod_{l>j}(1-2t_l),
// f_i = sum t_j k_j prod_{l<j}(1-2t_l), c_i = prod_{j<i}(1-2t_j)^{i-j}.
// Variable layout as in hpt_omega_recurrence(n).
inline OmegaCoefficients hpt_omega_closed_form(int i, int n) {
    const int nv = 2 * n;
    auto kv = [&](int j) { return IntegrandPoly::variable(nv, j); };
    auto tv = [&](int j) { return IntegrandPoly::variable(nv, n + j); };
    OmegaCoefficients out;
    out.d = IntegrandPoly::constant(nv, Scalar(1));
    for (int j = 0; j < i; ++j) out.d *= detail::one_minus_2(tv(j));
    out.e = IntegrandPoly(nv);
    out.f = IntegrandPoly(nv);
    for (int j = 0; j < i; ++j) {
        IntegrandPoly te = tv(j) * kv(j);
        for (int l = j + 1; l < i; ++l) te *= detail::one_minus_2(tv(l));
        out.e += te;
        IntegrandPoly tf = tv(j) * kv(j);
        for (int l = 0; l < j; ++l) tf *= detail::one_minus_2(tv(l));
        out.f += tf;
    }
    out.c = IntegrandPoly::constant(nv, Scalar(1));
    for (int j = 1; j < i; ++j) out.c *= detail::one_minus_2(tv(j - 1)).pow(i - j);
    return out;
}

namespace detail {

inline GaussianKernel build_phi_kernel_uncached(int n, PhiParameterization param) {
    if (n < 1) throw std::invalid_argument("build_phi_kernel: n must be positive");
    const int nv = 2 * n;
    GaussianKernel ker;
    ker.slot_count = 3;
    ker.domain = {n, n};
    ker.add_prefactor(1, 2, n);

    if (param == PhiParameterization::UV || param == PhiParameterization::W) {
        // simplex block u_1..u_n, cube block holding v (UV) or w (W)
        auto uvar = [&](int j) { return IntegrandPoly::variable(nv, j); };
        auto cvar = [&](int j) { return IntegrandPoly::variable(nv, n + j); };
        IntegrandPoly one = IntegrandPoly::constant(nv, Scalar(1));
        IntegrandPoly a01, a02, a12, overall;
        if (param == PhiParameterization::UV) {
            a02 = one;
            for (int j = 0; j < n; ++j) a02 *= one_minus_2(cvar(j));
            IntegrandPoly s(nv);
            for (int j = 0; j < n; ++j) {
                IntegrandPoly t = uvar(j) * cvar(j);
                for (int k = j + 1; k < n; ++k) t *= one_minus_2(cvar(k));
                s += t;
            }
            a01 = one - s.scaled(Scalar(2));
            IntegrandPoly s2(nv);
            for (int j = 0; j < n; ++j) {
                IntegrandPoly t = uvar(j) * cvar(j);
                for (int k = 0; k < j; ++k) t *= one_minus_2(cvar(k));
                s2 += t;
            }
            a12 = a02 + s2.scaled(Scalar(2));
            overall = IntegrandPoly::constant(nv, spow(Scalar(4), n));
            for (int j = 0; j < n; ++j)
                overall *= cvar(j) * one_minus_2(cvar(j)).pow(n - (j + 1));
        } else {
            // native form on u-simplex x [-1,1]^n in w; measure has no 4^n
            a02 = one;
            for (int j = 0; j < n; ++j) a02 *= cvar(j);
            IntegrandPoly s(nv);
            for (int j = 0; j < n; ++j) {
                IntegrandPoly t = uvar(j) * (one - cvar(j));
                for (int k = j + 1; k < n; ++k) t *= cvar(k);
                s += t;
            }
            a01 = one - s;
            IntegrandPoly s2(nv);
            for (int j = 0; j < n; ++j) {
                IntegrandPoly t = uvar(j) * (one - cvar(j));
                for (int k = 0; k < j; ++k) t *= cvar(k);
                s2 += t;
            }
            a12 = a02 + s2;
            overall = one;
            for (int j = 0; j < n; ++j)
                overall *= (one - cvar(j)) * cvar(j).pow(n - (j + 1));
            // land on the unit cube: w_j = 2 v_j - 1, dw = 2 dv
            for (int j = 0; j < n; ++j) {
                a01 = a01.substitute_affine(n + j, 2, -1);
                a02 = a02.substitute_affine(n + j, 2, -1);
                a12 = a12.substitute_affine(n + j, 2, -1);
                overall = overall.substitute_affine(n + j, 2, -1);
            }
            overall = overall.scaled(spow(Scalar(2), n));
        }
        ker.set_exponent(0, 1, a01);
        ker.set_exponent(0, 2, a02);
        ker.set_exponent(1, 2, a12.scaled(ParamPoly::hbar()));
        ker.overall = overall;
        return ker;
    }

    // HPT: simplex block k_1..k_n, cube block t_1..t_n
    auto omega = hpt_omega_recurrence(n).back();
    IntegrandPoly one = IntegrandPoly::constant(nv, Scalar(1));
    ker.set_exponent(0, 1, one - omega.e.scaled(Scalar(2)));
    ker.set_exponent(0, 2, omega.d);
    ker.set_exponent(1, 2, (omega.d + omega.f.scaled(Scalar(2))).scaled(ParamPoly::hbar()));
    ker.overall = omega.c.scaled(spow(Scalar(4), n));
    for (int j = 0; j < n; ++j) ker.overall *= IntegrandPoly::variable(nv, n + j);
    return ker;
}

}  // namespace detail

inline const GaussianKernel& build_phi_kernel(int n, PhiParameterization param) {
    static std::map<std::pair<int, int>, GaussianKernel> cache;
    static std::shared_mutex mtx;
    const std::pair<int, int> key{n, static_cast<int>(param)};
    {
        std::shared_lock lk(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    GaussianKernel ker = detail::build_phi_kernel_uncached(n, param);
    std::unique_lock lk(mtx);
    return cache.emplace(key, std::move(ker)).first->second;
}

// Explicit second-order integrand over the 4-cube: an independently quoted
// form of the n=2 kernel (t-variables only, no simplex block).
inline const GaussianKernel& phi2_explicit_kernel() {
    static const GaussianKernel ker = [] {
        const int nv = 4;
        auto t = [&](int j) { return IntegrandPoly::variable(nv, j); };
        IntegrandPoly one = IntegrandPoly::constant(nv, Scalar(1));
        GaussianKernel k;
        k.slot_count = 3;
        k.domain = {0, 4};
        k.add_prefactor(1, 2, 2);
        IntegrandPoly a01 = one - (t(0) * t(1) * t(3)).scaled(Scalar(2)) +
                            (t(0) * t(1) * t(2) * t(3)).scaled(Scalar(4)) -
                            (t(2) * t(3)).scaled(Scalar(2));
        IntegrandPoly a02 = one + (t(2) * t(0)).scaled(Scalar(4)) - t(0).scaled(Scalar(2)) -
                            t(2).scaled(Scalar(2));
        IntegrandPoly a12 = one + (t(2) * t(0)).scaled(Scalar(4)) +
                            (t(1) * t(3) * t(0)).scaled(Scalar(2)) -
                            (t(2) * t(3) * t(0)).scaled(Scalar(4)) - t(0).scaled(Scalar(2)) -
                            t(2).scaled(Scalar(2)) + (t(2) * t(3)).scaled(Scalar(2));
        k.set_exponent(0, 1, a01);
        k.set_exponent(0, 2, a02);
        k.set_exponent(1, 2, a12.scaled(ParamPoly::hbar()));
        k.overall = ((one - t(0).scaled(Scalar(2))) * t(0) * t(2) * t(3)).scaled(Scalar(16));
        return k;
    }();
    return ker;
}

namespace detail {

inline const YPoly& phi_monomial(int n, std::pair<int, int> a, std::pair<int, int> b) {
    using Key = std::tuple<int, int, int, int, int>;
    static std::map<Key, YPoly> cache;
    static std::shared_mutex mtx;
    const Key key{n, a.first, a.second, b.first, b.second};
    {
        std::shared_lock lk(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    YPoly val = kernel_integrate(build_phi_kernel(n, PhiParameterization::UV),
                                 {YPoly::monomial(a.first, a.second),
                                  YPoly::monomial(b.first, b.second)})
                    .scaled(spow(phi_calibration(), n));
    std::unique_lock lk(mtx);
    return cache.emplace(key, std::move(val)).first->second;
}

}  // namespace detail

// n-th deformation map. Bilinear; vanishes when n exceeds the degree of
// either argument (the contraction prefactor cannot be supplied).
inline YPoly phi(int n, const YPoly& f, const YPoly& g) {
    if (n < 1) throw std::invalid_argument("phi: n must be positive");
    YPoly out;
    if (n > f.degree() || n > g.degree()) return out;
    for (const auto& [ka, ca] : f.terms)
        for (const auto& [kb, cb] : g.terms)
            out += detail::phi_monomial(n, ka, kb).scaled(ca * cb);
    return out;
}

inline YPoly phi_with_parameterization(int n, const YPoly& f, const YPoly& g,
                                       PhiParameterization param) {
    return kernel_integrate(build_phi_kernel(n, param), {f, g})
        .scaled(spow(phi_calibration(), n));
}

// Same map assembled from the homotopy recurrence data; equals phi exactly.
inline YPoly phi_via_hpt(int n, const YPoly& f, const YPoly& g) {
    return phi_with_parameterization(n, f, g, PhiParameterization::HPT);
}

// Full two-parameter product. Sector rule: (f R^a) o (g R^b) contributes
// u^n phi_n(f, g twisted a times) to the R-sector n+a+b mod 2, with
// phi_0 the Moyal product. The series terminates on polynomials.
inline OrbifoldElement circle_product(const OrbifoldElement& a, const OrbifoldElement& b) {
    OrbifoldElement out;
    for (int sa = 0; sa < 2; ++sa) {
        const YPoly& f = sa ? a.part1 : a.part0;
        if (f.is_zero()) continue;
        for (int sb = 0; sb < 2; ++sb) {
            const YPoly& graw = sb ? b.part1 : b.part0;
            if (graw.is_zero()) continue;
            YPoly g = sa ? twist(graw) : graw;
            int top = std::min(f.degree(), g.degree());
            for (int n = 0; n <= top; ++n) {
                YPoly term = n == 0 ? moyal_star(f, g) : phi(n, f, g).scaled(ParamPoly::u(n));
                if (term.is_zero()) continue;
                ((n + sa + sb) % 2 ? out.part1 : out.part0) += term;
            }
        }
    }
    return out;
}

// ----- Dunkl limit -------------------------------------------------------

// Polynomials in the complex pair (w, wbar) with the same reflection grading
// as OrbifoldElement; exponent slots are (w power, wbar power).
struct DunklElement {
    YPoly part0;
    YPoly part1;

    DunklElement() = default;
    DunklElement(YPoly p0, YPoly p1 = YPoly()) : part0(std::move(p0)), part1(std::move(p1)) {}

    bool is_zero() const { return part0.is_zero() && part1.is_zero(); }
    bool operator==(const DunklElement& o) const { return part0 == o.part0 && part1 == o.part1; }

    DunklElement operator+(const DunklElement& o) const { return {part0 + o.part0, part1 + o.part1}; }
    DunklElement operator-(const DunklElement& o) const { return {part0 - o.part0, part1 - o.part1}; }
};

namespace detail {

// (f(w,.) - f(-w,.)) / (2w): the odd-in-w part, divided exactly.
inline YPoly dunkl_difference_w(const YPoly& f) {
    YPoly r;
    for (const auto& [k, c] : f.terms)
        if (k.first % 2) r.add_term(k.first - 1, k.second, c);
    return r;
}

// (g(-w,.) - g(-w,-.)) / (2wbar): odd-in-wbar part of g(-w,.), divided.
inline YPoly dunkl_difference_wb(const YPoly& g) {
    YPoly r;
    for (const auto& [k, c] : g.terms)
        if (k.second % 2) r.add_term(k.first, k.second - 1, k.first % 2 ? -c : c);
    return r;
}

}  // namespace detail

// f o g = f g + (u/2) [(f(w,wb)-f(-w,wb))/2w] [(g(-w,wb)-g(-w,-wb))/2wb] R
// extended to the reflection grading by the same sector rule as
// circle_product. The deformation coefficient is u.
inline DunklElement dunkl_product(const DunklElement& a, const DunklElement& b) {
    DunklElement out;
    const ParamPoly half_u = ParamPoly::u().scaled(Scalar(1) / 2);
    for (int sa = 0; sa < 2; ++sa) {
        const YPoly& f = sa ? a.part1 : a.part0;
        if (f.is_zero()) continue;
        for (int sb = 0; sb < 2; ++sb) {
            const YPoly& graw = sb ? b.part1 : b.part0;
            if (graw.is_zero()) continue;
            YPoly g = sa ? twist(graw) : graw;
            YPoly plain = f * g;
            YPoly refl =
                (detail::dunkl_difference_w(f) * detail::dunkl_difference_wb(g)).scaled(half_u);
            ((sa + sb) % 2 ? out.part1 : out.part0) += plain;
            ((sa + sb + 1) % 2 ? out.part1 : out.part0) += refl;
        }
    }
    return out;
}

// ----- closed-form generating functions ----------------------------------

namespace series3 {

// truncated series in three formal variables: total-degree-capped maps
using Key = std::array<int, 3>;
using Series = std::map<Key, Scalar>;

inline void add_term(Series& s, const Key& k, const Scalar& v) {
    if (v == 0) return;
    auto it = s.find(k);
    if (it == s.end()) {
        s.emplace(k, v);
    } else {
        it->second += v;
        if (it->second == 0) s.erase(it);
    }
}

inline Series add(const Series& a, const Series& b) {
    Series r = a;
    for (const auto& [k, v] : b) add_term(r, k, v);
    return r;
}

inline Series mul(const Series& a, const Series& b, int cap) {
    Series r;
    for (const auto& [k1, v1] : a)
        for (const auto& [k2, v2] : b) {
            Key k{k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2]};
            if (k[0] + k[1] + k[2] > cap) continue;
            add_term(r, k, v1 * v2);
        }
    return r;
}

inline Series linear(const Scalar& cx, const Scalar& cy, const Scalar& cz) {
    Series r;
    add_term(r, {1, 0, 0}, cx);
    add_term(r, {0, 1, 0}, cy);
    add_term(r, {0, 0, 1}, cz);
    return r;
}

inline Series exp_linear(const Series& lin, int cap) {
    Series r{{{0, 0, 0}, 1}};
    Series term = r;
    for (int m = 1; m <= cap; ++m) {
        term = mul(term, lin, cap);
        for (auto& [k, v] : term) v /= m;
        r = add(r, term);
    }
    return r;
}

// exact division by a homogeneous cubic: per total degree, eliminate the
// lex-leading remainder monomial against the divisor's lex-leading term
inline Series homog_divide(const Series& num, const Series& den) {
    const auto& [lead_exp, lead_coef] = *den.rbegin();
    std::map<int, Series> by_deg;
    for (const auto& [k, v] : num) by_deg[k[0] + k[1] + k[2]][k] = v;
    Series out;
    for (auto& [d, rem] : by_deg) {
        while (!rem.empty()) {
            auto [mk, mv] = *rem.rbegin();
            Key qk{mk[0] - lead_exp[0], mk[1] - lead_exp[1], mk[2] - lead_exp[2]};
            if (qk[0] < 0 || qk[1] < 0 || qk[2] < 0)
                throw std::logic_error("homog_divide: numerator not divisible");
            Scalar qv = mv / lead_coef;
            add_term(out, qk, qv);
            for (const auto& [ek, ev] : den)
                add_term(rem, {qk[0] + ek[0], qk[1] + ek[1], qk[2] + ek[2]}, -qv * ev);
        }
    }
    return out;
}

inline Series truncate(const Series& s, int order) {
    Series r;
    for (const auto& [k, v] : s)
        if (k[0] + k[1] + k[2] <= order) r.emplace(k, v);
    return r;
}

}  // namespace series3

// Taylor table of the first deformation map's generating function
//   z e^{-x-y+z}/((x+y)(x-z)) + z e^{x+y+z}/((x+y)(y+z)) - z e^{x-y-z}/((x-z)(y+z))
// brought over the common denominator (x+y)(x-z)(y+z) and divided exactly.
// Coefficients kept through the requested total order.
inline series3::Series phi1_generating_table(int order) {
    using namespace series3;
    const int cap = order + 3;  // numerator accuracy needed for an order-`order` quotient
    Series num = mul(exp_linear(linear(-1, -1, 1), cap), linear(0, 1, 1), cap);
    num = add(num, mul(exp_linear(linear(1, 1, 1), cap), linear(1, 0, -1), cap));
    num = add(num, mul(exp_linear(linear(1, -1, -1), cap), linear(-1, -1, 0), cap));
    num = mul(num, Series{{{0, 0, 1}, 1}}, cap + 1);
    Series den = mul(mul(linear(1, 1, 0), linear(1, 0, -1), 9), linear(0, 1, 1), 9);
    return truncate(homog_divide(num, den), order);
}

// Same at hbar = 0:  z ( e^{-x-y}/(x(x+y)) + e^{x+y}/(y(x+y)) - e^{x-y}/(xy) ),
// common denominator x y (x+y). Every term is linear in z.
inline series3::Series phi_commutative_cocycle_data(int order) {
    using namespace series3;
    const int cap = order + 3;
    Series num = mul(exp_linear(linear(-1, -1, 0), cap), linear(0, 1, 0), cap);
    num = add(num, mul(exp_linear(linear(1, 1, 0), cap), linear(1, 0, 0), cap));
    num = add(num, mul(exp_linear(linear(1, -1, 0), cap), linear(-1, -1, 0), cap));
    num = mul(num, Series{{{0, 0, 1}, 1}}, cap + 1);
    Series den = mul(mul(linear(1, 0, 0), linear(0, 1, 0), 9), linear(1, 1, 0), 9);
    return truncate(homog_divide(num, den), order);
}

// Integral-side amplitude: coefficient of x^i y^j z^{m+1} in the generating
// function, computed from the n=1 kernel's coefficient polynomials. The
// result carries hbar^m from the mutual-contraction coefficient.
inline ParamPoly phi1_amplitude(int i, int j, int m) {
    const GaussianKernel& k = build_phi_kernel(1, PhiParameterization::UV);
    IntegrandPoly p = k.exponent.at({0, 1}).pow(i) * k.exponent.at({0, 2}).pow(j) *
                      k.exponent.at({1, 2}).pow(m) * k.overall;
    return integrate_cell(p, k.domain).scaled(Scalar(1) / (factorial(i) * factorial(j) * factorial(m)));
}

}  // namespace orbistar
