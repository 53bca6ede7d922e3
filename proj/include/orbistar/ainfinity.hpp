#pragma once

#include "orbistar/deformation.hpp"

#include <map>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

namespace orbistar {

// Multi-argument kernels reuse the Gaussian symbol representation; slots are
// output 0, a -> 1, b -> 2, c_i -> i+2.
using MultiKernel = GaussianKernel;

// Structure-map kernel over (k_1..k_n | t_1..t_n), k simplex, t cube.
// Shares the homotopy coefficient polynomials d_n, e_n, f_n, c_n with the
// HPT form of the two-argument kernel and adds the argument couplings
//   (1, i+2): 2 t_i k_i - 4 t_i sum_{j<i} t_j k_j prod_{l=j+1..i}(1-2t_l)
//   (2, i+2): 2 t_i prod_{j<i}(1-2t_j)
// with no (0, i+2) channel: c-slot leftovers are projected out.
inline const MultiKernel& build_mn_kernel(int n) {
    static std::map<int, MultiKernel> cache;
    static std::shared_mutex mtx;
    {
        std::shared_lock lk(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    if (n < 1) throw std::invalid_argument("build_mn_kernel: n must be positive");
    const int nv = 2 * n;
    auto kvar = [&](int i) { return IntegrandPoly::variable(nv, i); };      // k_{i+1}
    auto tvar = [&](int i) { return IntegrandPoly::variable(nv, n + i); };  // t_{i+1}
    IntegrandPoly one = IntegrandPoly::constant(nv, Scalar(1));

    MultiKernel ker;
    ker.slot_count = n + 3;
    ker.domain = {n, n};
    ker.add_prefactor(1, 2, n);

    auto omega = hpt_omega_recurrence(n).back();
    ker.set_exponent(0, 1, one - omega.e.scaled(Scalar(2)));
    ker.set_exponent(0, 2, omega.d);
    ker.set_exponent(1, 2, (omega.d + omega.f.scaled(Scalar(2))).scaled(ParamPoly::hbar()));
    for (int i = 1; i <= n; ++i) {
        IntegrandPoly sum(nv);
        for (int j = 1; j < i; ++j) {
            IntegrandPoly t = tvar(j - 1) * kvar(j - 1);
            for (int l = j + 1; l <= i; ++l) t *= detail::one_minus_2(tvar(l - 1));
            sum += t;
        }
        ker.set_exponent(1, i + 2, (tvar(i - 1) * kvar(i - 1)).scaled(Scalar(2)) -
                                       (tvar(i - 1) * sum).scaled(Scalar(4)));
        IntegrandPoly c2 = tvar(i - 1).scaled(Scalar(2));
        for (int j = 1; j < i; ++j) c2 *= detail::one_minus_2(tvar(j - 1));
        ker.set_exponent(2, i + 2, c2);
    }
    ker.overall = omega.c.scaled(spow(Scalar(4), n));
    for (int j = 0; j < n; ++j) ker.overall *= tvar(j);

    std::unique_lock lk(mtx);
    return cache.emplace(n, std::move(ker)).first->second;
}

// m_n(a, b, c_1..c_n). Reflection factors are stripped: the caller reattaches
// R^n following the phi_n pattern. Same overall calibration as phi.
inline YPoly mn(const YPoly& a, const YPoly& b, const std::vector<YPoly>& cs) {
    const int n = static_cast<int>(cs.size());
    if (n < 1) throw std::invalid_argument("mn: needs at least one c argument");
    std::vector<YPoly> args;
    args.reserve(n + 2);
    args.push_back(a);
    args.push_back(b);
    for (const auto& c : cs) args.push_back(c);
    return kernel_integrate(build_mn_kernel(n), args).scaled(spow(phi_calibration(), n));
}

// ----- generic-algebra kernel --------------------------------------------

namespace detail {

// Symbols of the pre-substitution kernel: p_i are shift/contraction symbols
// of slots 0..n+2, q_j the one-form symbols of the insertion slots 3..n+2.
// The pairing is antisymmetric and p.p self-pairs vanish. q symbols are
// encoded as QBASE + j so that integer order puts all p's first.
constexpr int QBASE = 1000;
using SymPair = std::pair<int, int>;
using BilinearForm = std::map<SymPair, IntegrandPoly>;
using SymVector = std::map<int, IntegrandPoly>;

inline void form_add(BilinearForm& f, SymPair key, const IntegrandPoly& c) {
    if (c.is_zero()) return;
    auto it = f.find(key);
    if (it == f.end()) {
        f.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) f.erase(it);
    }
}

// left derivative of the form along a symbol: d/da (c a.b) = +c b,
// d/db (c a.b) = -c a
inline SymVector coefficient_vector(const BilinearForm& E, int sym) {
    SymVector out;
    for (const auto& [key, c] : E) {
        if (key.first == sym) {
            auto it = out.find(key.second);
            if (it == out.end())
                out.emplace(key.second, c);
            else
                it->second += c;
        } else if (key.second == sym) {
            auto it = out.find(key.first);
            if (it == out.end())
                out.emplace(key.first, -c);
            else
                it->second -= c;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace detail

// The kernel for a generic algebra insertion, already contracted against the
// exponential one-form arguments of the reflection algebra: slot j = 3..n+2
// is eliminated with the j-th cube variable as insertion parameter,
//   exponent += t_j <dE/dq_j, dE/dp_j>,  prefactor (x.p_j) -> t_j (x.dE/dq_j),
// starting from exponent sum_{i<j} p_i.p_j + 2 sum_j u_j p_1.q_{j+2}
// + 2 sum_{2<=i<j} p_i.q_j and prefactor prod_{i=2..n+1} sum_{j=2..i} p_1.p_j.
// The result collapses onto the three-slot form and reproduces the phi_n
// kernel coefficient by coefficient.
inline MultiKernel build_general_phi_kernel(int n) {
    using namespace detail;
    if (n < 1) throw std::invalid_argument("build_general_phi_kernel: n must be positive");
    const int nv = 2 * n;
    IntegrandPoly one = IntegrandPoly::constant(nv, Scalar(1));

    BilinearForm E;
    for (int i = 0; i <= n + 2; ++i)
        for (int j = i + 1; j <= n + 2; ++j) form_add(E, {i, j}, one);
    for (int j = 1; j <= n; ++j)
        form_add(E, {1, QBASE + j + 2}, IntegrandPoly::variable(nv, j - 1).scaled(Scalar(2)));
    for (int i = 2; i <= n + 2; ++i)
        for (int j = i + 1; j <= n + 2; ++j)
            form_add(E, {i, QBASE + j}, one.scaled(Scalar(2)));
    std::vector<BilinearForm> pref;
    for (int i = 2; i <= n + 1; ++i) {
        BilinearForm f;
        for (int j = 2; j <= i; ++j) form_add(f, {1, j}, one);
        pref.push_back(f);
    }

    IntegrandPoly measure = IntegrandPoly::constant(nv, spow(Scalar(4), n));
    for (int j = 3; j <= n + 2; ++j) {
        const int pj = j, qj = QBASE + j;
        IntegrandPoly tv = IntegrandPoly::variable(nv, n + (j - 3));
        SymVector A = coefficient_vector(E, pj);
        SymVector B = coefficient_vector(E, qj);
        for (auto it = E.begin(); it != E.end();) {
            const auto& [a, b] = it->first;
            it = (a == pj || a == qj || b == pj || b == qj) ? E.erase(it) : std::next(it);
        }
        for (const auto& [sb, cb] : B)
            for (const auto& [sa, ca] : A) {
                if (sb == sa) continue;
                IntegrandPoly term = cb * ca * tv;
                if (sb < sa)
                    form_add(E, {sb, sa}, term);
                else
                    form_add(E, {sa, sb}, -term);
            }
        for (auto& f : pref) {
            BilinearForm nf;
            for (const auto& [key, c] : f) {
                if (key.second == pj) {
                    for (const auto& [sb, cb] : B) {
                        if (key.first == sb) continue;
                        IntegrandPoly term = c * cb * tv;
                        if (key.first < sb)
                            form_add(nf, {key.first, sb}, term);
                        else
                            form_add(nf, {sb, key.first}, -term);
                    }
                } else {
                    if (key.first == pj || key.first == qj || key.second == qj)
                        throw std::logic_error("build_general_phi_kernel: unexpected prefactor symbol");
                    form_add(nf, key, c);
                }
            }
            f = std::move(nf);
        }
        measure *= tv;
    }

    // every prefactor factor must have collapsed onto the (1,2) contraction
    IntegrandPoly overall = measure;
    for (const auto& f : pref) {
        if (f.size() != 1 || f.begin()->first != SymPair{1, 2})
            throw std::logic_error("build_general_phi_kernel: prefactor did not collapse");
        overall *= f.begin()->second;
    }

    MultiKernel ker;
    ker.slot_count = 3;
    ker.domain = {n, n};
    ker.add_prefactor(1, 2, n);
    for (const auto& [key, c] : E) {
        if (key.second > 2) throw std::logic_error("build_general_phi_kernel: leftover insertion symbol");
        if (key == SymPair{1, 2})
            ker.set_exponent(1, 2, c.scaled(ParamPoly::hbar()));
        else
            ker.set_exponent(key.first, key.second, c);
    }
    ker.overall = overall;
    return ker;
}

// The stated change of variables between the n-th kernel's (u | v) cell and
// the 2n insertion parameters: u_k = t_{2n} t_{2n-2} ... t_{2n-2(k-1)},
// v_j = t_{2n-2j+1}. Maps a coefficient polynomial into the t-ring for
// coefficient-level comparison.
inline IntegrandPoly insertion_parameter_image(const IntegrandPoly& p, int n) {
    IntegrandPoly out(2 * n);
    std::vector<int> e(2 * n);
    for (const auto& [k, c] : p.terms) {
        std::fill(e.begin(), e.end(), 0);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l <= i; ++l) e[(2 * n - 2 * l) - 1] += k[i];
        for (int j = 0; j < n; ++j) e[(2 * n - 2 * (j + 1) + 1) - 1] += k[n + j];
        out.add_term(e, c);
    }
    return out;
}

}  // namespace orbistar
