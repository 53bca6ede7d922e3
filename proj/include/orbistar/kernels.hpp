#pragma once

#include "orbistar/integration.hpp"
#include "orbistar/weyl.hpp"
#include "orbistar/ypoly.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace orbistar {

using SlotPair = std::pair<int, int>;

// Symbol of a Gaussian poly-differential operator:
//   overall * (contractions)^prefactor * exp[ sum c_{0i} p0.p_i + sum c_{ij} p_i.p_j ]
// Slot 0 is the output variable; slots 1..slot_count-1 take arguments.
// (0,i) coefficients shift arguments into the output (a missing (0,i) pair
// projects slot i onto its constant part), (i,j) coefficients and prefactor
// powers contract arguments pairwise. Coefficients are polynomials in the
// integration variables of `domain`.
struct GaussianKernel {
    int slot_count = 2;
    std::map<SlotPair, int> prefactor;
    std::map<SlotPair, IntegrandPoly> exponent;
    IntegrandPoly overall;
    CellDomain domain;

    // the contraction is antisymmetric, so a self-pair is identically zero
    void add_prefactor(int i, int j, int power) {
        if (i == j) throw std::invalid_argument("GaussianKernel: self-pair contraction is zero");
        if (i < 1 || j <= i || j >= slot_count)
            throw std::invalid_argument("GaussianKernel: prefactor pair out of range");
        if (power < 0) throw std::invalid_argument("GaussianKernel: negative prefactor power");
        if (power > 0) prefactor[{i, j}] += power;
    }
    void set_exponent(int i, int j, IntegrandPoly c) {
        if (i == j) throw std::invalid_argument("GaussianKernel: self-pair coefficient");
        if (i < 0 || j <= i || j >= slot_count)
            throw std::invalid_argument("GaussianKernel: exponent pair out of range");
        if (!c.is_zero()) exponent[{i, j}] = std::move(c);
    }

    bool operator==(const GaussianKernel& o) const {
        return slot_count == o.slot_count && prefactor == o.prefactor &&
               exponent == o.exponent && overall == o.overall && domain == o.domain;
    }
};

// Result of kernel_apply before integration: y-monomials with coefficients
// still polynomial in the cell variables.
struct CellYPoly {
    std::map<std::pair<int, int>, IntegrandPoly> terms;

    void add_term(int o1, int o2, const IntegrandPoly& c) {
        if (c.is_zero()) return;
        auto it = terms.find({o1, o2});
        if (it == terms.end()) {
            terms.emplace(std::pair{o1, o2}, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
};

namespace detail {

// per-slot leftover monomial exponents -> accumulated coefficient polynomial
using KernelState = std::map<std::vector<std::pair<int, int>>, IntegrandPoly>;

inline void state_add(KernelState& s, const std::vector<std::pair<int, int>>& key,
                      const IntegrandPoly& c) {
    if (c.is_zero()) return;
    auto it = s.find(key);
    if (it == s.end()) {
        s.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) s.erase(it);
    }
}

}  // namespace detail

// Apply the kernel to one argument per slot. All the factors y.d_i and
// d_i.d_j commute (none contains y_i), so the operator factorizes: mutual
// contractions first, pairwise and in any order, then the (0,i) shifts
// y_i -> c_{0i} y. Each exponential of a contraction pair contributes the
// finite sum over multiplicities m of c_{ij}^m / m! P^{m + prefactor_{ij}}.
inline CellYPoly kernel_apply(const GaussianKernel& k, const std::vector<YPoly>& args) {
    if (static_cast<int>(args.size()) != k.slot_count - 1)
        throw std::invalid_argument("kernel_apply: argument count does not match slots");
    for (const auto& [p, pw] : k.prefactor)
        if (p.first == p.second) throw std::invalid_argument("kernel_apply: self-pair contraction");
    const int nv = k.domain.nvars();

    detail::KernelState state;
    {
        std::vector<std::pair<int, int>> key(args.size());
        std::vector<std::map<std::pair<int, int>, ParamPoly>::const_iterator> its;
        // cartesian product over the monomials of every argument
        for (auto& f : args)
            if (f.is_zero()) return {};
        for (auto& f : args) its.push_back(f.terms.begin());
        while (true) {
            ParamPoly c(1);
            for (size_t s = 0; s < args.size(); ++s) {
                key[s] = its[s]->first;
                c *= its[s]->second;
            }
            detail::state_add(state, key, IntegrandPoly::constant(nv, c));
            size_t s = 0;
            for (; s < args.size(); ++s) {
                if (++its[s] != args[s].terms.end()) break;
                its[s] = args[s].terms.begin();
            }
            if (s == args.size()) break;
        }
    }

    // all cross pairs that can contract: union of exponent and prefactor keys
    std::map<SlotPair, int> cross;
    for (const auto& [p, c] : k.exponent)
        if (p.first >= 1) cross[p];  // m-sum allowed
    for (const auto& [p, pw] : k.prefactor) cross[p];

    for (const auto& [pairkey, unused] : cross) {
        const auto [i, j] = pairkey;
        auto expo_it = k.exponent.find(pairkey);
        const IntegrandPoly* cij = expo_it == k.exponent.end() ? nullptr : &expo_it->second;
        int pref = 0;
        if (auto it = k.prefactor.find(pairkey); it != k.prefactor.end()) pref = it->second;

        detail::KernelState next;
        for (const auto& [key, cp] : state) {
            auto ai = key[i - 1], aj = key[j - 1];
            int dmax = std::min(ai.first + ai.second, aj.first + aj.second);
            if (dmax < pref) continue;  // cannot supply the mandatory contractions
            int mtop = cij ? dmax - pref : 0;
            IntegrandPoly factor = cp;
            for (int m = 0; m <= mtop; ++m) {
                if (m > 0) factor = (factor * (*cij)).scaled(Scalar(1) / m);
                auto terms = cross_power_terms(pref + m, ai, aj);
                if (terms.empty()) continue;
                auto nk = key;
                for (const auto& t : terms) {
                    nk[i - 1] = t.left;
                    nk[j - 1] = t.right;
                    detail::state_add(next, nk, factor.scaled(t.factor));
                }
            }
        }
        state = std::move(next);
    }

    // shifts and projections
    CellYPoly out;
    for (const auto& [key, cp] : state) {
        IntegrandPoly poly = cp;
        int o1 = 0, o2 = 0;
        bool dead = false;
        for (int slot = 1; slot < k.slot_count; ++slot) {
            auto a = key[slot - 1];
            auto it = k.exponent.find({0, slot});
            if (it != k.exponent.end()) {
                poly *= it->second.pow(a.first + a.second);
                o1 += a.first;
                o2 += a.second;
            } else if (a != std::pair{0, 0}) {
                dead = true;  // no shift channel: slot must be fully consumed
                break;
            }
        }
        if (!dead) out.add_term(o1, o2, poly);
    }
    return out;
}

inline YPoly kernel_integrate(const GaussianKernel& k, const std::vector<YPoly>& args) {
    CellYPoly applied = kernel_apply(k, args);
    YPoly out;
    for (const auto& [mono, poly] : applied.terms)
        out.add_term(mono.first, mono.second, integrate_cell(poly * k.overall, k.domain));
    return out;
}

}  // namespace orbistar
