#pragma once

#include "orbistar/param_poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

namespace orbistar {

// Integration cell: ordered simplex 0 < u_1 < ... < u_ns < 1 times the unit
// cube [0,1]^nc. Variable indices: 0..ns-1 simplex block, ns..ns+nc-1 cube.
struct CellDomain {
    int n_simplex = 0;
    int n_cube = 0;

    int nvars() const { return n_simplex + n_cube; }
    bool operator==(const CellDomain& o) const {
        return n_simplex == o.n_simplex && n_cube == o.n_cube;
    }
};

// Polynomial in the cell variables with ParamPoly coefficients.
struct IntegrandPoly {
    int nvars = 0;
    std::map<std::vector<int>, ParamPoly> terms;

    IntegrandPoly() = default;
    explicit IntegrandPoly(int nv) : nvars(nv) {}

    static IntegrandPoly constant(int nv, ParamPoly c) {
        IntegrandPoly p(nv);
        if (!c.is_zero()) p.terms[std::vector<int>(nv, 0)] = std::move(c);
        return p;
    }
    static IntegrandPoly constant(int nv, const Scalar& c) { return constant(nv, ParamPoly(c)); }
    static IntegrandPoly variable(int nv, int i, ParamPoly c = ParamPoly(1)) {
        IntegrandPoly p(nv);
        if (!c.is_zero()) {
            std::vector<int> e(nv, 0);
            e[i] = 1;
            p.terms[e] = std::move(c);
        }
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    bool operator==(const IntegrandPoly& o) const { return nvars == o.nvars && terms == o.terms; }

    void add_term(const std::vector<int>& e, const ParamPoly& c) {
        if (c.is_zero()) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    IntegrandPoly& operator+=(const IntegrandPoly& o) {
        for (const auto& [e, c] : o.terms) add_term(e, c);
        return *this;
    }
    IntegrandPoly operator+(const IntegrandPoly& o) const {
        IntegrandPoly r = *this;
        r += o;
        return r;
    }
    IntegrandPoly operator-() const {
        IntegrandPoly r(nvars);
        for (const auto& [e, c] : terms) r.terms[e] = -c;
        return r;
    }
    IntegrandPoly& operator-=(const IntegrandPoly& o) { return *this += (-o); }
    IntegrandPoly operator-(const IntegrandPoly& o) const {
        IntegrandPoly r = *this;
        r -= o;
        return r;
    }
    IntegrandPoly operator*(const IntegrandPoly& o) const {
        IntegrandPoly r(nvars);
        std::vector<int> e(nvars);
        for (const auto& [e1, c1] : terms)
            for (const auto& [e2, c2] : o.terms) {
                for (int i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c1 * c2);
            }
        return r;
    }
    IntegrandPoly& operator*=(const IntegrandPoly& o) { return *this = *this * o; }

    IntegrandPoly scaled(const ParamPoly& c) const {
        IntegrandPoly r(nvars);
        for (const auto& [e, v] : terms) r.add_term(e, v * c);
        return r;
    }
    IntegrandPoly scaled(const Scalar& c) const { return scaled(ParamPoly(c)); }

    IntegrandPoly pow(int k) const {
        IntegrandPoly r = constant(nvars, Scalar(1));
        for (int i = 0; i < k; ++i) r *= *this;
        return r;
    }

    // substitute variable var -> a*var + b
    IntegrandPoly substitute_affine(int var, const Scalar& a, const Scalar& b) const {
        IntegrandPoly r(nvars);
        for (const auto& [e, c] : terms) {
            int k = e[var];
            std::vector<int> base = e;
            for (int m = 0; m <= k; ++m) {
                // choose m factors of a*var, k-m of b
                base[var] = m;
                r.add_term(base, c.scaled(binomial(k, m) * spow(a, m) * spow(b, k - m)));
            }
        }
        return r;
    }
};

inline IntegrandPoly operator*(const Scalar& c, const IntegrandPoly& p) { return p.scaled(c); }

// int_{0<u_1<...<u_n<1} prod u_k^{a_k} du = prod_{k=1..n} 1/(a_1+...+a_k+k).
// Memoized; concurrent readers share the lock.
inline Scalar simplex_monomial_integral(const std::vector<int>& a) {
    static std::map<std::vector<int>, Scalar> cache;
    static std::shared_mutex mtx;
    {
        std::shared_lock lk(mtx);
        auto it = cache.find(a);
        if (it != cache.end()) return it->second;
    }
    Scalar r = 1;
    long long s = 0;
    for (size_t k = 0; k < a.size(); ++k) {
        s += a[k];
        r /= Scalar(s + static_cast<long long>(k) + 1);
    }
    std::unique_lock lk(mtx);
    cache.emplace(a, r);
    return r;
}

inline ParamPoly integrate_cell(const IntegrandPoly& p, const CellDomain& dom) {
    if (p.nvars != dom.nvars() && !p.is_zero())
        throw std::invalid_argument("integrate_cell: variable count does not match domain");
    ParamPoly out;
    std::vector<int> simplex_part(dom.n_simplex);
    for (const auto& [e, c] : p.terms) {
        Scalar w = 1;
        std::copy(e.begin(), e.begin() + dom.n_simplex, simplex_part.begin());
        w *= simplex_monomial_integral(simplex_part);
        for (int i = dom.n_simplex; i < dom.nvars(); ++i) w /= Scalar(e[i] + 1);
        out += c.scaled(w);
    }
    return out;
}

// Raised when the vertex localization formula hits a vanishing edge
// derivative; the caller should fall back to series integration.
struct DegenerateForm : std::runtime_error {
    DegenerateForm() : std::runtime_error("DegenerateForm: vanishing edge derivative at a simplex vertex") {}
};

// sum_i weight_i * e^{node_i}, ordered by node descending.
struct ExpSum {
    std::vector<std::pair<Scalar, Scalar>> terms;  // (weight, node)

    bool operator==(const ExpSum& o) const { return terms == o.terms; }
};

// int_{Delta_n} e^{sum a_i u_i} localized on simplex vertices. Vertex k has
// the last k coordinates equal to 1, so its node value is the sum of the
// last k coefficients; the weight is 1 / prod over the other vertices of the
// node difference.
inline ExpSum localize_exponential(const std::vector<Scalar>& a) {
    const size_t n = a.size();
    std::vector<Scalar> nodes(n + 1);
    nodes[0] = 0;
    for (size_t k = 1; k <= n; ++k) nodes[k] = nodes[k - 1] + a[n - k];
    ExpSum out;
    for (size_t i = 0; i <= n; ++i) {
        Scalar d = 1;
        for (size_t j = 0; j <= n; ++j) {
            if (i == j) continue;
            Scalar diff = nodes[i] - nodes[j];
            if (diff == 0) throw DegenerateForm();
            d *= diff;
        }
        out.terms.emplace_back(Scalar(1) / d, nodes[i]);
    }
    std::sort(out.terms.begin(), out.terms.end(),
              [](const auto& x, const auto& y) { return x.second > y.second; });
    return out;
}

// Taylor coefficients of sum_i c_i e^{t s_i} in t: coefficient k is
// sum_i c_i s_i^k / k!.
inline std::vector<Scalar> expsum_series_coefficients(const ExpSum& s, int order) {
    if (order < 0) throw std::invalid_argument("expsum_series_coefficients: negative order");
    std::vector<Scalar> out(order + 1, Scalar(0));
    for (const auto& [c, node] : s.terms) {
        Scalar p = 1;
        for (int k = 0; k <= order; ++k) {
            out[k] += c * p / factorial(k);
            p *= node;
        }
    }
    return out;
}

}  // namespace orbistar
