#pragma once

#include "orbistar/param_poly.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace orbistar {

// Polynomial in y1, y2 with ParamPoly coefficients.
struct YPoly {
    // (y1 power, y2 power) -> coefficient
    std::map<std::pair<int, int>, ParamPoly> terms;

    YPoly() = default;
    explicit YPoly(const ParamPoly& c) {
        if (!c.is_zero()) terms[{0, 0}] = c;
    }
    explicit YPoly(const Scalar& c) : YPoly(ParamPoly(c)) {}
    YPoly(int c) : YPoly(ParamPoly(c)) {}

    static YPoly monomial(int a1, int a2, ParamPoly c = ParamPoly(1)) {
        YPoly p;
        if (!c.is_zero()) p.terms[{a1, a2}] = std::move(c);
        return p;
    }
    static YPoly y1() { return monomial(1, 0); }
    static YPoly y2() { return monomial(0, 1); }

    bool is_zero() const { return terms.empty(); }
    bool operator==(const YPoly& o) const { return terms == o.terms; }

    int degree() const {
        int d = -1;  // degree of 0 kept as -1 so min(deg f, deg g) bounds work
        for (const auto& [k, v] : terms) d = std::max(d, k.first + k.second);
        return d;
    }

    void add_term(int a1, int a2, const ParamPoly& c) {
        if (c.is_zero()) return;
        auto it = terms.find({a1, a2});
        if (it == terms.end()) {
            terms.emplace(std::pair{a1, a2}, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    YPoly& operator+=(const YPoly& o) {
        for (const auto& [k, v] : o.terms) add_term(k.first, k.second, v);
        return *this;
    }
    YPoly operator+(const YPoly& o) const {
        YPoly r = *this;
        r += o;
        return r;
    }
    YPoly operator-() const {
        YPoly r;
        for (const auto& [k, v] : terms) r.terms[k] = -v;
        return r;
    }
    YPoly& operator-=(const YPoly& o) { return *this += (-o); }
    YPoly operator-(const YPoly& o) const {
        YPoly r = *this;
        r -= o;
        return r;
    }
    YPoly operator*(const YPoly& o) const {
        YPoly r;
        for (const auto& [k1, v1] : terms)
            for (const auto& [k2, v2] : o.terms)
                r.add_term(k1.first + k2.first, k1.second + k2.second, v1 * v2);
        return r;
    }
    YPoly& operator*=(const YPoly& o) { return *this = *this * o; }

    YPoly scaled(const ParamPoly& c) const {
        YPoly r;
        for (const auto& [k, v] : terms) r.add_term(k.first, k.second, v * c);
        return r;
    }
    YPoly scaled(const Scalar& c) const { return scaled(ParamPoly(c)); }

    // d/dy_axis, axis in {1,2}
    YPoly derivative(int axis) const {
        YPoly r;
        for (const auto& [k, v] : terms) {
            if (axis == 1 && k.first > 0) r.add_term(k.first - 1, k.second, v.scaled(k.first));
            if (axis == 2 && k.second > 0) r.add_term(k.first, k.second - 1, v.scaled(k.second));
        }
        return r;
    }

    YPoly substitute_params(const Scalar* hval, const Scalar* uval) const {
        YPoly r;
        for (const auto& [k, v] : terms) r.add_term(k.first, k.second, v.substitute(hval, uval));
        return r;
    }
};

inline YPoly operator*(const ParamPoly& c, const YPoly& p) { return p.scaled(c); }
inline YPoly operator*(const Scalar& c, const YPoly& p) { return p.scaled(c); }

// f(c*y1, c*y2): each total-degree-d monomial picks up c^d.
inline YPoly poly_scale_substitute(const YPoly& f, const ParamPoly& c) {
    YPoly r;
    for (const auto& [k, v] : f.terms) {
        int d = k.first + k.second;
        ParamPoly cd(1);
        for (int i = 0; i < d; ++i) cd *= c;
        r.add_term(k.first, k.second, v * cd);
    }
    return r;
}

// y -> -y
inline YPoly twist(const YPoly& f) {
    YPoly r;
    for (const auto& [k, v] : f.terms) {
        int d = k.first + k.second;
        r.terms[k] = (d % 2 == 0) ? v : -v;
    }
    return r;
}

// Element of the reflection crossed product: part0 + part1 * R, R^2 = 1.
struct OrbifoldElement {
    YPoly part0;
    YPoly part1;

    OrbifoldElement() = default;
    OrbifoldElement(YPoly p0, YPoly p1 = YPoly()) : part0(std::move(p0)), part1(std::move(p1)) {}

    static OrbifoldElement reflection() { return OrbifoldElement(YPoly(), YPoly(1)); }

    bool is_zero() const { return part0.is_zero() && part1.is_zero(); }
    bool operator==(const OrbifoldElement& o) const { return part0 == o.part0 && part1 == o.part1; }

    OrbifoldElement operator+(const OrbifoldElement& o) const {
        return {part0 + o.part0, part1 + o.part1};
    }
    OrbifoldElement operator-(const OrbifoldElement& o) const {
        return {part0 - o.part0, part1 - o.part1};
    }
    OrbifoldElement operator-() const { return {-part0, -part1}; }
    OrbifoldElement scaled(const ParamPoly& c) const { return {part0.scaled(c), part1.scaled(c)}; }
    OrbifoldElement scaled(const Scalar& c) const { return {part0.scaled(c), part1.scaled(c)}; }
};

inline OrbifoldElement twist(const OrbifoldElement& f) {
    return {twist(f.part0), twist(f.part1)};
}

}  // namespace orbistar
