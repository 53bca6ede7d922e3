#pragma once

#include "orbistar/scalar.hpp"

#include <map>
#include <utility>

namespace orbistar {

// Polynomial in the two formal deformation parameters (hbar, u) with Scalar
// coefficients. Sparse: zero coefficients are never stored.
struct ParamPoly {
    // (hbar power, u power) -> coefficient
    std::map<std::pair<int, int>, Scalar> terms;

    ParamPoly() = default;
    explicit ParamPoly(const Scalar& c) {
        if (c != 0) terms[{0, 0}] = c;
    }
    ParamPoly(int c) : ParamPoly(Scalar(c)) {}

    static ParamPoly constant(const Scalar& c) { return ParamPoly(c); }
    static ParamPoly hbar(int k = 1) {
        ParamPoly p;
        p.terms[{k, 0}] = 1;
        return p;
    }
    static ParamPoly u(int k = 1) {
        ParamPoly p;
        p.terms[{0, k}] = 1;
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    bool operator==(const ParamPoly& o) const { return terms == o.terms; }

    ParamPoly& operator+=(const ParamPoly& o) {
        for (const auto& [k, v] : o.terms) {
            auto it = terms.find(k);
            if (it == terms.end()) {
                terms.emplace(k, v);
            } else {
                it->second += v;
                if (it->second == 0) terms.erase(it);
            }
        }
        return *this;
    }
    ParamPoly operator+(const ParamPoly& o) const {
        ParamPoly r = *this;
        r += o;
        return r;
    }
    ParamPoly operator-() const {
        ParamPoly r;
        for (const auto& [k, v] : terms) r.terms[k] = -v;
        return r;
    }
    ParamPoly& operator-=(const ParamPoly& o) { return *this += (-o); }
    ParamPoly operator-(const ParamPoly& o) const {
        ParamPoly r = *this;
        r -= o;
        return r;
    }
    ParamPoly operator*(const ParamPoly& o) const {
        ParamPoly r;
        for (const auto& [k1, v1] : terms)
            for (const auto& [k2, v2] : o.terms) {
                auto key = std::pair{k1.first + k2.first, k1.second + k2.second};
                auto it = r.terms.find(key);
                if (it == r.terms.end()) {
                    Scalar v = v1 * v2;
                    if (v != 0) r.terms.emplace(key, std::move(v));
                } else {
                    it->second += v1 * v2;
                    if (it->second == 0) r.terms.erase(it);
                }
            }
        return r;
    }
    ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

    ParamPoly scaled(const Scalar& c) const {
        ParamPoly r;
        if (c == 0) return r;
        for (const auto& [k, v] : terms) r.terms[k] = v * c;
        return r;
    }

    // multiply by hbar^dh u^du
    ParamPoly shifted(int dh, int du) const {
        ParamPoly r;
        for (const auto& [k, v] : terms) r.terms[{k.first + dh, k.second + du}] = v;
        return r;
    }

    Scalar coefficient(int hpow, int upow) const {
        auto it = terms.find({hpow, upow});
        return it == terms.end() ? Scalar(0) : it->second;
    }

    // substitute numeric values; either may be nullptr to stay formal
    ParamPoly substitute(const Scalar* hval, const Scalar* uval) const {
        ParamPoly r;
        for (const auto& [k, v] : terms) {
            Scalar c = v;
            int hp = k.first, up = k.second;
            if (hval) {
                c *= spow(*hval, hp);
                hp = 0;
            }
            if (uval) {
                c *= spow(*uval, up);
                up = 0;
            }
            if (c == 0) continue;
            auto it = r.terms.find({hp, up});
            if (it == r.terms.end()) {
                r.terms.emplace(std::pair{hp, up}, c);
            } else {
                it->second += c;
                if (it->second == 0) r.terms.erase(it);
            }
        }
        return r;
    }

    // exact constant value; throws if hbar or u survives
    Scalar constant_value() const {
        if (terms.empty()) return 0;
        if (terms.size() == 1 && terms.begin()->first == std::pair{0, 0}) return terms.begin()->second;
        throw std::logic_error("ParamPoly::constant_value: not a constant");
    }
};

inline ParamPoly operator*(const Scalar& c, const ParamPoly& p) { return p.scaled(c); }

}  // namespace orbistar
