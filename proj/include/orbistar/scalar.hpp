#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace orbistar {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. Always in lowest terms, denominator > 0 (the
// backend canonicalizes on every operation).
using Scalar = boost::multiprecision::cpp_rational;

inline Scalar spow(const Scalar& base, int e) {
    if (e < 0) throw std::invalid_argument("spow: negative exponent");
    Scalar r = 1;
    Scalar b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Scalar factorial(int n) {
    Scalar r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Scalar binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Scalar r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// n (n-1) ... (n-k+1); vanishes once the factors cross zero.
inline Scalar falling(int n, int k) {
    Scalar r = 1;
    for (int i = 0; i < k; ++i) r *= (n - i);
    return r;
}

// "p" or "p/q"
inline std::string scalar_text(const Scalar& s) {
    std::ostringstream os;
    os << s;
    return os.str();
}

// Accepts "p" or "p/q" with optional leading sign; q > 0 required.
inline Scalar scalar_from_text(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Scalar(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("scalar_from_text: denominator must be positive");
        return Scalar(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("scalar_from_text: malformed rational '" + text + "'");
    }
}

}  // namespace orbistar
