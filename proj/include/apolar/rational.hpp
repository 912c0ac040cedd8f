#pragma once

// Exact rational scalar type and its "p/q" string form. Everything in the
// library except the quadrature module computes over these; no rounding ever.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace apolar {

using BigInt = boost::multiprecision::cpp_int;

// Canonical (lowest terms, positive denominator) arbitrary-precision rational.
// boost::multiprecision normalizes eagerly after every operation, which keeps
// Hankel-determinant intermediates from blowing up.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

// "p/q" with "/q" omitted when q == 1. Sign lives on the numerator.
inline std::string rational_to_string(const Rational& r) {
    const BigInt num = numerator_of(r);
    const BigInt den = denominator_of(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Rational rational_from_string(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        const BigInt num(s.substr(0, slash));
        const BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid rational literal: '" + s + "'");
    }
}

inline double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rational_pow(const Rational& base, unsigned exp) {
    Rational acc(1);
    Rational b = base;
    unsigned e = exp;
    while (e) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

inline BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        acc *= (n - i);
        acc /= (i + 1);
    }
    return acc;
}

}  // namespace apolar
