// Exact rational arithmetic used throughout the library.
//
// All probability comparisons in this project must be decidable, so every
// quantity that enters a comparison is kept as an arbitrary-precision
// rational. Floating point is confined to the Monte Carlo aggregation layer.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mapties {

using BigInt = boost::multiprecision::cpp_int;

// Canonical-form rational: denominator > 0, gcd(|num|, den) = 1.
// cpp_rational maintains the canonical form on every operation.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

/// q^e for integer e (negative exponents allowed when q != 0).
inline Rational rational_pow(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0 && exp < 0) throw std::domain_error("rational_pow: 0 to a negative power");
    const bool invert = exp < 0;
    unsigned long k = invert ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
    Rational acc(1), sq = base;
    while (k != 0) {
        if (k & 1) acc *= sq;
        if ((k >>= 1) != 0) sq *= sq;
    }
    if (invert) acc = Rational(1) / acc;
    return acc;
}

/// Serialize as "a/b", or "a" when the denominator is 1.
inline std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

/// Parse "a" or "a/b" with optional leading sign; b must be positive.
inline Rational parse_rational(std::string_view text) {
    const std::string s(text);
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("denominator must be positive");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational: '" + s + "'");
    }
}

}  // namespace mapties
