#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "cellcount/errors.hpp"

namespace cellcount {

// All counting is exact: arbitrary-precision integers and rationals throughout.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_gcd(Int const &a, Int const &b) { return boost::multiprecision::gcd(a, b); }

inline Int int_lcm(Int const &a, Int const &b) {
    if (a == 0 || b == 0)
        return 0;
    return boost::multiprecision::lcm(a, b);
}

inline Int int_abs(Int const &a) { return a < 0 ? Int(-a) : a; }

inline Int int_pow(Int const &base, unsigned long exponent) {
    Int result = 1;
    for (unsigned long i = 0; i < exponent; ++i)
        result *= base;
    return result;
}

// Canonical residue of a (possibly negative) integer in [0, m-1].
inline Int mod_canonical(Int const &a, Int const &m) {
    if (m <= 0)
        throw DimensionMismatch("modulus must be positive");
    Int r = a % m;
    if (r < 0)
        r += m;
    return r;
}

inline Rat rat(Int const &num, Int const &den = 1) { return Rat(num, den); }

inline Int rat_numerator(Rat const &q) { return boost::multiprecision::numerator(q); }
inline Int rat_denominator(Rat const &q) { return boost::multiprecision::denominator(q); }

inline bool rat_is_integer(Rat const &q) { return rat_denominator(q) == 1; }

// Decimal-free string form: "7", "-2", "1/2".
inline std::string rat_to_string(Rat const &q) {
    std::string s = rat_numerator(q).str();
    if (!rat_is_integer(q))
        s += "/" + rat_denominator(q).str();
    return s;
}

inline Rat rat_from_string(std::string const &s) {
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0)
        throw DimensionMismatch("rational with zero denominator: " + s);
    return Rat(num, den);
}

} // namespace cellcount
