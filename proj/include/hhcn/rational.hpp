#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hhcn {

// Exact arithmetic scalar types. All probability/Kraft/expected-depth
// computations in this library are exact; doubles appear only in Monte
// Carlo estimates, geometry and interval fusion.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow_int(std::int64_t base, std::int64_t exp) {
    if (base < 0 || exp < 0) {
        throw std::invalid_argument("pow_int requires base >= 0 and exp >= 0");
    }
    BigInt result = 1;
    BigInt b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

// base^exp for integer exp of either sign.
inline Rational pow_rational(const Rational& base, std::int64_t exp) {
    if (exp < 0) {
        if (base == 0) throw std::domain_error("0 cannot be raised to a negative power");
        Rational inv = Rational(denominator(base), numerator(base));
        exp = -exp;
        Rational result = 1;
        for (std::int64_t i = 0; i < exp; ++i) result *= inv;
        return result;
    }
    Rational result = 1;
    Rational b = base;
    while (exp > 0) {
        if (exp & 1) result *= b;
        b *= b;
        exp >>= 1;
    }
    return result;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double x);

// Accepts "3", "-3", "3/4"; whitespace not allowed.
Rational rational_from_string(const std::string& text);

}  // namespace hhcn
