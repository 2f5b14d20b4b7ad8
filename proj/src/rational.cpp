#include "hhcn/rational.hpp"

#include <cmath>
#include <cstdlib>

#include "hhcn/errors.hpp"

namespace hhcn {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) {
        throw InvalidArgument("cannot convert non-finite double to rational");
    }
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
    // 53 mantissa bits make mant * 2^53 an exact integer.
    auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r(scaled);
    if (exp >= 0) {
        r *= Rational(pow_int(2, exp));
    } else {
        r /= Rational(pow_int(2, -exp));
    }
    return r;
}

Rational rational_from_string(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(text));
        }
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw InvalidArgument("zero denominator in '" + text + "'");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw InvalidArgument("malformed rational literal '" + text + "'");
    }
}

}  // namespace hhcn
