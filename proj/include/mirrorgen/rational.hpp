#pragma once

// Exact scalar arithmetic shared by every module.

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "mirrorgen/errors.hpp"

namespace mirrorgen {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rational = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

inline Integer factorial(long n)
{
    Integer r = 1;
    for (long k = 2; k <= n; ++k) {
        r *= k;
    }
    return r;
}

inline Rational binomial(long n, long k)
{
    if (k < 0 || k > n) {
        return Rational(0);
    }
    return Rational(factorial(n)) / Rational(factorial(k) * factorial(n - k));
}

// "p/q" or "p"; never a decimal.
inline std::string to_string(const Rational &r)
{
    if (mp::denominator(r) == 1) {
        return mp::numerator(r).str();
    }
    return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.erase(s.begin());
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.pop_back();
    }
    if (s.empty()) {
        throw ParseError("empty rational");
    }
    auto valid_int = [](std::string_view v) {
        std::size_t i = (!v.empty() && (v[0] == '-' || v[0] == '+')) ? 1 : 0;
        if (i == v.size()) {
            return false;
        }
        for (; i < v.size(); ++i) {
            if (v[i] < '0' || v[i] > '9') {
                return false;
            }
        }
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) {
        throw ParseError("not an exact rational: '" + s + "'");
    }
    if (num[0] == '+') {
        num.erase(0, 1);
    }
    Integer d(den[0] == '+' ? den.substr(1) : den);
    if (d == 0) {
        throw ParseError("zero denominator in '" + s + "'");
    }
    return Rational(Integer(num)) / Rational(d);
}

} // namespace mirrorgen
