#pragma once

// Laurent series in x with Novikov-series coefficients. Each x-power is
// exact; truncation happens only in the Novikov variables.

#include <map>
#include <sstream>
#include <string>

#include "mirrorgen/series.hpp"

namespace mirrorgen {

class XLaurentSeries {
public:
    explicit XLaurentSeries(TruncationPolicy policy) : policy_(std::move(policy)) {}

    static XLaurentSeries monomial(const TruncationPolicy &p, int x_exp, const Exponent &beta, const Rational &c)
    {
        XLaurentSeries s(p);
        s.add_term(x_exp, beta, c);
        return s;
    }

    const TruncationPolicy &policy() const { return policy_; }
    const std::map<int, ScalarSeries> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(int x_exp, const Exponent &beta, const Rational &c)
    {
        auto it = terms_.try_emplace(x_exp, policy_).first;
        it->second.add_term(beta, c);
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }

    void add(int x_exp, const ScalarSeries &s)
    {
        auto it = terms_.try_emplace(x_exp, policy_).first;
        it->second += s;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }

    // Coefficient of x^k as a Novikov series.
    ScalarSeries x_coefficient(int k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? ScalarSeries(policy_) : it->second;
    }

    XLaurentSeries &operator+=(const XLaurentSeries &o)
    {
        for (const auto &[k, s] : o.terms_) {
            add(k, s);
        }
        return *this;
    }

    friend XLaurentSeries operator+(XLaurentSeries a, const XLaurentSeries &b) { return a += b; }

    friend XLaurentSeries operator*(const XLaurentSeries &a, const XLaurentSeries &b)
    {
        XLaurentSeries r(a.policy_);
        for (const auto &[i, sa] : a.terms_) {
            for (const auto &[j, sb] : b.terms_) {
                r.add(i + j, sa * sb);
            }
        }
        return r;
    }

    friend bool operator==(const XLaurentSeries &a, const XLaurentSeries &b) { return a.terms_ == b.terms_; }

    std::string str() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            os << (first ? "" : " + ") << "(" << to_string(it->second) << ")*x^" << it->first;
            first = false;
        }
        return os.str();
    }

private:
    TruncationPolicy policy_;
    std::map<int, ScalarSeries> terms_;
};

inline XLaurentSeries pow(const XLaurentSeries &f, int n)
{
    XLaurentSeries r = XLaurentSeries::monomial(f.policy(), 0, f.policy().zero_exponent(), Rational(1));
    XLaurentSeries base = f;
    while (n > 0) {
        if (n & 1) {
            r = r * base;
        }
        n >>= 1;
        if (n) {
            base = base * base;
        }
    }
    return r;
}

} // namespace mirrorgen
