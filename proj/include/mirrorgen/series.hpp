#pragma once

// Truncated multivariate power series in Novikov variables over an abstract
// commutative coefficient ring. Exponents live in the effective cone
// (non-negative integers per variable) and are truncated by a weighted total
// degree.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mirrorgen/algebra.hpp"
#include "mirrorgen/errors.hpp"
#include "mirrorgen/rational.hpp"

namespace mirrorgen {

using Exponent = std::vector<int>;

struct TruncationPolicy {
    std::vector<std::string> variables;
    std::vector<int> weights;
    int max_total_weight = 8;
    int z_min = -11;
    int z_max = 1;

    // Default z window is [-(N+3), 1].
    static TruncationPolicy make(std::vector<std::string> vars, std::vector<int> weights, int order,
                                 std::optional<int> z_min = std::nullopt, int z_max = 1)
    {
        TruncationPolicy p{std::move(vars), std::move(weights), order, z_min.value_or(-(order + 3)), z_max};
        p.validate();
        return p;
    }

    static TruncationPolicy single(const std::string &var, int order, int weight = 1)
    {
        return make({var}, {weight}, order);
    }

    std::size_t size() const { return variables.size(); }

    void validate() const
    {
        if (variables.empty()) {
            throw ConfigError("truncation policy needs at least one Novikov variable");
        }
        if (weights.size() != variables.size()) {
            throw ConfigError("truncation policy: one weight per variable required");
        }
        for (int w : weights) {
            if (w <= 0) {
                throw ConfigError("truncation policy: weights must be strictly positive");
            }
        }
        if (max_total_weight < 1) {
            throw ConfigError("truncation policy: max total weight must be positive");
        }
        if (!(z_min <= -1 && z_max >= 1)) {
            throw ConfigError("truncation policy: z window must contain [-1, 1]");
        }
    }

    int weight(const Exponent &e) const
    {
        int w = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            w += weights[i] * e[i];
        }
        return w;
    }

    bool admits(const Exponent &e) const { return weight(e) <= max_total_weight; }

    Exponent zero_exponent() const { return Exponent(size(), 0); }

    Exponent unit_exponent(std::size_t i) const
    {
        Exponent e(size(), 0);
        e.at(i) = 1;
        return e;
    }

    // Every admissible exponent, in lexicographic order.
    std::vector<Exponent> exponents() const
    {
        std::vector<Exponent> out;
        Exponent e(size(), 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
            if (i == size()) {
                out.push_back(e);
                return;
            }
            for (int k = 0; used + k * weights[i] <= max_total_weight; ++k) {
                e[i] = k;
                rec(i + 1, used + k * weights[i]);
            }
            e[i] = 0;
        };
        rec(0, 0);
        return out;
    }

    friend bool operator==(const TruncationPolicy &, const TruncationPolicy &) = default;
};

inline std::string exponent_string(const Exponent &e)
{
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
        s += (i ? "," : "") + std::to_string(e[i]);
    }
    return s + ")";
}

inline int pairing(const std::vector<int> &functional, const Exponent &e)
{
    int s = 0;
    for (std::size_t i = 0; i < e.size() && i < functional.size(); ++i) {
        s += functional[i] * e[i];
    }
    return s;
}

// Ring interface every coefficient type provides. Types other than Rational
// and AlgebraElement expose it through members.
template <typename C>
struct coefficient_traits {
    static bool is_zero(const C &c) { return c.is_zero(); }
    static C zero_like(const C &c) { return c.zero_like(); }
    static C one_like(const C &c) { return c.one_like(); }
    static C scale(const C &c, const Rational &r) { return c * r; }
    static std::optional<Rational> scalar_value(const C &c) { return c.as_scalar(); }
};

template <>
struct coefficient_traits<Rational> {
    static bool is_zero(const Rational &c) { return c.is_zero(); }
    static Rational zero_like(const Rational &) { return Rational(0); }
    static Rational one_like(const Rational &) { return Rational(1); }
    static Rational scale(const Rational &c, const Rational &r) { return c * r; }
    static std::optional<Rational> scalar_value(const Rational &c) { return c; }
};

template <>
struct coefficient_traits<AlgebraElement> {
    static bool is_zero(const AlgebraElement &c) { return c.is_zero(); }
    static AlgebraElement zero_like(const AlgebraElement &c) { return AlgebraElement::zero(c.algebra()); }
    static AlgebraElement one_like(const AlgebraElement &c) { return AlgebraElement::unit(c.algebra()); }
    static AlgebraElement scale(const AlgebraElement &c, const Rational &r) { return c * r; }
    static std::optional<Rational> scalar_value(const AlgebraElement &c) { return c.as_scalar(); }
};

template <typename C>
concept SeriesCoefficient = requires(const C &a, const C &b, const Rational &r) {
    { a + b } -> std::convertible_to<C>;
    { a - b } -> std::convertible_to<C>;
    { a * b } -> std::convertible_to<C>;
    { coefficient_traits<C>::is_zero(a) } -> std::convertible_to<bool>;
    { coefficient_traits<C>::scale(a, r) } -> std::convertible_to<C>;
};

template <SeriesCoefficient C>
class NovikovSeries {
    using traits = coefficient_traits<C>;

public:
    using coefficient_type = C;
    using term_map = std::map<Exponent, C>;

    explicit NovikovSeries(TruncationPolicy policy, C zero = C{}) : policy_(std::move(policy)), zero_(std::move(zero))
    {
    }

    static NovikovSeries constant(const TruncationPolicy &p, const C &c)
    {
        NovikovSeries s(p, traits::zero_like(c));
        s.add_term(p.zero_exponent(), c);
        return s;
    }

    static NovikovSeries monomial(const TruncationPolicy &p, const Exponent &e, const C &c)
    {
        NovikovSeries s(p, traits::zero_like(c));
        s.add_term(e, c);
        return s;
    }

    // Single variable y_i with coefficient c.
    static NovikovSeries variable(const TruncationPolicy &p, std::size_t i, const C &c)
    {
        if (i >= p.size()) {
            throw ConfigError("unknown Novikov variable index " + std::to_string(i));
        }
        return monomial(p, p.unit_exponent(i), c);
    }

    const TruncationPolicy &policy() const { return policy_; }
    const term_map &terms() const { return terms_; }
    const C &zero() const { return zero_; }
    C one() const { return traits::one_like(zero_); }
    bool is_zero() const { return terms_.empty(); }

    // Lowest weighted degree among nonzero terms; nullopt for the zero series.
    std::optional<int> order() const
    {
        std::optional<int> o;
        for (const auto &[e, c] : terms_) {
            int w = policy_.weight(e);
            if (!o || w < *o) {
                o = w;
            }
        }
        return o;
    }

    const C &coefficient(const Exponent &e) const
    {
        check_exponent(e);
        auto it = terms_.find(e);
        return it == terms_.end() ? zero_ : it->second;
    }

    C constant_term() const { return coefficient(policy_.zero_exponent()); }

    // Accumulates c into the coefficient of e; terms above the truncation
    // order are dropped.
    void add_term(const Exponent &e, const C &c)
    {
        check_exponent(e);
        if (!policy_.admits(e) || traits::is_zero(c)) {
            return;
        }
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
            return;
        }
        it->second = it->second + c;
        if (traits::is_zero(it->second)) {
            terms_.erase(it);
        }
    }

    NovikovSeries truncated(int order) const
    {
        auto p = policy_;
        p.max_total_weight = std::min(order, policy_.max_total_weight);
        NovikovSeries out(p, zero_);
        for (const auto &[e, c] : terms_) {
            out.add_term(e, c);
        }
        return out;
    }

    template <typename F>
    auto map(F &&f) const
    {
        using D = std::decay_t<decltype(f(zero_))>;
        NovikovSeries<D> out(policy_, f(zero_));
        for (const auto &[e, c] : terms_) {
            out.add_term(e, f(c));
        }
        return out;
    }

    NovikovSeries &operator+=(const NovikovSeries &o)
    {
        check_compatible(o);
        for (const auto &[e, c] : o.terms_) {
            add_term(e, c);
        }
        return *this;
    }

    NovikovSeries &operator-=(const NovikovSeries &o)
    {
        check_compatible(o);
        for (const auto &[e, c] : o.terms_) {
            add_term(e, -c);
        }
        return *this;
    }

    NovikovSeries &operator*=(const Rational &r)
    {
        if (r.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto &[e, c] : terms_) {
            c = traits::scale(c, r);
        }
        return *this;
    }

    friend NovikovSeries operator+(NovikovSeries a, const NovikovSeries &b) { return a += b; }
    friend NovikovSeries operator-(NovikovSeries a, const NovikovSeries &b) { return a -= b; }
    friend NovikovSeries operator*(NovikovSeries a, const Rational &r) { return a *= r; }
    friend NovikovSeries operator*(const Rational &r, NovikovSeries a) { return a *= r; }
    friend NovikovSeries operator-(NovikovSeries a) { return a *= Rational(-1); }

    friend NovikovSeries operator*(const NovikovSeries &a, const NovikovSeries &b)
    {
        a.check_compatible(b);
        NovikovSeries out(a.policy_, a.zero_);
        const int n = a.policy_.max_total_weight;
        for (const auto &[ea, ca] : a.terms_) {
            const int wa = a.policy_.weight(ea);
            for (const auto &[eb, cb] : b.terms_) {
                if (wa + a.policy_.weight(eb) > n) {
                    continue;
                }
                Exponent e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    // Coefficient-wise; windowed coefficients compare on their common window.
    friend bool operator==(const NovikovSeries &a, const NovikovSeries &b)
    {
        if (a.policy_.variables != b.policy_.variables) {
            return false;
        }
        for (const auto &[e, c] : a.terms_) {
            if (!(c == b.coefficient(e))) {
                return false;
            }
        }
        for (const auto &[e, c] : b.terms_) {
            if (!a.terms_.contains(e) && !(a.zero_ == c)) {
                return false;
            }
        }
        return true;
    }

    void check_compatible(const NovikovSeries &o) const
    {
        if (policy_.variables != o.policy_.variables || policy_.weights != o.policy_.weights) {
            throw ConfigError("series over incompatible truncation policies");
        }
        if (policy_.max_total_weight != o.policy_.max_total_weight) {
            throw ConfigError("series truncated at different orders (" + std::to_string(policy_.max_total_weight) +
                              " vs " + std::to_string(o.policy_.max_total_weight) + ")");
        }
    }

private:
    void check_exponent(const Exponent &e) const
    {
        if (e.size() != policy_.size()) {
            throw ConfigError("exponent " + exponent_string(e) + " has wrong number of variables");
        }
        for (int v : e) {
            if (v < 0) {
                throw ConfigError("exponent " + exponent_string(e) + " lies outside the effective cone");
            }
        }
    }

    TruncationPolicy policy_;
    C zero_;
    term_map terms_;
};

using ScalarSeries = NovikovSeries<Rational>;

template <SeriesCoefficient C>
NovikovSeries<C> pow(const NovikovSeries<C> &f, int k)
{
    auto r = NovikovSeries<C>::constant(f.policy(), f.one());
    auto base = f;
    while (k > 0) {
        if (k & 1) {
            r = r * base;
        }
        k >>= 1;
        if (k) {
            base = base * base;
        }
    }
    return r;
}

// exp(f) = sum f^k / k!; f must have zero constant term.
template <SeriesCoefficient C>
NovikovSeries<C> exp(const NovikovSeries<C> &f)
{
    if (!coefficient_traits<C>::is_zero(f.constant_term())) {
        throw DomainError("exp of a series with nonzero constant term");
    }
    auto result = NovikovSeries<C>::constant(f.policy(), f.one());
    auto term = result;
    for (int k = 1; !f.is_zero(); ++k) {
        term = term * f;
        term *= Rational(1, k);
        if (term.is_zero()) {
            break;
        }
        result += term;
    }
    return result;
}

// log(f) for f with constant term 1, via log(1+u) = sum (-1)^{k+1} u^k / k.
template <SeriesCoefficient C>
NovikovSeries<C> log(const NovikovSeries<C> &f)
{
    const auto one = NovikovSeries<C>::constant(f.policy(), f.one());
    const auto u = f - one;
    if (!coefficient_traits<C>::is_zero(u.constant_term())) {
        throw DomainError("log of a series whose constant term is not 1");
    }
    NovikovSeries<C> result(f.policy(), f.zero());
    auto power = one;
    for (int k = 1;; ++k) {
        power = power * u;
        if (power.is_zero()) {
            break;
        }
        result += power * Rational(k % 2 == 1 ? 1 : -1, k);
    }
    return result;
}

// 1/f as the geometric series sum_k (1 - f)^k, after normalising an
// invertible scalar constant term to 1.
template <SeriesCoefficient C>
NovikovSeries<C> reciprocal(const NovikovSeries<C> &f)
{
    const auto c0 = f.constant_term();
    const auto s = coefficient_traits<C>::scalar_value(c0);
    if (!s || s->is_zero()) {
        throw DomainError("reciprocal of a series whose constant term is not an invertible scalar");
    }
    const Rational inv = Rational(1) / *s;
    const auto one = NovikovSeries<C>::constant(f.policy(), f.one());
    const auto u = one - f * inv;
    auto result = one;
    auto power = one;
    while (true) {
        power = power * u;
        if (power.is_zero()) {
            break;
        }
        result += power;
    }
    return result * inv;
}

// y_i d/dy_i.
template <SeriesCoefficient C>
NovikovSeries<C> euler_derive(const NovikovSeries<C> &f, std::size_t i)
{
    if (i >= f.policy().size()) {
        throw ConfigError("euler_derive: unknown variable index " + std::to_string(i));
    }
    NovikovSeries<C> out(f.policy(), f.zero());
    for (const auto &[e, c] : f.terms()) {
        out.add_term(e, coefficient_traits<C>::scale(c, Rational(e[i])));
    }
    return out;
}

// Coefficient-wise product of a ring-valued series with a scalar series.
template <SeriesCoefficient C>
NovikovSeries<C> scale_by(const NovikovSeries<C> &f, const ScalarSeries &s)
{
    f.check_compatible(NovikovSeries<C>(s.policy(), f.zero()));
    NovikovSeries<C> out(f.policy(), f.zero());
    const int n = f.policy().max_total_weight;
    for (const auto &[ea, ca] : f.terms()) {
        const int wa = f.policy().weight(ea);
        for (const auto &[eb, cb] : s.terms()) {
            if (wa + f.policy().weight(eb) > n) {
                continue;
            }
            Exponent e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
            }
            out.add_term(e, coefficient_traits<C>::scale(ca, cb));
        }
    }
    return out;
}

// f(values_0, ..., values_{r-1}): substitutes a scalar series for each
// variable. Every value must have zero constant term unless f is a
// polynomial, which the truncation always guarantees here.
template <SeriesCoefficient C>
NovikovSeries<C> substitute(const NovikovSeries<C> &f, const std::vector<ScalarSeries> &values)
{
    if (values.size() != f.policy().size()) {
        throw ConfigError("substitute: one value per variable required");
    }
    const auto &p = values.front().policy();
    std::vector<std::vector<ScalarSeries>> powers(values.size());
    auto power = [&](std::size_t i, int k) -> const ScalarSeries & {
        auto &cache = powers[i];
        if (cache.empty()) {
            cache.push_back(ScalarSeries::constant(p, Rational(1)));
        }
        while (static_cast<int>(cache.size()) <= k) {
            cache.push_back(cache.back() * values[i]);
        }
        return cache[k];
    };
    NovikovSeries<C> out(p, f.zero());
    for (const auto &[e, c] : f.terms()) {
        auto mono = ScalarSeries::constant(p, Rational(1));
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] > 0) {
                mono = mono * power(i, e[i]);
            }
        }
        for (const auto &[me, mc] : mono.terms()) {
            out.add_term(me, coefficient_traits<C>::scale(c, mc));
        }
    }
    return out;
}

// Aggregates terms by the value of an integer functional on the exponent,
// e.g. t^beta -> t^{D.beta}.
template <SeriesCoefficient C>
std::map<int, C> collapse(const NovikovSeries<C> &f, const std::vector<int> &functional)
{
    std::map<int, C> out;
    for (const auto &[e, c] : f.terms()) {
        const int d = pairing(functional, e);
        auto it = out.find(d);
        if (it == out.end()) {
            out.emplace(d, c);
        } else {
            it->second = it->second + c;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = coefficient_traits<C>::is_zero(it->second) ? out.erase(it) : std::next(it);
    }
    return out;
}

inline std::string to_string(const ScalarSeries &s)
{
    if (s.is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : s.terms()) {
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            mono += (mono.empty() ? "" : "*") + s.policy().variables[i];
            if (e[i] > 1) {
                mono += "^" + std::to_string(e[i]);
            }
        }
        std::string coef = to_string(c);
        if (!first) {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) {
                coef = to_string(Rational(-c));
            }
        } else if (c.sign() < 0 && !mono.empty() && c == -1) {
            coef = "-1";
        }
        first = false;
        if (mono.empty()) {
            os << coef;
        } else if (coef == "1") {
            os << mono;
        } else if (coef == "-1") {
            os << "-" << mono;
        } else {
            os << coef << "*" << mono;
        }
    }
    return os.str();
}

} // namespace mirrorgen
