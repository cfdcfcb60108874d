#pragma once

// Lagrange inversion for simple-pole Laurent series, the Bell-polynomial
// exponential identity, and the round trip g -> W -> g.

#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mirrorgen/periods.hpp"

namespace mirrorgen {

// Truncated power series in one variable, c[k] = coefficient of v^k, exact
// for k < c.size().
using Poly = std::vector<Rational>;

inline Poly poly_mul(const Poly &a, const Poly &b, std::size_t n)
{
    Poly r(n, Rational(0));
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

// 1/a for a[0] != 0, to n terms.
inline Poly poly_reciprocal(const Poly &a, std::size_t n)
{
    if (a.empty() || a[0].is_zero()) {
        throw DomainError("reciprocal of a power series with zero constant term");
    }
    Poly r(n, Rational(0));
    r[0] = Rational(1) / a[0];
    for (std::size_t k = 1; k < n; ++k) {
        Rational s(0);
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) {
            s += a[j] * r[k - j];
        }
        r[k] = -s / a[0];
    }
    return r;
}

inline Poly poly_pow(const Poly &a, int k, std::size_t n)
{
    Poly r(n, Rational(0));
    if (n > 0) {
        r[0] = Rational(1);
    }
    for (int i = 0; i < k; ++i) {
        r = poly_mul(r, a, n);
    }
    return r;
}

inline Rational poly_at(const Poly &a, std::size_t k) { return k < a.size() ? a[k] : Rational(0); }

// ---------------------------------------------------------------------------
// Lagrange inversion

// f(x) = x^{-1} + sum_{k>=0} tail[k] x^k. With polynomial = false only the
// listed tail coefficients are known.
struct SimplePoleLaurent {
    Rational pole_coefficient{1};
    Poly tail;
    bool polynomial = true;

    void validate() const
    {
        if (pole_coefficient != 1) {
            throw DomainError("simple-pole Laurent series must be normalised to x^{-1} + ...");
        }
    }

    // Coefficients of x f(x) = 1 + sum tail[k] x^{k+1}, to n terms.
    Poly shifted(std::size_t n) const
    {
        Poly h(n, Rational(0));
        if (n > 0) {
            h[0] = pole_coefficient;
        }
        for (std::size_t k = 0; k < tail.size() && k + 1 < n; ++k) {
            h[k + 1] = tail[k];
        }
        return h;
    }

    std::string str() const
    {
        std::ostringstream os;
        os << "x^-1";
        for (std::size_t k = 0; k < tail.size(); ++k) {
            if (!tail[k].is_zero()) {
                os << " + (" << to_string(tail[k]) << ")*x^" << k;
            }
        }
        if (!polynomial) {
            os << " + O(x^" << tail.size() << ")";
        }
        return os.str();
    }
};

// Series in u = omega^{-1}: coeffs[k] multiplies u^k, exact for k < coeffs.size().
struct InverseSeries {
    Poly coeffs;
};

// Laurent series in u starting at u^{-v}, exact through u^{precision}.
struct ULaurent {
    std::map<int, Rational> terms;
    int precision = 0;

    bool equals_omega() const { return terms.size() == 1 && terms.begin()->first == -1 && terms.begin()->second == 1; }

    std::string str() const
    {
        std::ostringstream os;
        bool first = true;
        for (const auto &[k, c] : terms) {
            os << (first ? "" : " + ") << "(" << to_string(c) << ")*w^" << -k;
            first = false;
        }
        os << (first ? "" : " + ") << "O(w^" << -(precision + 1) << ")";
        return os.str();
    }
};

// g(omega) = sum_{k=1}^{order} omega^{-k}/k [f^k]_{x^{-1}}.
inline InverseSeries lagrange_invert(const SimplePoleLaurent &f, int order)
{
    f.validate();
    if (order < 1) {
        throw DomainError("lagrange_invert needs order >= 1");
    }
    // [f^k]_{x^{-1}} = [(x f)^k]_{x^{k-1}} needs tail coefficients below k - 1.
    if (!f.polynomial && static_cast<int>(f.tail.size()) < order - 1) {
        throw TruncationError("lagrange_invert to order " + std::to_string(order) + " needs " +
                              std::to_string(order - 1) + " tail coefficients, have " +
                              std::to_string(f.tail.size()));
    }
    const auto n = static_cast<std::size_t>(order);
    const Poly h = f.shifted(n);
    InverseSeries g{Poly(n + 1, Rational(0))};
    Poly power(n, Rational(0));
    power[0] = Rational(1);
    for (int k = 1; k <= order; ++k) {
        power = poly_mul(power, h, n);
        g.coeffs[k] = power[k - 1] / Rational(k);
    }
    return g;
}

// f(g(omega)) through u^order, u = omega^{-1}.
inline ULaurent compose(const SimplePoleLaurent &f, const InverseSeries &g, int order)
{
    f.validate();
    const auto &c = g.coeffs;
    if (!c.empty() && !c[0].is_zero()) {
        throw DomainError("compose: inner series has an omega^0 term");
    }
    std::size_t v = 1;
    while (v < c.size() && c[v].is_zero()) {
        ++v;
    }
    if (v >= c.size()) {
        throw DomainError("compose: inner series vanishes to its known precision");
    }
    const int vi = static_cast<int>(v);
    // 1/g = u^{-v} / (c_v + c_{v+1} u + ...) needs c through u^{order + 2v}.
    if (static_cast<int>(c.size()) <= order + 2 * vi) {
        throw TruncationError("compose to order " + std::to_string(order) + " needs the inner series through omega^-" +
                              std::to_string(order + 2 * vi));
    }
    if (!f.polynomial && static_cast<int>(f.tail.size()) * vi <= order) {
        throw TruncationError("compose: unknown tail terms of f reach omega^-" +
                              std::to_string(static_cast<int>(f.tail.size()) * vi));
    }
    const auto n_rec = static_cast<std::size_t>(order + vi + 1);
    Poly unit(c.begin() + vi, c.end());
    const Poly rec = poly_reciprocal(unit, n_rec);

    ULaurent out;
    out.precision = order;
    auto add = [&](int k, const Rational &x) {
        if (x.is_zero() || k > order) {
            return;
        }
        auto &slot = out.terms[k];
        slot += x;
        if (slot.is_zero()) {
            out.terms.erase(k);
        }
    };
    for (std::size_t i = 0; i < rec.size(); ++i) {
        add(static_cast<int>(i) - vi, rec[i] * f.pole_coefficient);
    }
    const auto n = static_cast<std::size_t>(order + 1);
    Poly power(n, Rational(0));
    power[0] = Rational(1);
    for (std::size_t j = 0; j < f.tail.size(); ++j) {
        if (j > 0) {
            power = poly_mul(power, c, n);
        }
        if (f.tail[j].is_zero()) {
            continue;
        }
        for (std::size_t k = 0; k < n; ++k) {
            add(static_cast<int>(k), f.tail[j] * power[k]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bell identity
//   exp(sum_{k>0} (1/k)[f^k]_{x^k} y^k) = sum_{k>0} (1/k)[f^k]_{x^{k-1}} y^{k-1}

struct CoefficientCheck {
    int index = 0;
    Rational lhs;
    Rational rhs;
    bool match = false;
};

struct IdentityReport {
    std::vector<CoefficientCheck> coefficients;
    bool pass = true;
};

// f given as 1 + f[1] x + f[2] x^2 + ..., f[0] must be 1.
inline IdentityReport bell_identity_check(const Poly &f, int order)
{
    if (f.empty() || f[0] != 1) {
        throw DomainError("bell_identity_check needs a power series with constant term 1");
    }
    const auto p = TruncationPolicy::single("y", order);
    const auto nx = static_cast<std::size_t>(order + 2);
    ScalarSeries s(p), rhs(p);
    Poly power(nx, Rational(0));
    power[0] = Rational(1);
    for (int k = 1; k <= order + 1; ++k) {
        power = poly_mul(power, f, nx);
        if (k <= order) {
            s.add_term({k}, poly_at(power, k) / Rational(k));
        }
        rhs.add_term({k - 1}, poly_at(power, k - 1) / Rational(k));
    }
    const auto lhs = exp(s);
    IdentityReport r;
    for (int k = 0; k <= order; ++k) {
        CoefficientCheck c{k, lhs.coefficient({k}), rhs.coefficient({k}), false};
        c.match = c.lhs == c.rhs;
        r.pass = r.pass && c.match;
        r.coefficients.push_back(c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Round trip g(y) = sum_{k>0} (1/k) [W^k]_{x^0} y^k

struct RoundTripReport {
    ScalarSeries expected;
    ScalarSeries recovered;
    bool pass = false;
};

// Single-variable g with D.beta = m on the generator. The t-degree e of
// [W^k]_{x^0} satisfies m e = k.
inline RoundTripReport roundtrip_g_W(const ScalarSeries &g, int m, int order)
{
    if (g.policy().size() != 1) {
        throw ConfigError("roundtrip_g_W expects a single Novikov variable; collapse by D.beta first");
    }
    if (m < 1) {
        throw DomainError("roundtrip_g_W needs m >= 1");
    }
    const auto p = TruncationPolicy::single(g.policy().variables[0], m * order, m);
    ScalarSeries expected(p);
    for (const auto &[e, c] : g.terms()) {
        if (e[0] <= order) {
            expected.add_term(e, c);
        }
    }
    const auto W = proper_potential_from(expected, {m});
    ScalarSeries recovered(p);
    auto power = W.W;
    for (int k = 1; k <= m * order; ++k) {
        if (k > 1) {
            power = power * W.W;
        }
        const auto constant = power.x_coefficient(0);
        for (const auto &[e, c] : constant.terms()) {
            if (m * e[0] != k) {
                throw DomainError("[W^" + std::to_string(k) + "]_{x^0} has a term at t^" + std::to_string(e[0]));
            }
            recovered.add_term(e, c / Rational(k));
        }
    }
    const bool ok = recovered == expected;
    return {std::move(expected), std::move(recovered), ok};
}

struct SeriesCheck {
    int index = 0;
    ScalarSeries lhs;
    ScalarSeries rhs;
    bool match = false;
};

// [W^k]_{x^0} against [f^k]_{x^k} for f = x W(x^{-1}) = 1 + sum w_beta t^beta x^{D.beta}.
inline std::vector<SeriesCheck> theta0_crosscheck(const ProperPotential &W)
{
    const auto &p = W.W.policy();
    XLaurentSeries f(p);
    for (const auto &[k, s] : W.W.terms()) {
        f.add(1 - k, s);
    }
    std::vector<SeriesCheck> out;
    auto wp = W.W;
    auto fp = f;
    for (int k = 1; k <= p.max_total_weight; ++k) {
        if (k > 1) {
            wp = wp * W.W;
            fp = fp * f;
        }
        SeriesCheck c{k, wp.x_coefficient(0), fp.x_coefficient(k), false};
        c.match = c.lhs == c.rhs;
        out.push_back(std::move(c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random inputs for the property suites

class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

    // p/q with |p| <= 9, 1 <= q <= 9.
    Rational rational(bool nonzero = false)
    {
        std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
        int a = num(rng_);
        while (nonzero && a == 0) {
            a = num(rng_);
        }
        return Rational(a, den(rng_));
    }

    SimplePoleLaurent simple_pole(int tail_terms)
    {
        SimplePoleLaurent f;
        for (int k = 0; k < tail_terms; ++k) {
            f.tail.push_back(rational());
        }
        return f;
    }

    Poly unit_series(int order)
    {
        Poly f{Rational(1)};
        for (int k = 1; k <= order; ++k) {
            f.push_back(rational());
        }
        return f;
    }

    // g = sum_{k=1}^{terms} c_k y^k.
    ScalarSeries g_series(const TruncationPolicy &p, int terms)
    {
        ScalarSeries g(p);
        for (int k = 1; k <= terms; ++k) {
            g.add_term({k}, rational());
        }
        return g;
    }

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

private:
    std::mt19937_64 rng_;
};

struct SuiteReport {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure;
    bool pass() const { return cases > 0 && failures == 0; }
};

inline SuiteReport lagrange_suite(std::uint64_t seed, int cases, int order = 10, int tail_terms = 6)
{
    RandomSource rs(seed);
    SuiteReport r{"lagrange", cases, 0, ""};
    for (int i = 0; i < cases; ++i) {
        const auto f = rs.simple_pole(tail_terms);
        const auto g = lagrange_invert(f, order + 2);
        const auto h = compose(f, g, order);
        if (!h.equals_omega()) {
            if (++r.failures == 1) {
                r.first_failure = "f = " + f.str() + " gives " + h.str();
            }
        }
    }
    return r;
}

inline SuiteReport bell_suite(std::uint64_t seed, int cases, int order = 12)
{
    RandomSource rs(seed);
    SuiteReport r{"bell", cases, 0, ""};
    for (int i = 0; i < cases; ++i) {
        const auto f = rs.unit_series(order + 1);
        if (!bell_identity_check(f, order).pass) {
            if (++r.failures == 1) {
                r.first_failure = "case " + std::to_string(i);
            }
        }
    }
    return r;
}

inline SuiteReport roundtrip_suite(std::uint64_t seed, int cases, int order = 8, int terms = 4)
{
    RandomSource rs(seed);
    SuiteReport r{"roundtrip", cases, 0, ""};
    for (int i = 0; i < cases; ++i) {
        const int m = rs.uniform(1, 5);
        const auto p = TruncationPolicy::single("y", order);
        const auto g = rs.g_series(p, terms);
        const auto rep = roundtrip_g_W(g, m, order);
        if (!rep.pass) {
            if (++r.failures == 1) {
                r.first_failure = "m = " + std::to_string(m) + ", g = " + to_string(g) + " -> " + to_string(rep.recovered);
            }
        }
    }
    return r;
}

} // namespace mirrorgen
