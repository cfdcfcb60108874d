#pragma once

// I-functions of pairs, their normalisation to J-functions, mirror maps and
// the change of variables y <-> q.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mirrorgen/algebra.hpp"
#include "mirrorgen/geometry.hpp"
#include "mirrorgen/laurent.hpp"
#include "mirrorgen/relative.hpp"
#include "mirrorgen/series.hpp"

namespace mirrorgen {

using ClassSeries = NovikovSeries<ZLaurent>;
using RelativeSeries = NovikovSeries<RelativeLaurent>;

// prod_{a<=0}(u + a z) / prod_{a<=c}(u + a z)
inline ZLaurent hypergeometric_factor(const AlgebraElement &u, int c, int floor)
{
    ZLaurent r = ZLaurent::constant(AlgebraElement::unit(u.algebra()), floor);
    if (c > 0) {
        for (int a = 1; a <= c; ++a) {
            r = r * nilpotent_reciprocal(u, Rational(a), floor);
        }
    } else {
        for (int a = c + 1; a <= 0; ++a) {
            r = r * ZLaurent::linear(u, Rational(a), floor);
        }
    }
    if (!r.exact()) {
        throw WindowError("hypergeometric factor for c = " + std::to_string(c) + " does not fit the z window (floor " +
                          std::to_string(floor) + ")");
    }
    return r;
}

// value * prod_{a<=c}(D + a z) / prod_{a<=0}(D + a z). For c < 0 the factor D
// in the denominator is cancelled against value, which must be divisible by D.
inline ZLaurent apply_relative_modification(const ZLaurent &value, const AlgebraElement &d, int c)
{
    const int floor = value.floor();
    if (c >= 0) {
        ZLaurent r = value;
        for (int a = 1; a <= c; ++a) {
            r = ZLaurent::linear(d, Rational(a), floor) * r;
        }
        return r;
    }
    ZLaurent r = value.mapped(value.algebra(), [&](const AlgebraElement &v) { return divide_by(v, d); });
    for (int a = c + 1; a < 0; ++a) {
        r = r * nilpotent_reciprocal(d, Rational(a), floor);
    }
    return r;
}

// ---------------------------------------------------------------------------
// J-functions of X without the log prefactor: J = exp(sum p_i log y_i / z) * sum J_beta y^beta,
// J_0 = z.

namespace detail {

inline ZLaurent projective_j_coefficient(const PairGeometry &g, int d, int floor)
{
    const auto &h = *g.hyperplane;
    ZLaurent r = ZLaurent::monomial(AlgebraElement::unit(g.ambient), 1, floor);
    for (int k = 1; k <= d; ++k) {
        const auto inv = nilpotent_reciprocal(h, Rational(k), floor);
        for (int e = 0; e <= g.projective_dim; ++e) {
            r = r * inv;
        }
    }
    return r;
}

// One-point data: only the unit component is known, and only down to the
// exponent of the point insertion.
inline ZLaurent table_j_coefficient(const PairGeometry &g, const std::string &kind, const AlgebraPtr &alg,
                                    const Exponent &beta, int degree, int floor)
{
    ZLaurent r(alg, floor);
    for (const auto &[k, v] : g.invariants.entries) {
        if (k.kind == kind && k.curve == beta) {
            r += ZLaurent::monomial(AlgebraElement::unit(alg) * v, -k.psi_power - 1, floor);
        }
    }
    return r.known_from(1 - degree);
}

} // namespace detail

inline ClassSeries j_function(const PairGeometry &g, const TruncationPolicy &p)
{
    const int floor = p.z_min;
    ClassSeries out(p, ZLaurent(g.ambient, floor));
    out.add_term(p.zero_exponent(), ZLaurent::monomial(AlgebraElement::unit(g.ambient), 1, floor));
    switch (g.j_source) {
    case JSource::closed_form_projective:
        for (int d = 1; p.weight({d}) <= p.max_total_weight; ++d) {
            out.add_term({d}, detail::projective_j_coefficient(g, d, floor));
        }
        return out;
    case JSource::invariant_table:
        if (!g.invariants.has_kind("X")) {
            throw MissingDataError("geometry '" + g.name + "' needs an invariant table with X one-point invariants");
        }
        for (const auto &beta : p.exponents()) {
            const int c = g.degree(beta);
            if (beta == p.zero_exponent()) {
                continue;
            }
            if (c <= 0) {
                throw MissingDataError("one-point invariants do not determine J at class " + exponent_string(beta) +
                                       " with D.beta = " + std::to_string(c));
            }
            const bool listed = std::any_of(g.invariants.entries.begin(), g.invariants.entries.end(),
                                            [&](const auto &e) { return e.first.kind == "X" && e.first.curve == beta; });
            if (c >= 2 && !listed) {
                throw MissingDataError("invariant table has no X entry for class " + exponent_string(beta) +
                                       "; it supports a lower order than " + std::to_string(p.max_total_weight));
            }
            out.add_term(beta, detail::table_j_coefficient(g, "X", g.ambient, beta, c, floor));
        }
        return out;
    case JSource::toric_hypergeometric:
        break;
    }
    throw UnsupportedError("geometry '" + g.name + "' has no absolute J-function source; use closed_form_I");
}

// ---------------------------------------------------------------------------
// I-functions

// I = exp(sum_i p_i log y_i / z) * series.
struct IFunction {
    StatePtr space;
    std::vector<AlgebraElement> log_classes;
    RelativeSeries series;
};

// Mirror map tau = sum_i p_i log y_i + series, series taken at z^0.
struct MirrorMap {
    std::vector<AlgebraElement> log_classes;
    RelativeSeries series;
};

inline RelativeSeries empty_relative_series(const StatePtr &s, const TruncationPolicy &p)
{
    return RelativeSeries(p, RelativeLaurent::zero(s));
}

inline RelativeLaurent place_in_sector(const StatePtr &s, int contact, const ZLaurent &ambient_value)
{
    if (contact == 0) {
        return RelativeLaurent::component(s, 0, ambient_value);
    }
    return RelativeLaurent::component(
        s, contact, ambient_value.mapped(s->divisor, [&](const AlgebraElement &c) { return s->restriction(c); }));
}

// Hypergeometric I-function of a toric-ambient pair.
inline IFunction closed_form_I(const PairGeometry &g)
{
    if (!g.toric) {
        throw ConfigError("geometry '" + g.name + "' has no toric data");
    }
    const auto &p = g.policy;
    const int floor = p.z_min;
    auto s = g.state();
    IFunction out{s, g.log_classes, empty_relative_series(s, p)};
    const auto one = AlgebraElement::unit(g.ambient);
    for (const auto &beta : p.exponents()) {
        ZLaurent v = ZLaurent::monomial(one, 1, floor);
        for (const auto &b : g.toric->bundles) {
            const int n = pairing(b.functional, beta);
            if (n < 0) {
                throw UnsupportedError("bundle class pairs negatively with " + exponent_string(beta));
            }
            for (int k = 1; k <= n; ++k) {
                v = v * ZLaurent::linear(b.cls, Rational(k), floor);
            }
        }
        for (const auto &u : g.toric->denominators) {
            v = v * hypergeometric_factor(u.cls, pairing(u.functional, beta), floor);
        }
        const int c = pairing(g.toric->relative.functional, beta);
        if (c > 0) {
            v = v * nilpotent_reciprocal(g.toric->relative.cls, Rational(c), floor);
        }
        out.series.add_term(beta, place_in_sector(s, -c, v));
    }
    return out;
}

// Contact-zero sector of the I-function of (Y, D_0), Y = P(O + N), with the
// fibre Novikov variable set to 1. Values live in H*(D)[h0]/(h0^2 - N h0).
struct LocalModelI {
    AlgebraPtr algebra;
    AlgebraElement h0;
    ClassSeries series;
};

inline AlgebraPtr local_model_algebra(const AlgebraPtr &d, const AlgebraElement &normal)
{
    const std::size_t n = d->dimension();
    std::vector<std::string> labels = d->labels();
    std::vector<int> degrees = d->degrees();
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(d->label(i) == "1" ? "h0" : d->label(i) + "*h0");
        degrees.push_back(d->degree(i) + 1);
    }
    std::vector<GradedAlgebra::StructureConstant> sc;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto prod = AlgebraElement::basis(d, i) * AlgebraElement::basis(d, j);
            const auto prod_n = prod * normal;
            for (std::size_t k = 0; k < n; ++k) {
                if (!prod[k].is_zero()) {
                    sc.push_back({i, j, k, prod[k]});
                    sc.push_back({i, j + n, k + n, prod[k]});
                    sc.push_back({i + n, j, k + n, prod[k]});
                }
                if (!prod_n[k].is_zero()) {
                    sc.push_back({i + n, j + n, k + n, prod_n[k]});
                }
            }
            for (auto [a, b] : {std::pair{i, j}, std::pair{i, j + n}, std::pair{i + n, j}, std::pair{i + n, j + n}}) {
                sc.push_back({a, b, 0, Rational(0)});
            }
        }
    }
    std::optional<std::size_t> point;
    if (d->point_index()) {
        point = *d->point_index() + n;
    }
    auto y = std::make_shared<GradedAlgebra>("Y(" + d->name() + ")", labels, degrees, sc, d->unit_index(), point);
    y->validate();
    return y;
}

inline LocalModelI i_function_YD0(const PairGeometry &g)
{
    const auto &p = g.policy;
    const int floor = p.z_min;
    const auto normal = g.restriction(g.divisor_class);
    auto y = local_model_algebra(g.divisor, normal);
    const std::size_t n = g.divisor->dimension();
    const auto h0 = AlgebraElement::basis(y, g.divisor->unit_index() + n);
    LocalModelI out{y, h0, ClassSeries(p, ZLaurent(y, floor))};
    out.series.add_term(p.zero_exponent(), ZLaurent::monomial(AlgebraElement::unit(y), 1, floor));
    if (!g.invariants.has_kind("D")) {
        if (g.tau_source == TauSource::zero) {
            return out;
        }
        throw MissingDataError("geometry '" + g.name + "' needs D one-point invariants for the local model");
    }
    std::map<Exponent, bool> seen;
    for (const auto &[k, v] : g.invariants.entries) {
        if (k.kind != "D" || !p.admits(k.curve) || seen[k.curve]) {
            continue;
        }
        seen[k.curve] = true;
        const int c1n = g.degree(k.curve);
        const int top = -k.psi_power - 1;
        auto jd = detail::table_j_coefficient(g, "D", y, k.curve, 1 - top, floor);
        out.series.add_term(k.curve, jd * hypergeometric_factor(h0, c1n, floor));
    }
    return out;
}

// tau_D as a series of ambient classes; every coefficient is z-polynomial.
inline ClassSeries tau_D(const PairGeometry &g)
{
    const auto &p = g.policy;
    const int floor = p.z_min;
    ClassSeries out(p, ZLaurent(g.ambient, floor));
    switch (g.tau_source) {
    case TauSource::zero:
        return out;
    case TauSource::closed_form_from_one_point_invariants:
        for (const auto &[k, v] : g.invariants.entries) {
            if (k.kind != "D" || !p.admits(k.curve)) {
                continue;
            }
            const int d = k.psi_power + 2;
            if (d < 2 || d != -g.degree(k.curve)) {
                continue;
            }
            const Rational coef = v * Rational(d % 2 == 0 ? -1 : 1) * Rational(factorial(d - 1));
            out.add_term(k.curve, ZLaurent::constant(g.divisor_class * coef, floor));
        }
        return out;
    case TauSource::table: {
        const auto local = i_function_YD0(g);
        const auto s = g.state();
        const std::size_t n = g.divisor->dimension();
        for (const auto &[beta, v] : local.series.terms()) {
            if (beta == p.zero_exponent()) {
                continue;
            }
            ZLaurent t(g.ambient, floor);
            for (int e = 0; e <= v.top(); ++e) {
                const auto c = v.coefficient(e);
                RationalVector delta(n, Rational(0));
                for (std::size_t i = 0; i < n; ++i) {
                    if (!c[i].is_zero()) {
                        throw DomainError("local-model mirror map has a component outside h0 * H*(Y) at " +
                                          exponent_string(beta));
                    }
                    delta[i] = c[i + n];
                }
                t += ZLaurent::monomial(s->push(AlgebraElement(g.divisor, delta)), e, floor);
            }
            out.add_term(beta, t);
        }
        return out;
    }
    }
    return out;
}

inline bool is_zero_tau(const ClassSeries &t) { return t.is_zero(); }

// J_X(tau_D) for tau_D = f(y) D at z^0, via the divisor equation
// J(f D) = exp(f D / z) sum_beta exp(f D.beta) J_beta y^beta.
inline ClassSeries j_function_at(const PairGeometry &g, const ClassSeries &tau)
{
    const auto &p = g.policy;
    const int floor = p.z_min;
    auto j = j_function(g, p);
    if (tau.is_zero()) {
        return j;
    }
    ScalarSeries f(p);
    for (const auto &[beta, v] : tau.terms()) {
        if (v.top() > 0 || !v.exact() || v.terms().size() != 1 || v.terms().begin()->first != 0) {
            throw MissingDataError("tau_D with z-dependence: external data required");
        }
        const auto c = v.coefficient(0);
        std::optional<Rational> ratio;
        for (std::size_t i = 0; i < c.coefficients().size() && !ratio; ++i) {
            if (!g.divisor_class[i].is_zero()) {
                ratio = c[i] / g.divisor_class[i];
            }
        }
        if (!ratio || !(g.divisor_class * *ratio == c)) {
            throw MissingDataError("tau_D outside the span of D: external data required");
        }
        f.add_term(beta, *ratio);
    }
    ClassSeries shift(p, ZLaurent(g.ambient, floor));
    for (const auto &[beta, c] : f.terms()) {
        shift.add_term(beta, ZLaurent::monomial(g.divisor_class * c, -1, floor));
    }
    const auto prefactor = exp(shift);
    ClassSeries sum(p, ZLaurent(g.ambient, floor));
    for (const auto &[beta, jb] : j.terms()) {
        auto mono = ClassSeries::monomial(p, beta, jb);
        sum += scale_by(mono, exp(f * Rational(g.degree(beta))));
    }
    return prefactor * sum;
}

inline IFunction relative_I(const PairGeometry &g, const ClassSeries &tau)
{
    if (g.j_source == JSource::toric_hypergeometric) {
        if (!tau.is_zero()) {
            throw UnsupportedError("toric I-function with nonzero tau_D");
        }
        return closed_form_I(g);
    }
    const auto &p = g.policy;
    auto s = g.state();
    IFunction out{s, g.log_classes, empty_relative_series(s, p)};
    const auto j = j_function_at(g, tau);
    for (const auto &[beta, jb] : j.terms()) {
        const int c = g.degree(beta);
        ZLaurent v = apply_relative_modification(jb, g.divisor_class, c);
        if (c > 0) {
            v = v * nilpotent_reciprocal(g.divisor_class, Rational(c), p.z_min);
        }
        out.series.add_term(beta, place_in_sector(s, -c, v));
    }
    return out;
}

inline IFunction relative_I(const PairGeometry &g) { return relative_I(g, tau_D(g)); }

// Policy with an extra variable x1 of weight 1.
inline TruncationPolicy extended_policy(const TruncationPolicy &p)
{
    auto q = p;
    q.variables.push_back("x1");
    q.weights.push_back(1);
    return q;
}

inline IFunction extended_I(const PairGeometry &g, const ClassSeries &tau)
{
    if (g.j_source == JSource::toric_hypergeometric) {
        throw UnsupportedError("extended I-function needs an absolute J-function source");
    }
    const auto &p = g.policy;
    const auto q = extended_policy(p);
    const int floor = p.z_min;
    auto s = g.state();
    IFunction out{s, g.log_classes, empty_relative_series(s, q)};
    const auto j = j_function_at(g, tau);
    for (const auto &[beta, jb] : j.terms()) {
        const int c = g.degree(beta);
        const ZLaurent base = apply_relative_modification(jb, g.divisor_class, c);
        auto e = beta;
        e.push_back(0);
        for (int k = 0; q.admits(e); ++k, ++e.back()) {
            ZLaurent v = base.shifted(-k) * (Rational(1) / Rational(factorial(k)));
            if (c > k) {
                v = v * nilpotent_reciprocal(g.divisor_class, Rational(c - k), floor);
            }
            out.series.add_term(e, place_in_sector(s, k - c, v));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Normalisation J = I / I_1

struct Normalized {
    RelativeSeries I1;
    RelativeSeries I0;
    RelativeSeries J;
    MirrorMap tau;
    bool unit_I1 = false;
    bool string_shape = false;
};

inline RelativeSeries z_part(const RelativeSeries &s, int k)
{
    return s.map([k](const RelativeLaurent &c) { return c.z_part(k); });
}

inline Normalized split_and_normalize(const IFunction &I, int z_max = 1)
{
    const auto &p = I.series.policy();
    for (const auto &[beta, c] : I.series.terms()) {
        if (c.top() > 1 || c.top() > z_max) {
            throw DomainError("I-function has z^" + std::to_string(c.top()) + " content at " + exponent_string(beta));
        }
    }
    Normalized out{z_part(I.series, 1), z_part(I.series, 0), I.series, {I.log_classes, I.series}, false, false};
    const auto one = RelativeSeries::constant(p, RelativeLaurent::unit(I.space));
    if (!(out.I1.constant_term() == RelativeLaurent::unit(I.space))) {
        throw DomainError("I_1 does not start with the unit class");
    }
    out.unit_I1 = out.I1 == one;
    if (out.unit_I1) {
        out.J = I.series;
        out.tau.series = out.I0;
    } else {
        const auto r = reciprocal(out.I1);
        out.J = I.series * r;
        out.tau.series = out.I0 * r;
    }
    out.string_shape = z_part(out.J, 1) == one && z_part(out.J, 0) == out.tau.series;
    return out;
}

// ---------------------------------------------------------------------------
// g(y) and the change of variables

struct ContactComponent {
    Exponent beta;
    int contact;
    AlgebraElement value;
};

struct GExtraction {
    ScalarSeries g;
    std::vector<ContactComponent> contact_minus_one;
};

// Sums the unit coefficients of the [1]_{-d} components, d >= 2. The
// [.]_{-1} components are reported separately.
inline GExtraction extract_g(const RelativeSeries &tau)
{
    GExtraction out{ScalarSeries(tau.policy()), {}};
    for (const auto &[beta, c] : tau.terms()) {
        for (const auto &[n, zl] : c.components()) {
            if (n >= 0) {
                continue;
            }
            const auto v = zl.coefficient(0);
            if (v.is_zero()) {
                continue;
            }
            if (n == -1) {
                out.contact_minus_one.push_back({beta, n, v});
                continue;
            }
            const auto s = v.as_scalar();
            if (!s) {
                throw DomainError("component [" + v.str() + "]_" + std::to_string(n) + " at " + exponent_string(beta) +
                                  " is not a multiple of [1]");
            }
            out.g.add_term(beta, *s);
        }
    }
    return out;
}

// log q_i = log y_i + m_i g(y).
struct MirrorChange {
    ScalarSeries g;
    std::vector<int> m;
    std::vector<ScalarSeries> y_of_q;

    // q_i(y) = y_i exp(m_i g(y)).
    std::vector<ScalarSeries> q_of_y() const
    {
        std::vector<ScalarSeries> out;
        const auto &p = g.policy();
        for (std::size_t i = 0; i < m.size(); ++i) {
            out.push_back(ScalarSeries::variable(p, i, Rational(1)) * exp(g * Rational(m[i])));
        }
        return out;
    }
};

inline MirrorChange invert_mirror_map(const ScalarSeries &g, const std::vector<int> &m)
{
    const auto &p = g.policy();
    if (m.size() != p.size()) {
        throw ConfigError("m vector does not match the Novikov variables");
    }
    if (!g.constant_term().is_zero()) {
        throw DomainError("g must have Novikov order >= 1");
    }
    MirrorChange out{g, m, {}};
    std::vector<ScalarSeries> q;
    for (std::size_t i = 0; i < p.size(); ++i) {
        q.push_back(ScalarSeries::variable(p, i, Rational(1)));
    }
    auto y = q;
    for (int it = 0; it < p.max_total_weight; ++it) {
        const auto gy = substitute(g, y);
        std::vector<ScalarSeries> next;
        for (std::size_t i = 0; i < p.size(); ++i) {
            next.push_back(q[i] * exp(gy * Rational(-m[i])));
        }
        if (next == y) {
            break;
        }
        y = std::move(next);
    }
    out.y_of_q = y;
    return out;
}

} // namespace mirrorgen
