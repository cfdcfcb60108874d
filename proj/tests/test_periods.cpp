#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "mirrorgen/mirrorgen.hpp"

using namespace mirrorgen;

namespace {

// Dense univariate power series in q, truncated at degree n.
using Poly = std::vector<Rational>;

Poly mul(const Poly &a, const Poly &b)
{
    Poly out(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; i + j < a.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// exp(f) for f(0) = 0 from n E_n = sum_k k f_k E_{n-k}.
Poly exp_poly(const Poly &f)
{
    Poly e(f.size(), Rational(0));
    e[0] = 1;
    for (std::size_t n = 1; n < f.size(); ++n) {
        for (std::size_t k = 1; k <= n; ++k) {
            e[n] += Rational(static_cast<long>(k)) * f[k] * e[n - k];
        }
        e[n] /= Rational(static_cast<long>(n));
    }
    return e;
}

Poly compose(const Poly &g, const Poly &y)
{
    Poly out(g.size(), Rational(0));
    Poly power(g.size(), Rational(0));
    power[0] = 1;
    for (std::size_t d = 0; d < g.size(); ++d) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += g[d] * power[i];
        }
        power = mul(power, y);
    }
    return out;
}

// Coefficients of exp(g(y(q))) with y = q exp(-m g(y)), by fixed point.
Poly hand_potential(const Poly &g, int m)
{
    const std::size_t n = g.size();
    Poly y(n, Rational(0));
    y[1] = 1;
    for (std::size_t it = 0; it < n; ++it) {
        Poly scaled = compose(g, y);
        for (auto &c : scaled) {
            c *= Rational(-m);
        }
        const auto e = exp_poly(scaled);
        Poly next(n, Rational(0));
        for (std::size_t i = 1; i < n; ++i) {
            next[i] = e[i - 1];
        }
        y = next;
    }
    return exp_poly(compose(g, y));
}

Rational projective_g(int n, int d)
{
    return Rational(factorial((n + 1) * d - 1)) / Rational(pow(factorial(d), n + 1));
}

PairGeometry projective(int n, int top_degree)
{
    auto g = builtin_geometry(n == 2 ? "p2_cubic" : "p3_quartic");
    g.set_order((n + 1) * top_degree);
    return g;
}

} // namespace

TEST(Periods, QuantumPeriodOfProjectivePairs)
{
    for (int n : {2, 3}) {
        const auto g = projective(n, 4);
        const auto G = quantum_period(g);
        const auto R = regularize(G);
        EXPECT_EQ(G.coefficient(0), Rational(1));
        for (int d = 1; d <= 4; ++d) {
            const auto fd = Rational(pow(factorial(d), n + 1));
            EXPECT_EQ(G.coefficient((n + 1) * d), Rational(1) / fd) << n << " " << d;
            EXPECT_EQ(R.coefficient((n + 1) * d), Rational(factorial((n + 1) * d)) / fd) << n << " " << d;
        }
        EXPECT_EQ(G.coefficient(n + 2), Rational(0));
        EXPECT_THROW(regularize(R), DomainError);
    }
}

TEST(Periods, PotentialMatchesHandExpansion)
{
    for (int n : {2, 3}) {
        const int top = 4;
        const auto g = projective(n, top);
        const auto W = proper_potential(g);
        Poly gp(top + 1, Rational(0));
        for (int d = 1; d <= top; ++d) {
            gp[d] = projective_g(n, d);
        }
        const auto oracle = hand_potential(gp, n + 1);
        EXPECT_EQ(W.W.x_coefficient(1).coefficient({0}), Rational(1));
        for (int d = 1; d <= top; ++d) {
            const int x_exp = 1 - (n + 1) * d;
            EXPECT_EQ(W.W.x_coefficient(x_exp).coefficient({d}), oracle[d]) << n << " " << d;
        }
    }
    const auto w2 = proper_potential(projective(2, 3)).W;
    EXPECT_EQ(w2.x_coefficient(-2).coefficient({1}), Rational(2));
    EXPECT_EQ(w2.x_coefficient(-5).coefficient({2}), Rational(5));
    EXPECT_EQ(w2.x_coefficient(-8).coefficient({3}), Rational(32));
    const auto w3 = proper_potential(projective(3, 2)).W;
    EXPECT_EQ(w3.x_coefficient(-3).coefficient({1}), Rational(6));
    EXPECT_EQ(w3.x_coefficient(-7).coefficient({2}), Rational(189));
}

TEST(Periods, ThetaCoefficients)
{
    const auto W2 = proper_potential(projective(2, 3));
    EXPECT_TRUE(theta_coefficient(W2, 2).is_zero());
    EXPECT_EQ(theta_coefficient(W2, 3).coefficient({1}), Rational(6));
    EXPECT_THROW(theta_coefficient(W2, 10), TruncationError);
    EXPECT_THROW(theta_coefficient(W2, 0), DomainError);
    const auto W3 = proper_potential(projective(3, 2));
    EXPECT_EQ(theta_coefficient(W3, 8).coefficient({2}), Rational(2520));
}

TEST(Periods, VanishingMirrorMapGivesTrivialPotential)
{
    const auto p = TruncationPolicy::single("y", 9, 3);
    const auto W = proper_potential_from(ScalarSeries(p), {3});
    ASSERT_EQ(W.W.terms().size(), 1u);
    EXPECT_EQ(W.W.x_coefficient(1).coefficient({0}), Rational(1));
    const auto pi = classical_period(W);
    EXPECT_EQ(pi.by_degree(), (std::map<int, Rational>{{0, Rational(1)}}));
}

TEST(Periods, ClassicalPeriodEqualsRegularizedQuantumPeriod)
{
    for (int n : {2, 3}) {
        const auto g = projective(n, 4);
        const auto r = verify_period_theorem(g);
        EXPECT_TRUE(r.pass);
        EXPECT_TRUE(r.all_match);
        EXPECT_FALSE(r.first_mismatch.has_value());
        EXPECT_EQ(r.rows.size(), 5u);
    }
}

TEST(Periods, NegativeControlIsCaughtAtThePerturbedDegree)
{
    for (int n : {2, 3}) {
        const auto g = projective(n, 3);
        std::set<int> seen;
        for (std::uint64_t seed : {0u, 1u, 2u, 7u, 11u}) {
            const auto r = verify_period_theorem(g, {true, seed});
            ASSERT_TRUE(r.perturbed.has_value());
            const int d = g.degree(r.perturbed->curve);
            EXPECT_TRUE(r.pass) << "seed " << seed;
            EXPECT_FALSE(r.all_match);
            EXPECT_EQ(r.first_mismatch, d);
            seen.insert(d);
        }
        EXPECT_EQ(seen.size(), 3u);
    }
}

TEST(Periods, DeltaDRelations)
{
    for (const auto &name : builtin_geometry_names()) {
        auto g = builtin_geometry(name);
        if (name == "blp3_k3") {
            g.set_order(5);
        }
        const auto r = delta_D_check(g);
        EXPECT_TRUE(r.pass) << name;
        EXPECT_EQ(r.checks.size(), 4u);
    }
}

TEST(Periods, DeltaDDetectsCorruptedPotential)
{
    auto W = proper_potential(projective(3, 3));
    W.W.add_term(-7, {2}, Rational(1));
    const auto r = delta_D_check_from(W);
    EXPECT_FALSE(r.pass);
}

TEST(Periods, ImportedInvariantsReproduceTheSameReport)
{
    const auto g = projective(3, 3);
    const auto text = emit_invariant_table(emit_invariants(g));
    auto h = projective(3, 3);
    h.use_invariant_table(parse_invariant_table(text));
    EXPECT_EQ(h.j_source, JSource::invariant_table);
    const auto a = verify_period_theorem(g);
    const auto b = verify_period_theorem(h);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].classical, b.rows[i].classical);
        EXPECT_EQ(a.rows[i].regularized, b.rows[i].regularized);
    }
    EXPECT_TRUE(b.pass);
    EXPECT_EQ(quantum_period(h).per_beta, quantum_period(g).per_beta);
}

TEST(Periods, ToricPairHasNoQuantumPeriodSource)
{
    auto g = builtin_geometry("blp3_k3");
    g.set_order(4);
    EXPECT_THROW(quantum_period(g), UnsupportedError);
    EXPECT_NO_THROW(classical_period(proper_potential(g)));
}

TEST(Periods, DeformedQuantumPeriodReadsDeformedTable)
{
    const std::string dir = std::string(MIRRORGEN_SOURCE_DIR) + "/tests/data/";
    auto g = load_geometry(read_text_file(dir + "f2_section.ini"));
    auto t = parse_invariant_table(read_text_file(dir + "f2_invariants.csv"));
    g.use_invariant_table(t);
    ASSERT_FALSE(tau_D(g).is_zero());
    // Neither absolute nor deformed invariants are available yet.
    EXPECT_THROW(quantum_period(g), MissingDataError);
    // D.(0,2) = 2, so the table entry lands at degree 2 with psi power 0.
    t.insert({"X_tau", {0, 2}, 0, "pt"}, Rational(3, 5));
    t.insert({"X_tau", {0, 3}, 0, "pt"}, Rational(7));
    g.use_invariant_table(t);
    const auto G = quantum_period(g);
    EXPECT_EQ(G.label, "tau_D-deformed");
    EXPECT_EQ(G.coefficient(2), Rational(3, 5));
    EXPECT_EQ(G.coefficient(3), Rational(0));
    EXPECT_EQ(regularize(G).coefficient(2), Rational(6, 5));
}
