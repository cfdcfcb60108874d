#include <map>
#include <random>

#include <gtest/gtest.h>

#include "mirrorgen/mirrorgen.hpp"

using namespace mirrorgen;

namespace {

TruncationPolicy two_vars(int order) { return TruncationPolicy::make({"y1", "y2"}, {1, 2}, order); }

ScalarSeries random_series(const TruncationPolicy &p, std::mt19937_64 &rng, bool constant_term)
{
    std::uniform_int_distribution<int> d(-4, 4);
    ScalarSeries s(p);
    for (const auto &e : p.exponents()) {
        if (!constant_term && p.weight(e) == 0) {
            continue;
        }
        s.add_term(e, Rational(d(rng), 1 + (d(rng) + 4) % 3));
    }
    return s;
}

// Dense schoolbook product with its own truncation test.
std::map<std::pair<int, int>, Rational> naive_product(const ScalarSeries &a, const ScalarSeries &b, int order)
{
    std::map<std::pair<int, int>, Rational> out;
    for (const auto &[ea, ca] : a.terms()) {
        for (const auto &[eb, cb] : b.terms()) {
            const int i = ea[0] + eb[0];
            const int j = ea[1] + eb[1];
            if (i + 2 * j <= order) {
                out[{i, j}] += ca * cb;
            }
        }
    }
    std::erase_if(out, [](const auto &kv) { return kv.second.is_zero(); });
    return out;
}

} // namespace

TEST(Series, ProductMatchesSchoolbookOracle)
{
    std::mt19937_64 rng(11);
    const auto p = two_vars(7);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_series(p, rng, true);
        const auto b = random_series(p, rng, true);
        const auto prod = a * b;
        const auto oracle = naive_product(a, b, 7);
        ASSERT_EQ(prod.terms().size(), oracle.size());
        for (const auto &[e, c] : prod.terms()) {
            EXPECT_EQ(c, oracle.at({e[0], e[1]}));
        }
    }
}

TEST(Series, TruncationDropsHeavyTerms)
{
    const auto p = two_vars(4);
    const auto y2 = ScalarSeries::variable(p, 1, Rational(1));
    EXPECT_FALSE((y2 * y2).is_zero());
    EXPECT_TRUE((y2 * y2 * y2).is_zero());
    EXPECT_TRUE(p.admits({4, 0}));
    EXPECT_FALSE(p.admits({3, 1}));
}

TEST(Series, ExponentialOfLinearTerm)
{
    const auto p = TruncationPolicy::single("y", 10);
    const auto e = exp(ScalarSeries::variable(p, 0, Rational(6)));
    Rational expected(1);
    for (int k = 0; k <= 10; ++k) {
        EXPECT_EQ(e.coefficient({k}), expected) << k;
        expected *= Rational(6, k + 1);
    }
}

TEST(Series, ExpLogAreInverse)
{
    std::mt19937_64 rng(5);
    const auto p = two_vars(6);
    const auto one = ScalarSeries::constant(p, Rational(1));
    for (int trial = 0; trial < 5; ++trial) {
        const auto f = random_series(p, rng, false);
        EXPECT_EQ(log(exp(f)), f);
        EXPECT_EQ(exp(log(one + f)), one + f);
        EXPECT_EQ(exp(f) * exp(-f), one);
    }
    EXPECT_THROW(exp(one), DomainError);
    EXPECT_THROW(log(one * Rational(2)), DomainError);
}

TEST(Series, ReciprocalAndPower)
{
    std::mt19937_64 rng(9);
    const auto p = two_vars(6);
    const auto one = ScalarSeries::constant(p, Rational(1));
    for (int trial = 0; trial < 5; ++trial) {
        auto f = random_series(p, rng, false) + one * Rational(3, 2);
        EXPECT_EQ(reciprocal(f) * f, one);
        auto naive = one;
        for (int k = 0; k < 5; ++k) {
            naive = naive * f;
        }
        EXPECT_EQ(pow(f, 5), naive);
    }
    EXPECT_THROW(reciprocal(random_series(p, rng, false)), DomainError);
}

TEST(Series, EulerDerivative)
{
    const auto p = two_vars(6);
    ScalarSeries f(p);
    f.add_term({2, 1}, Rational(5));
    f.add_term({1, 0}, Rational(-1));
    const auto d1 = euler_derive(f, 0);
    EXPECT_EQ(d1.coefficient({2, 1}), Rational(10));
    EXPECT_EQ(d1.coefficient({1, 0}), Rational(-1));
    const auto d2 = euler_derive(f, 1);
    EXPECT_EQ(d2.coefficient({2, 1}), Rational(5));
    EXPECT_EQ(d2.coefficient({1, 0}), Rational(0));
    EXPECT_THROW(euler_derive(f, 2), ConfigError);
}

TEST(Series, SubstitutionComposes)
{
    // f(y) = y + y^2 at y = t/(1 - t) gives t/(1-t)^2 = sum k t^k.
    const auto p = TruncationPolicy::single("t", 8);
    ScalarSeries f(p);
    f.add_term({1}, Rational(1));
    f.add_term({2}, Rational(1));
    ScalarSeries geo(p);
    for (int k = 1; k <= 8; ++k) {
        geo.add_term({k}, Rational(1));
    }
    const auto r = substitute(f, {geo});
    for (int k = 1; k <= 8; ++k) {
        EXPECT_EQ(r.coefficient({k}), Rational(k));
    }
}

TEST(Series, CollapseAlongFunctional)
{
    const auto p = two_vars(6);
    ScalarSeries f(p);
    f.add_term({1, 1}, Rational(2));
    f.add_term({3, 0}, Rational(1));
    f.add_term({0, 1}, Rational(-4));
    f.add_term({2, 0}, Rational(4));
    const auto c = collapse(f, {1, 2});
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c.at(3), Rational(3));
}

TEST(Series, IncompatiblePoliciesAreRejected)
{
    const auto a = ScalarSeries::constant(two_vars(4), Rational(1));
    const auto b = ScalarSeries::constant(two_vars(5), Rational(1));
    const auto c = ScalarSeries::constant(TruncationPolicy::make({"y1", "y3"}, {1, 2}, 4), Rational(1));
    EXPECT_THROW(a + b, ConfigError);
    EXPECT_THROW(a * c, ConfigError);
    EXPECT_THROW(TruncationPolicy::make({"y"}, {0}, 4), ConfigError);
    EXPECT_THROW(TruncationPolicy::make({}, {}, 4), ConfigError);
}

TEST(Series, AlgebraValuedCoefficients)
{
    const auto p3 = make_projective_space(3);
    const auto h = AlgebraElement::basis(p3, 1);
    const auto p = TruncationPolicy::single("q", 5);
    const auto f = NovikovSeries<AlgebraElement>::variable(p, 0, h);
    const auto e = exp(f);
    EXPECT_EQ(e.coefficient({3}), h.pow(3) * Rational(1, 6));
    EXPECT_TRUE(e.coefficient({4}).is_zero());
}
