#include <map>
#include <random>

#include <gtest/gtest.h>

#include "mirrorgen/mirrorgen.hpp"

using namespace mirrorgen;

namespace {

ZLaurent random_laurent(const AlgebraPtr &alg, std::mt19937_64 &rng, int lo, int hi, int floor)
{
    std::uniform_int_distribution<int> d(-3, 3);
    std::uniform_int_distribution<std::size_t> b(0, alg->dimension() - 1);
    ZLaurent r(alg, floor);
    for (int k = lo; k <= hi; ++k) {
        r += ZLaurent::monomial(AlgebraElement::basis(alg, b(rng)) * Rational(d(rng)), k, floor);
    }
    return r;
}

// Full convolution with no window at all.
std::map<int, AlgebraElement> convolve(const ZLaurent &a, const ZLaurent &b)
{
    std::map<int, AlgebraElement> out;
    for (const auto &[i, ca] : a.terms()) {
        for (const auto &[j, cb] : b.terms()) {
            auto it = out.try_emplace(i + j, AlgebraElement::zero(a.algebra())).first;
            it->second += ca * cb;
        }
    }
    std::erase_if(out, [](const auto &kv) { return kv.second.is_zero(); });
    return out;
}

} // namespace

TEST(Laurent, ProductMatchesConvolutionInsideWindow)
{
    std::mt19937_64 rng(21);
    const auto p3 = make_projective_space(3);
    const int floor = -12;
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_laurent(p3, rng, -6, 1, floor);
        const auto b = random_laurent(p3, rng, -7, 1, floor);
        const auto prod = a * b;
        const auto oracle = convolve(a, b);
        for (int k = prod.lo(); k <= 2; ++k) {
            auto it = oracle.find(k);
            const auto expected = it == oracle.end() ? AlgebraElement::zero(p3) : it->second;
            EXPECT_EQ(prod.coefficient(k), expected) << "z^" << k;
        }
        // Nothing below the floor can be trusted once the product spills past it.
        if (!oracle.empty() && oracle.begin()->first < floor) {
            EXPECT_FALSE(prod.exact());
            EXPECT_THROW(prod.coefficient(floor - 1), WindowError);
        }
    }
}

TEST(Laurent, ExactProductsStayExact)
{
    const auto p2 = make_projective_space(2);
    const auto h = AlgebraElement::basis(p2, 1);
    const auto a = ZLaurent::linear(h, Rational(2), -5);
    const auto b = ZLaurent::linear(h * Rational(-1), Rational(3), -5);
    const auto prod = a * b;
    EXPECT_TRUE(prod.exact());
    EXPECT_EQ(prod.coefficient(2), AlgebraElement::unit(p2) * Rational(6));
    EXPECT_EQ(prod.coefficient(1), h);
    EXPECT_EQ(prod.coefficient(0), h.pow(2) * Rational(-1));
    EXPECT_TRUE(prod.coefficient(-5).is_zero());
    EXPECT_THROW(prod.coefficient(-6), WindowError);
}

TEST(Laurent, NilpotentReciprocal)
{
    const auto p3 = make_projective_space(3);
    const auto h = AlgebraElement::basis(p3, 1);
    const int floor = -10;
    for (int a = 1; a <= 4; ++a) {
        const auto lin = ZLaurent::linear(h * Rational(a + 1), Rational(a), floor);
        const auto inv = nilpotent_reciprocal(h * Rational(a + 1), Rational(a), floor);
        EXPECT_EQ(lin * inv, lin.one_like());
    }
    EXPECT_THROW(nilpotent_reciprocal(AlgebraElement::unit(p3), Rational(1), floor), DomainError);
    EXPECT_THROW(nilpotent_reciprocal(h, Rational(0), floor), DomainError);
}

TEST(Laurent, KnownFromLimitsTheExactRange)
{
    const auto p2 = make_projective_space(2);
    auto f = ZLaurent::monomial(AlgebraElement::unit(p2), -3, -8) + ZLaurent::monomial(AlgebraElement::unit(p2), 0, -8);
    const auto g = f.known_from(-2);
    EXPECT_FALSE(g.exact());
    EXPECT_NO_THROW(g.coefficient(-2));
    EXPECT_THROW(g.coefficient(-3), WindowError);
    EXPECT_TRUE(g.coefficient(5).is_zero());
    // Multiplying by z^{-1} moves the unknown region up by one.
    const auto z = ZLaurent::monomial(AlgebraElement::unit(p2), 1, -8);
    EXPECT_THROW((g * z).coefficient(-2), WindowError);
    EXPECT_NO_THROW((g * z).coefficient(-1));
}

TEST(Laurent, ShiftMovesAllExponents)
{
    const auto p2 = make_projective_space(2);
    const auto f = ZLaurent::linear(AlgebraElement::basis(p2, 1), Rational(1), -6);
    const auto s = f.shifted(-3);
    EXPECT_EQ(s.coefficient(-2), AlgebraElement::unit(p2));
    EXPECT_EQ(s.coefficient(-3), AlgebraElement::basis(p2, 1));
    EXPECT_TRUE(s.coefficient(0).is_zero());
}

TEST(Relative, SectorProductsOnQuarticPair)
{
    const auto g = builtin_geometry("p3_quartic");
    const auto s = g.state();
    const auto one_d = AlgebraElement::unit(g.divisor);
    const auto h = AlgebraElement::basis(g.divisor, "h");
    const auto H = AlgebraElement::basis(g.ambient, "H");

    const auto m1 = RelativeLaurent::monomial(s, -1, one_d);
    const auto p1 = RelativeLaurent::monomial(s, 1, one_d);
    const auto p2 = RelativeLaurent::monomial(s, 2, one_d);

    // Contact orders cancel: pushed forward into the ambient sector.
    EXPECT_EQ(m1 * p1, RelativeLaurent::monomial(s, 0, H * Rational(4)));
    // Positive total: picks up the normal bundle class.
    EXPECT_EQ(m1 * p2, RelativeLaurent::monomial(s, 1, h * Rational(4)));
    // Negative total: plain restriction.
    const auto m3 = RelativeLaurent::monomial(s, -3, h);
    EXPECT_EQ(m3 * p1, RelativeLaurent::monomial(s, -2, h));
    EXPECT_EQ(m1 * m1, RelativeLaurent::monomial(s, -2, one_d));
    // Positive sectors restrict and add contact.
    const auto amb = RelativeLaurent::monomial(s, 0, H);
    EXPECT_EQ(amb * p1, RelativeLaurent::monomial(s, 1, h));
    EXPECT_EQ(amb * amb, RelativeLaurent::monomial(s, 0, H * H));
}

TEST(Relative, ProductIsCommutativeAndUnital)
{
    std::mt19937_64 rng(4);
    for (const auto &name : builtin_geometry_names()) {
        const auto g = builtin_geometry(name);
        const auto s = g.state();
        std::vector<RelativeLaurent> xs;
        for (int contact = -2; contact <= 2; ++contact) {
            const auto &alg = s->algebra_for(contact);
            for (std::size_t i = 0; i < alg->dimension(); ++i) {
                xs.push_back(RelativeLaurent::monomial(s, contact, AlgebraElement::basis(alg, i), -1));
            }
        }
        const auto one = RelativeLaurent::unit(s);
        for (const auto &a : xs) {
            EXPECT_EQ(one * a, a) << name;
            for (const auto &b : xs) {
                EXPECT_EQ(a * b, b * a) << name << ": " << a.str() << " * " << b.str();
            }
        }
    }
}

TEST(Relative, SectorAlgebraIsEnforced)
{
    const auto g = builtin_geometry("p2_cubic");
    const auto s = g.state();
    const auto amb = ZLaurent::constant(AlgebraElement::unit(g.ambient), s->floor);
    const auto div = ZLaurent::constant(AlgebraElement::unit(g.divisor), s->floor);
    EXPECT_THROW(RelativeLaurent::component(s, 1, amb), ConformanceError);
    EXPECT_THROW(RelativeLaurent::component(s, 0, div), ConformanceError);
    // Ambient classes are restricted when placed in a contact sector.
    const auto H = AlgebraElement::basis(g.ambient, "H");
    EXPECT_EQ(RelativeLaurent::monomial(s, 2, H),
              RelativeLaurent::monomial(s, 2, AlgebraElement::basis(g.divisor, "pt") * Rational(3)));
}

TEST(XLaurent, PowerMatchesBinomialExpansion)
{
    // (x + t^3 x^{-2})^n = sum C(n,k) t^{3k} x^{n-3k}
    const auto p = TruncationPolicy::single("t", 12);
    const auto f = XLaurentSeries::monomial(p, 1, {0}, Rational(1)) + XLaurentSeries::monomial(p, -2, {3}, Rational(1));
    for (int n = 0; n <= 6; ++n) {
        const auto fn = pow(f, n);
        for (int k = 0; k <= n && 3 * k <= 12; ++k) {
            EXPECT_EQ(fn.x_coefficient(n - 3 * k).coefficient({3 * k}), Rational(binomial(n, k)));
        }
    }
}

TEST(Laurent, ClippedValuesAreNotZero)
{
    const auto p3 = make_projective_space(3);
    const auto one = AlgebraElement::unit(p3);
    // Everything lies below the floor, so nothing is known about it.
    const auto low = ZLaurent::monomial(one, -3, -2);
    EXPECT_TRUE(low.terms().empty());
    EXPECT_FALSE(low.is_zero());
    const auto z3 = ZLaurent::monomial(one, 3, -2);
    EXPECT_THROW((low * z3).coefficient(0), WindowError);
    // Series arithmetic keeps such coefficients instead of dropping them.
    const auto p = TruncationPolicy::single("y", 2);
    NovikovSeries<ZLaurent> s(p, ZLaurent(p3, -2));
    s.add_term({1}, low);
    EXPECT_FALSE(s.is_zero());
}
