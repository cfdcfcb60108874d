#pragma once

// Algebra-valued Laurent polynomials in z over a validity window.
//
// Every element carries
//   floor: nothing below this exponent is ever stored,
//   lo:    coefficients at exponents >= lo are exact (kExact: exact everywhere),
//   top:   every coefficient above top is known to vanish.
// Products shrink the exact range when a factor was cut at the floor.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "mirrorgen/algebra.hpp"
#include "mirrorgen/errors.hpp"
#include "mirrorgen/rational.hpp"

namespace mirrorgen {

class ZLaurent {
public:
    static constexpr int kExact = std::numeric_limits<int>::min() / 4;

    ZLaurent() = default;

    ZLaurent(AlgebraPtr algebra, int floor) : alg_(std::move(algebra)), floor_(floor)
    {
        if (!alg_) {
            throw ConformanceError("z-Laurent element without algebra");
        }
    }

    static ZLaurent monomial(const AlgebraElement &c, int k, int floor)
    {
        ZLaurent r(c.algebra(), floor);
        r.add(k, c);
        r.normalize();
        return r;
    }

    static ZLaurent constant(const AlgebraElement &c, int floor) { return monomial(c, 0, floor); }

    // c + a z
    static ZLaurent linear(const AlgebraElement &c, const Rational &a, int floor)
    {
        ZLaurent r(c.algebra(), floor);
        r.add(0, c);
        r.add(1, AlgebraElement::unit(c.algebra()) * a);
        r.normalize();
        return r;
    }

    const AlgebraPtr &algebra() const { return alg_; }
    int floor() const { return floor_; }
    int top() const { return top_; }
    const std::map<int, AlgebraElement> &terms() const { return terms_; }

    bool exact() const { return lo_ == kExact; }

    // Lowest exponent whose coefficient is reliable.
    int lo() const { return std::max(lo_, floor_); }

    bool known_at(int k) const { return k > top_ || k >= lo(); }

    AlgebraElement coefficient(int k) const
    {
        if (k > top_) {
            return AlgebraElement::zero(alg_);
        }
        if (k < lo()) {
            std::ostringstream os;
            os << "z^" << k << " coefficient lies below the exact window (exact from z^" << lo() << ", floor z^"
               << floor_ << ")";
            throw WindowError(os.str());
        }
        auto it = terms_.find(k);
        return it == terms_.end() ? AlgebraElement::zero(alg_) : it->second;
    }

    // Provably zero: nothing was clipped at the floor either.
    bool is_zero() const { return terms_.empty() && exact(); }

    ZLaurent zero_like() const { return ZLaurent(alg_, floor_); }
    ZLaurent one_like() const { return constant(AlgebraElement::unit(alg_), floor_); }

    std::optional<Rational> as_scalar() const
    {
        if (lo_ > floor_) {
            return std::nullopt;
        }
        if (terms_.empty()) {
            return Rational(0);
        }
        if (terms_.size() != 1 || terms_.begin()->first != 0) {
            return std::nullopt;
        }
        return terms_.begin()->second.as_scalar();
    }

    ZLaurent &operator+=(const ZLaurent &o)
    {
        check_conform(o);
        for (const auto &[k, c] : o.terms_) {
            add(k, c);
        }
        lo_ = std::max(lo_, o.lo_);
        top_ = std::max(top_, o.top_);
        floor_ = std::max(floor_, o.floor_);
        normalize();
        return *this;
    }

    ZLaurent &operator-=(const ZLaurent &o) { return *this += -o; }

    ZLaurent &operator*=(const Rational &r)
    {
        for (auto &[k, c] : terms_) {
            c *= r;
        }
        normalize();
        return *this;
    }

    friend ZLaurent operator+(ZLaurent a, const ZLaurent &b) { return a += b; }
    friend ZLaurent operator-(ZLaurent a, const ZLaurent &b) { return a -= b; }
    friend ZLaurent operator*(ZLaurent a, const Rational &r) { return a *= r; }
    friend ZLaurent operator*(const Rational &r, ZLaurent a) { return a *= r; }

    friend ZLaurent operator-(ZLaurent a)
    {
        for (auto &[k, c] : a.terms_) {
            c = -c;
        }
        return a;
    }

    friend ZLaurent operator*(const ZLaurent &a, const ZLaurent &b)
    {
        a.check_conform(b);
        ZLaurent r(a.alg_, std::max(a.floor_, b.floor_));
        if ((a.terms_.empty() && a.exact()) || (b.terms_.empty() && b.exact())) {
            return r;
        }
        bool clipped = false;
        for (const auto &[i, ca] : a.terms_) {
            for (const auto &[j, cb] : b.terms_) {
                auto c = ca * cb;
                if (c.is_zero()) {
                    continue;
                }
                if (i + j >= r.floor_) {
                    r.add(i + j, c);
                } else {
                    clipped = true;
                }
            }
        }
        r.top_ = a.top_ + b.top_;
        r.lo_ = kExact;
        if (!a.exact()) {
            r.lo_ = std::max(r.lo_, a.lo_ + b.top_);
        }
        if (!b.exact()) {
            r.lo_ = std::max(r.lo_, a.top_ + b.lo_);
        }
        if (clipped) {
            r.lo_ = std::max(r.lo_, r.floor_);
        }
        r.normalize();
        return r;
    }

    // Same terms, but only trusted at exponents >= k.
    ZLaurent known_from(int k) const
    {
        ZLaurent r = *this;
        r.lo_ = std::max(r.lo_, k);
        r.normalize();
        return r;
    }

    // Multiplication by z^k.
    ZLaurent shifted(int k) const
    {
        ZLaurent r(alg_, floor_);
        for (const auto &[e, c] : terms_) {
            if (e + k >= floor_) {
                r.terms_.emplace(e + k, c);
            } else {
                r.lo_ = std::max(r.lo_, floor_);
            }
        }
        r.lo_ = std::max(r.lo_, lo_ == kExact ? kExact : lo_ + k);
        r.top_ = top_ == kExact ? kExact : top_ + k;
        r.normalize();
        return r;
    }

    // Applies a linear map between algebras coefficient-wise.
    template <typename F>
    ZLaurent mapped(const AlgebraPtr &target, F &&f) const
    {
        ZLaurent r(target, floor_);
        for (const auto &[k, c] : terms_) {
            r.add(k, f(c));
        }
        r.lo_ = lo_;
        r.top_ = top_;
        r.normalize();
        return r;
    }

    // Coefficient-wise equality on the common exact window.
    friend bool operator==(const ZLaurent &a, const ZLaurent &b)
    {
        const auto d = a - b;
        return std::none_of(d.terms_.begin(), d.terms_.end(), [&](const auto &t) { return t.first >= d.lo(); });
    }

    std::string str() const
    {
        if (terms_.empty()) {
            return exact() ? "0" : "O(z^" + std::to_string(lo() - 1) + ")";
        }
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            os << (first ? "" : " + ") << "(" << it->second.str() << ")";
            if (it->first != 0) {
                os << "*z^" << it->first;
            }
            first = false;
        }
        if (!exact() && lo() > floor_) {
            os << " + O(z^" << lo() - 1 << ")";
        }
        return os.str();
    }

    void check_conform(const ZLaurent &o) const
    {
        if (!alg_ || alg_ != o.alg_) {
            throw ConformanceError("z-Laurent operands over different algebras");
        }
    }

private:
    void add(int k, const AlgebraElement &c)
    {
        if (c.is_zero()) {
            return;
        }
        if (k < floor_) {
            lo_ = std::max(lo_, floor_);
            top_ = std::max(top_, k);
            return;
        }
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
        }
        top_ = std::max(top_, k);
    }

    // Drops zero terms, clips below the floor and tightens top.
    void normalize()
    {
        int highest = kExact;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second.is_zero()) {
                it = terms_.erase(it);
            } else if (it->first < floor_) {
                lo_ = std::max(lo_, floor_);
                top_ = std::max(top_, it->first);
                it = terms_.erase(it);
            } else {
                highest = std::max(highest, it->first);
                ++it;
            }
        }
        if (exact()) {
            top_ = highest;
        } else {
            top_ = std::min(top_, std::max(highest, lo_ - 1));
        }
    }

    AlgebraPtr alg_;
    std::map<int, AlgebraElement> terms_;
    int lo_ = kExact;
    int top_ = kExact;
    int floor_ = -1;
};

// 1/(c + a z) = (1/(a z)) sum_k (-c/(a z))^k for nilpotent c and a != 0.
inline ZLaurent nilpotent_reciprocal(const AlgebraElement &c, const Rational &a, int floor)
{
    if (a.is_zero()) {
        throw DomainError("nilpotent_reciprocal: a must be nonzero");
    }
    if (!c.has_positive_degree()) {
        throw DomainError("nilpotent_reciprocal: " + c.str() + " is not nilpotent");
    }
    const auto &alg = c.algebra();
    ZLaurent r(alg, floor);
    auto power = AlgebraElement::unit(alg);
    Rational scale = Rational(1) / a;
    for (int k = 0; !power.is_zero(); ++k) {
        r += ZLaurent::monomial(power * scale, -k - 1, floor);
        power = power * c;
        scale *= Rational(-1) / a;
        if (k > alg->top_degree() + 1) {
            throw DomainError("nilpotent_reciprocal: " + c.str() + " is not nilpotent");
        }
    }
    return r;
}

} // namespace mirrorgen
