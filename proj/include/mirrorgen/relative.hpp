#pragma once

// Relative state space: classes [gamma]_k indexed by contact order k.
// Sector 0 carries ambient classes, every other sector divisor classes.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "mirrorgen/algebra.hpp"
#include "mirrorgen/laurent.hpp"

namespace mirrorgen {

struct RelativeStateSpace {
    AlgebraPtr ambient;
    AlgebraPtr divisor;
    RestrictionMap restriction;
    AlgebraElement divisor_class; // D in the ambient algebra
    AlgebraElement normal;        // D restricted to D
    RationalMatrix pushforward;   // iota_*, empty when unavailable
    int floor = -11;

    static std::shared_ptr<const RelativeStateSpace> make(const RestrictionMap &r, const AlgebraElement &d, int floor)
    {
        auto s = std::make_shared<RelativeStateSpace>();
        s->ambient = r.source();
        s->divisor = r.target();
        s->restriction = r;
        s->divisor_class = d;
        s->normal = r(d);
        s->floor = floor;
        try {
            s->pushforward = pushforward_matrix(r);
        } catch (const UnsupportedError &) {
            s->pushforward.clear();
        }
        return s;
    }

    const AlgebraPtr &algebra_for(int contact) const { return contact == 0 ? ambient : divisor; }

    AlgebraElement push(const AlgebraElement &delta) const
    {
        if (pushforward.empty()) {
            throw UnsupportedError("no pushforward from '" + divisor->name() + "' to '" + ambient->name() + "'");
        }
        return apply_matrix(pushforward, ambient, delta);
    }
};

using StatePtr = std::shared_ptr<const RelativeStateSpace>;

class RelativeLaurent {
public:
    RelativeLaurent() = default;

    explicit RelativeLaurent(StatePtr space) : space_(std::move(space)) {}

    static RelativeLaurent zero(const StatePtr &s) { return RelativeLaurent(s); }

    static RelativeLaurent unit(const StatePtr &s)
    {
        return component(s, 0, ZLaurent::constant(AlgebraElement::unit(s->ambient), s->floor));
    }

    static RelativeLaurent component(const StatePtr &s, int contact, const ZLaurent &value)
    {
        RelativeLaurent r(s);
        r.add(contact, value);
        return r;
    }

    // [c]_contact z^k, restricting c to D when the contact is nonzero.
    static RelativeLaurent monomial(const StatePtr &s, int contact, const AlgebraElement &c, int k = 0)
    {
        return component(s, contact, ZLaurent::monomial(s->algebra_for(contact) == c.algebra() ? c : s->restriction(c),
                                                         k, s->floor));
    }

    const StatePtr &space() const { return space_; }
    const std::map<int, ZLaurent> &components() const { return comps_; }

    ZLaurent component(int contact) const
    {
        auto it = comps_.find(contact);
        return it == comps_.end() ? ZLaurent(space_->algebra_for(contact), space_->floor) : it->second;
    }

    // z^k coefficient of every sector.
    std::map<int, AlgebraElement> z_coefficient(int k) const
    {
        std::map<int, AlgebraElement> out;
        for (const auto &[n, c] : comps_) {
            auto v = c.coefficient(k);
            if (!v.is_zero()) {
                out.emplace(n, v);
            }
        }
        return out;
    }

    RelativeLaurent z_part(int k) const
    {
        RelativeLaurent r(space_);
        for (const auto &[n, c] : comps_) {
            r.add(n, ZLaurent::monomial(c.coefficient(k), 0, space_->floor));
        }
        return r;
    }

    RelativeLaurent shifted(int k) const
    {
        RelativeLaurent r(space_);
        for (const auto &[n, c] : comps_) {
            r.add(n, c.shifted(k));
        }
        return r;
    }

    int top() const
    {
        int t = ZLaurent::kExact;
        for (const auto &[n, c] : comps_) {
            t = std::max(t, c.top());
        }
        return t;
    }

    bool is_zero() const { return comps_.empty(); }
    RelativeLaurent zero_like() const { return RelativeLaurent(space_); }
    RelativeLaurent one_like() const { return unit(space_); }

    std::optional<Rational> as_scalar() const
    {
        if (comps_.empty()) {
            return Rational(0);
        }
        if (comps_.size() != 1 || comps_.begin()->first != 0) {
            return std::nullopt;
        }
        return comps_.begin()->second.as_scalar();
    }

    RelativeLaurent &operator+=(const RelativeLaurent &o)
    {
        check_conform(o);
        for (const auto &[n, c] : o.comps_) {
            add(n, c);
        }
        return *this;
    }

    RelativeLaurent &operator-=(const RelativeLaurent &o) { return *this += -o; }

    RelativeLaurent &operator*=(const Rational &r)
    {
        if (r.is_zero()) {
            comps_.clear();
        }
        for (auto &[n, c] : comps_) {
            c *= r;
        }
        return *this;
    }

    friend RelativeLaurent operator+(RelativeLaurent a, const RelativeLaurent &b) { return a += b; }
    friend RelativeLaurent operator-(RelativeLaurent a, const RelativeLaurent &b) { return a -= b; }
    friend RelativeLaurent operator*(RelativeLaurent a, const Rational &r) { return a *= r; }
    friend RelativeLaurent operator*(const Rational &r, RelativeLaurent a) { return a *= r; }

    friend RelativeLaurent operator-(RelativeLaurent a)
    {
        for (auto &[n, c] : a.comps_) {
            c = -c;
        }
        return a;
    }

    // Sector product:
    //   i, j >= 0            [r(a) r(b)]_{i+j}  (plain ambient product for 0, 0)
    //   i < 0 <= j, s = i+j  [a r(b)]_s for s < 0, [iota_*(a r(b))]_0 for s = 0,
    //                        [a N r(b)]_s for s > 0
    //   i, j < 0             [a b]_{i+j}
    friend RelativeLaurent operator*(const RelativeLaurent &a, const RelativeLaurent &b)
    {
        a.check_conform(b);
        RelativeLaurent r(a.space_);
        for (const auto &[i, ca] : a.comps_) {
            for (const auto &[j, cb] : b.comps_) {
                r.accumulate_product(i, ca, j, cb);
            }
        }
        return r;
    }

    friend bool operator==(const RelativeLaurent &a, const RelativeLaurent &b)
    {
        a.check_conform(b);
        std::set<int> sectors;
        for (const auto &[n, c] : a.comps_) {
            sectors.insert(n);
        }
        for (const auto &[n, c] : b.comps_) {
            sectors.insert(n);
        }
        return std::all_of(sectors.begin(), sectors.end(), [&](int n) { return a.component(n) == b.component(n); });
    }

    std::string str() const
    {
        if (comps_.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (const auto &[n, c] : comps_) {
            os << (first ? "" : " + ") << "[" << c.str() << "]_" << n;
            first = false;
        }
        return os.str();
    }

    void check_conform(const RelativeLaurent &o) const
    {
        if (!space_ || space_ != o.space_) {
            throw ConformanceError("relative classes over different state spaces");
        }
    }

private:
    void add(int contact, const ZLaurent &v)
    {
        if (v.algebra() != space_->algebra_for(contact)) {
            throw ConformanceError("sector " + std::to_string(contact) + " expects classes in '" +
                                   space_->algebra_for(contact)->name() + "'");
        }
        auto it = comps_.find(contact);
        if (it == comps_.end()) {
            if (!v.is_zero()) {
                comps_.emplace(contact, v);
            }
            return;
        }
        it->second += v;
        if (it->second.is_zero()) {
            comps_.erase(it);
        }
    }

    ZLaurent to_divisor(int contact, const ZLaurent &v) const
    {
        if (contact != 0) {
            return v;
        }
        return v.mapped(space_->divisor, [this](const AlgebraElement &c) { return space_->restriction(c); });
    }

    void accumulate_product(int i, const ZLaurent &ca, int j, const ZLaurent &cb)
    {
        if (i == 0 && j == 0) {
            add(0, ca * cb);
            return;
        }
        if (i >= 0 && j >= 0) {
            add(i + j, to_divisor(i, ca) * to_divisor(j, cb));
            return;
        }
        if (i < 0 && j < 0) {
            add(i + j, ca * cb);
            return;
        }
        const bool a_negative = i < 0;
        const ZLaurent &gamma = a_negative ? ca : cb;
        const int other_contact = a_negative ? j : i;
        const ZLaurent other = to_divisor(other_contact, a_negative ? cb : ca);
        const int s = i + j;
        auto prod = gamma * other;
        if (s < 0) {
            add(s, prod);
        } else if (s == 0) {
            add(0, prod.mapped(space_->ambient, [this](const AlgebraElement &c) { return space_->push(c); }));
        } else {
            add(s, prod * ZLaurent::constant(space_->normal, space_->floor));
        }
    }

    StatePtr space_;
    std::map<int, ZLaurent> comps_;
};

} // namespace mirrorgen
