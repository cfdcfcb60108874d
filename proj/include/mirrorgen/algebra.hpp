#pragma once

// Finite-dimensional graded commutative algebras presented by a basis and a
// sparse multiplication table. These model the cohomology rings H*(X), H*(D)
// and H*(Y) that the generating functions take values in.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mirrorgen/errors.hpp"
#include "mirrorgen/rational.hpp"

namespace mirrorgen {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>; // row-major

namespace detail {

// Solves A x = b by Gauss-Jordan elimination; free variables are set to 0.
// Returns nullopt when the system is inconsistent.
inline std::optional<RationalVector> solve_linear(RationalMatrix a, RationalVector b)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c].is_zero()) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        const Rational inv = Rational(1) / a[r][c];
        for (auto &v : a[r]) {
            v *= inv;
        }
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) {
                continue;
            }
            const Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) {
                a[i][j] -= f * a[r][j];
            }
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (!b[i].is_zero()) {
            return std::nullopt;
        }
    }
    RationalVector x(cols, Rational(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        x[pivot_col[i]] = b[i];
    }
    return x;
}

} // namespace detail

class GradedAlgebra {
public:
    // c * e_k appears in e_i * e_j.
    struct StructureConstant {
        std::size_t i;
        std::size_t j;
        std::size_t k;
        Rational value;
    };

    // Products involving the unit and the mirror image (j, i) of a given
    // (i, j) entry are filled in when absent, so tables only need to list one
    // of each pair. Explicitly contradictory entries survive and are reported
    // by check_invariants().
    GradedAlgebra(std::string name, std::vector<std::string> labels, std::vector<int> degrees,
                  const std::vector<StructureConstant> &constants, std::size_t unit_index,
                  std::optional<std::size_t> point_index = std::nullopt)
        : name_(std::move(name)), labels_(std::move(labels)), degrees_(std::move(degrees)), unit_(unit_index),
          point_(point_index)
    {
        const std::size_t n = labels_.size();
        if (n == 0) {
            throw ConfigError("algebra '" + name_ + "': empty basis");
        }
        if (degrees_.size() != n) {
            throw ConfigError("algebra '" + name_ + "': degree list length differs from basis length");
        }
        for (int d : degrees_) {
            if (d < 0) {
                throw ConfigError("algebra '" + name_ + "': negative degree");
            }
        }
        if (unit_ >= n || (point_ && *point_ >= n)) {
            throw ConfigError("algebra '" + name_ + "': unit/point index out of range");
        }
        table_.assign(n * n, {});
        std::vector<bool> given(n * n, false);
        for (const auto &sc : constants) {
            if (sc.i >= n || sc.j >= n || sc.k >= n) {
                throw ConfigError("algebra '" + name_ + "': structure constant index out of range");
            }
            if (!sc.value.is_zero()) {
                add_entry(sc.i * n + sc.j, sc.k, sc.value);
            }
            given[sc.i * n + sc.j] = true;
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (given[i * n + j]) {
                    continue;
                }
                if (given[j * n + i]) {
                    table_[i * n + j] = table_[j * n + i];
                } else if (i == unit_) {
                    table_[i * n + j] = {{j, Rational(1)}};
                } else if (j == unit_) {
                    table_[i * n + j] = {{i, Rational(1)}};
                }
            }
        }
    }

    const std::string &name() const { return name_; }
    std::size_t dimension() const { return labels_.size(); }
    const std::vector<std::string> &labels() const { return labels_; }
    const std::string &label(std::size_t i) const { return labels_.at(i); }
    int degree(std::size_t i) const { return degrees_.at(i); }
    const std::vector<int> &degrees() const { return degrees_; }
    int top_degree() const { return *std::max_element(degrees_.begin(), degrees_.end()); }
    std::size_t unit_index() const { return unit_; }
    std::optional<std::size_t> point_index() const { return point_; }

    std::size_t index_of(const std::string &label) const
    {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            throw ConfigError("algebra '" + name_ + "' has no basis element '" + label + "'");
        }
        return static_cast<std::size_t>(it - labels_.begin());
    }

    const std::vector<std::pair<std::size_t, Rational>> &basis_product(std::size_t i, std::size_t j) const
    {
        return table_[i * dimension() + j];
    }

    RationalVector multiply(std::span<const Rational> a, std::span<const Rational> b) const
    {
        const std::size_t n = dimension();
        if (a.size() != n || b.size() != n) {
            throw ConformanceError("algebra '" + name_ + "': operand dimension mismatch");
        }
        RationalVector out(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i].is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (b[j].is_zero()) {
                    continue;
                }
                const Rational ab = a[i] * b[j];
                for (const auto &[k, c] : table_[i * n + j]) {
                    out[k] += ab * c;
                }
            }
        }
        return out;
    }

    Rational integrate(std::span<const Rational> a) const
    {
        if (!point_) {
            throw UnsupportedError("algebra '" + name_ + "' declares no point class; integration unavailable");
        }
        if (a.size() != dimension()) {
            throw ConformanceError("algebra '" + name_ + "': operand dimension mismatch");
        }
        return a[*point_];
    }

    // Names every violated invariant; empty when the table is sound.
    std::vector<std::string> check_invariants() const
    {
        std::vector<std::string> out;
        const std::size_t n = dimension();
        auto basis = [n](std::size_t i) {
            RationalVector v(n, Rational(0));
            v[i] = 1;
            return v;
        };
        if (degrees_[unit_] != 0) {
            out.push_back("unit class must have degree 0");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (multiply(basis(unit_), basis(i)) != basis(i)) {
                out.push_back("unit does not act as identity on '" + labels_[i] + "'");
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (multiply(basis(i), basis(j)) != multiply(basis(j), basis(i))) {
                    out.push_back("commutativity fails for " + labels_[i] + "*" + labels_[j]);
                }
                for (const auto &[k, c] : table_[i * n + j]) {
                    if (degrees_[k] != degrees_[i] + degrees_[j]) {
                        out.push_back("degree additivity fails for " + labels_[i] + "*" + labels_[j] + " -> " +
                                      labels_[k]);
                    }
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const auto ij = multiply(basis(i), basis(j));
                for (std::size_t k = 0; k < n; ++k) {
                    const auto jk = multiply(basis(j), basis(k));
                    if (multiply(ij, basis(k)) != multiply(basis(i), jk)) {
                        out.push_back("associativity fails for (" + labels_[i] + "*" + labels_[j] + ")*" + labels_[k]);
                    }
                }
            }
        }
        const int top = top_degree();
        for (std::size_t i = 0; i < n; ++i) {
            if (degrees_[i] == 0) {
                continue;
            }
            auto p = basis(i);
            for (int e = 1; e <= top; ++e) {
                p = multiply(p, basis(i));
            }
            if (std::any_of(p.begin(), p.end(), [](const Rational &r) { return !r.is_zero(); })) {
                out.push_back("'" + labels_[i] + "' is not nilpotent within top degree + 1");
            }
        }
        if (point_ && degrees_[*point_] != top) {
            out.push_back("point class must sit in the top degree");
        }
        return out;
    }

    void validate() const
    {
        auto v = check_invariants();
        if (!v.empty()) {
            throw ConfigError("algebra '" + name_ + "' invalid: " + v.front());
        }
    }

private:
    void add_entry(std::size_t cell, std::size_t k, const Rational &v)
    {
        auto &row = table_[cell];
        for (auto &[kk, c] : row) {
            if (kk == k) {
                c += v;
                return;
            }
        }
        row.emplace_back(k, v);
    }

    std::string name_;
    std::vector<std::string> labels_;
    std::vector<int> degrees_;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> table_;
    std::size_t unit_;
    std::optional<std::size_t> point_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

// Truncated polynomial ring Q[H]/(H^{n+1}) with integral of H^n equal to 1.
inline AlgebraPtr make_projective_space(int n, const std::string &name = "", const std::string &hyperplane = "H")
{
    std::vector<std::string> labels{"1"};
    std::vector<int> degrees{0};
    for (int i = 1; i <= n; ++i) {
        labels.push_back(i == 1 ? hyperplane : hyperplane + "^" + std::to_string(i));
        degrees.push_back(i);
    }
    std::vector<GradedAlgebra::StructureConstant> sc;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            if (i + j <= n) {
                sc.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                              static_cast<std::size_t>(i + j), Rational(1)});
            }
        }
    }
    return std::make_shared<const GradedAlgebra>(name.empty() ? "P" + std::to_string(n) : name, labels, degrees, sc,
                                                 0, static_cast<std::size_t>(n));
}

class AlgebraElement {
public:
    AlgebraElement() = default;

    AlgebraElement(AlgebraPtr algebra, RationalVector coefficients)
        : alg_(std::move(algebra)), c_(std::move(coefficients))
    {
        if (!alg_) {
            throw ConformanceError("algebra element without algebra");
        }
        if (c_.size() != alg_->dimension()) {
            throw ConformanceError("coefficient vector length " + std::to_string(c_.size()) +
                                   " does not match dimension of '" + alg_->name() + "'");
        }
    }

    static AlgebraElement zero(const AlgebraPtr &a) { return {a, RationalVector(a->dimension(), Rational(0))}; }

    static AlgebraElement unit(const AlgebraPtr &a) { return basis(a, a->unit_index()); }

    static AlgebraElement basis(const AlgebraPtr &a, std::size_t i)
    {
        auto e = zero(a);
        e.c_.at(i) = 1;
        return e;
    }

    static AlgebraElement basis(const AlgebraPtr &a, const std::string &label) { return basis(a, a->index_of(label)); }

    const AlgebraPtr &algebra() const { return alg_; }
    const RationalVector &coefficients() const { return c_; }
    const Rational &operator[](std::size_t i) const { return c_.at(i); }
    Rational &operator[](std::size_t i) { return c_.at(i); }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const Rational &r) { return r.is_zero(); });
    }

    // Degree-0 part vanishes, so the element is nilpotent.
    bool has_positive_degree() const
    {
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (alg_->degree(i) == 0 && !c_[i].is_zero()) {
                return false;
            }
        }
        return true;
    }

    // Scalar multiple of the unit (possibly zero).
    std::optional<Rational> as_scalar() const
    {
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i != alg_->unit_index() && !c_[i].is_zero()) {
                return std::nullopt;
            }
        }
        return c_[alg_->unit_index()];
    }

    AlgebraElement &operator+=(const AlgebraElement &o)
    {
        check_conform(o);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            c_[i] += o.c_[i];
        }
        return *this;
    }

    AlgebraElement &operator-=(const AlgebraElement &o)
    {
        check_conform(o);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            c_[i] -= o.c_[i];
        }
        return *this;
    }

    AlgebraElement &operator*=(const Rational &s)
    {
        for (auto &v : c_) {
            v *= s;
        }
        return *this;
    }

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement &b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement &b) { return a -= b; }
    friend AlgebraElement operator*(AlgebraElement a, const Rational &s) { return a *= s; }
    friend AlgebraElement operator*(const Rational &s, AlgebraElement a) { return a *= s; }

    friend AlgebraElement operator-(AlgebraElement a)
    {
        for (auto &v : a.c_) {
            v = -v;
        }
        return a;
    }

    friend AlgebraElement operator*(const AlgebraElement &a, const AlgebraElement &b)
    {
        a.check_conform(b);
        return {a.alg_, a.alg_->multiply(a.c_, b.c_)};
    }

    friend bool operator==(const AlgebraElement &a, const AlgebraElement &b)
    {
        return a.alg_ == b.alg_ && a.c_ == b.c_;
    }

    AlgebraElement pow(int e) const
    {
        auto r = unit(alg_);
        for (int i = 0; i < e; ++i) {
            r = r * *this;
        }
        return r;
    }

    std::string str() const
    {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) {
                continue;
            }
            if (!first) {
                os << " + ";
            }
            first = false;
            if (i == alg_->unit_index()) {
                os << to_string(c_[i]);
            } else if (c_[i] == 1) {
                os << alg_->label(i);
            } else {
                os << to_string(c_[i]) << "*" << alg_->label(i);
            }
        }
        return first ? "0" : os.str();
    }

    friend std::ostream &operator<<(std::ostream &os, const AlgebraElement &a) { return os << a.str(); }

    void check_conform(const AlgebraElement &o) const
    {
        if (!alg_ || !o.alg_ || alg_ != o.alg_) {
            throw ConformanceError("operands belong to different algebras ('" + (alg_ ? alg_->name() : "?") + "' vs '" +
                                   (o.alg_ ? o.alg_->name() : "?") + "')");
        }
    }

private:
    AlgebraPtr alg_;
    RationalVector c_;
};

inline Rational integrate(const AlgebraElement &a) { return a.algebra()->integrate(a.coefficients()); }

// Solves d * w = v; the returned cofactor is the one with free coordinates set
// to zero. Throws CancellationError when v is not a multiple of d.
inline AlgebraElement divide_by(const AlgebraElement &v, const AlgebraElement &d)
{
    v.check_conform(d);
    const auto &alg = v.algebra();
    const std::size_t n = alg->dimension();
    RationalMatrix m(n, RationalVector(n, Rational(0)));
    for (std::size_t j = 0; j < n; ++j) {
        auto col = d * AlgebraElement::basis(alg, j);
        for (std::size_t i = 0; i < n; ++i) {
            m[i][j] = col[i];
        }
    }
    auto sol = detail::solve_linear(m, v.coefficients());
    if (!sol) {
        throw CancellationError("class " + v.str() + " is not divisible by " + d.str());
    }
    return {alg, *sol};
}

// Linear map between algebras, used for iota^*: H*(X) -> H*(D).
class RestrictionMap {
public:
    RestrictionMap() = default;

    // matrix[t][s]: coefficient of target basis t in the image of source basis s.
    RestrictionMap(AlgebraPtr source, AlgebraPtr target, RationalMatrix matrix)
        : src_(std::move(source)), dst_(std::move(target)), m_(std::move(matrix))
    {
        if (m_.size() != dst_->dimension()) {
            throw ConformanceError("restriction matrix has wrong number of rows");
        }
        for (const auto &row : m_) {
            if (row.size() != src_->dimension()) {
                throw ConformanceError("restriction matrix has wrong number of columns");
            }
        }
    }

    const AlgebraPtr &source() const { return src_; }
    const AlgebraPtr &target() const { return dst_; }
    const RationalMatrix &matrix() const { return m_; }

    AlgebraElement operator()(const AlgebraElement &a) const
    {
        if (a.algebra() != src_) {
            throw ConformanceError("restriction applied to element of '" + a.algebra()->name() + "', expected '" +
                                   src_->name() + "'");
        }
        RationalVector out(dst_->dimension(), Rational(0));
        for (std::size_t t = 0; t < out.size(); ++t) {
            for (std::size_t s = 0; s < src_->dimension(); ++s) {
                if (!m_[t][s].is_zero() && !a[s].is_zero()) {
                    out[t] += m_[t][s] * a[s];
                }
            }
        }
        return {dst_, out};
    }

    std::vector<std::string> check_invariants() const
    {
        std::vector<std::string> out;
        if (!((*this)(AlgebraElement::unit(src_)) == AlgebraElement::unit(dst_))) {
            out.push_back("restriction does not map unit to unit");
        }
        for (std::size_t i = 0; i < src_->dimension(); ++i) {
            for (std::size_t j = 0; j < src_->dimension(); ++j) {
                auto a = AlgebraElement::basis(src_, i);
                auto b = AlgebraElement::basis(src_, j);
                if (!((*this)(a * b) == (*this)(a) * (*this)(b))) {
                    out.push_back("restriction is not multiplicative on " + src_->label(i) + "*" + src_->label(j));
                }
            }
        }
        return out;
    }

private:
    AlgebraPtr src_;
    AlgebraPtr dst_;
    RationalMatrix m_;
};

inline AlgebraElement restrict(const AlgebraElement &a, const RestrictionMap &r) { return r(a); }

// Gysin map iota_*: H*(D) -> H*(X) characterised by
//   integral_X iota_*(delta) * a = integral_D delta * iota^*(a)   for all a.
// Requires point classes on both sides and a nondegenerate pairing on X.
inline RationalMatrix pushforward_matrix(const RestrictionMap &r)
{
    const auto &x = r.source();
    const auto &d = r.target();
    const std::size_t nx = x->dimension();
    const std::size_t nd = d->dimension();
    RationalMatrix gram(nx, RationalVector(nx, Rational(0)));
    for (std::size_t k = 0; k < nx; ++k) {
        for (std::size_t l = 0; l < nx; ++l) {
            gram[l][k] = integrate(AlgebraElement::basis(x, k) * AlgebraElement::basis(x, l));
        }
    }
    RationalMatrix out(nx, RationalVector(nd, Rational(0)));
    for (std::size_t s = 0; s < nd; ++s) {
        RationalVector rhs(nx, Rational(0));
        for (std::size_t l = 0; l < nx; ++l) {
            rhs[l] = integrate(AlgebraElement::basis(d, s) * r(AlgebraElement::basis(x, l)));
        }
        auto sol = detail::solve_linear(gram, rhs);
        if (!sol) {
            throw UnsupportedError("pushforward from '" + d->name() + "' to '" + x->name() + "' is not defined");
        }
        for (std::size_t k = 0; k < nx; ++k) {
            out[k][s] = (*sol)[k];
        }
    }
    return out;
}

inline AlgebraElement apply_matrix(const RationalMatrix &m, const AlgebraPtr &target, const AlgebraElement &a)
{
    RationalVector out(target->dimension(), Rational(0));
    for (std::size_t t = 0; t < out.size(); ++t) {
        for (std::size_t s = 0; s < a.coefficients().size(); ++s) {
            if (!m[t][s].is_zero() && !a[s].is_zero()) {
                out[t] += m[t][s] * a[s];
            }
        }
    }
    return {target, out};
}

} // namespace mirrorgen
