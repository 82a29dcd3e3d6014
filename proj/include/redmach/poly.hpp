#pragma once

// Exact multivariate polynomials over the rationals.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/container_hash/hash.hpp>
#include <boost/multiprecision/gmp.hpp>

#include "redmach/error.hpp"

namespace redmach {

/// Field elements. GMP keeps every value in lowest terms with a positive
/// denominator, and zero is always 0/1.
using Coefficient =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

using Exponent = std::uint32_t;

class PowerProduct {
public:
    using storage = boost::container::small_vector<Exponent, 6>;

    PowerProduct() = default;

    /// The unit power product 1 over `arity` variables.
    explicit PowerProduct(std::size_t arity) : exps_(arity, 0) {}

    PowerProduct(std::initializer_list<Exponent> exps) : exps_(exps) {}

    explicit PowerProduct(std::span<const Exponent> exps) : exps_(exps.begin(), exps.end()) {}

    std::size_t arity() const noexcept { return exps_.size(); }
    Exponent operator[](std::size_t i) const { return exps_[i]; }
    std::span<const Exponent> exponents() const noexcept { return {exps_.data(), exps_.size()}; }

    std::uint64_t degree() const noexcept {
        std::uint64_t d = 0;
        for (auto e : exps_) d += e;
        return d;
    }

    bool is_unit() const noexcept {
        return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
    }

    /// Single-variable power product x_index^exp.
    static PowerProduct variable(std::size_t arity, std::size_t index, Exponent exp = 1) {
        PowerProduct t(arity);
        t.exps_[index] = exp;
        return t;
    }

    friend bool operator==(const PowerProduct& a, const PowerProduct& b) noexcept { return a.exps_ == b.exps_; }

    /// Structural (lexicographic on the exponent vector) comparison. This is
    /// only a storage order; monomial orderings live in ordering.hpp.
    friend std::strong_ordering operator<=>(const PowerProduct& a, const PowerProduct& b) noexcept {
        return std::lexicographical_compare_three_way(a.exps_.begin(), a.exps_.end(), b.exps_.begin(),
                                                      b.exps_.end());
    }

    friend PowerProduct operator*(const PowerProduct& t, const PowerProduct& u) {
        check_arity(t, u);
        PowerProduct r = t;
        for (std::size_t i = 0; i < r.exps_.size(); ++i) {
            if (u.exps_[i] > std::numeric_limits<Exponent>::max() - r.exps_[i])
                throw overflow_error("exponent overflow in power product multiplication");
            r.exps_[i] += u.exps_[i];
        }
        return r;
    }

    static void check_arity(const PowerProduct& t, const PowerProduct& u) {
        if (t.arity() != u.arity()) throw arity_error(t.arity(), u.arity());
    }

private:
    friend PowerProduct lcm(const PowerProduct&, const PowerProduct&);
    friend PowerProduct quotient(const PowerProduct&, const PowerProduct&);
    storage exps_;
};

/// True iff t | u.
inline bool divides(const PowerProduct& t, const PowerProduct& u) {
    PowerProduct::check_arity(t, u);
    for (std::size_t i = 0; i < t.arity(); ++i)
        if (t[i] > u[i]) return false;
    return true;
}

/// u / t; requires t | u.
inline PowerProduct quotient(const PowerProduct& u, const PowerProduct& t) {
    PowerProduct::check_arity(u, t);
    PowerProduct r = u;
    for (std::size_t i = 0; i < u.arity(); ++i) {
        if (t[i] > u[i]) throw divisibility_error("power product quotient: divisor does not divide dividend");
        r.exps_[i] -= t[i];
    }
    return r;
}

inline PowerProduct lcm(const PowerProduct& t, const PowerProduct& u) {
    PowerProduct::check_arity(t, u);
    PowerProduct r = t;
    for (std::size_t i = 0; i < t.arity(); ++i) r.exps_[i] = std::max(t[i], u[i]);
    return r;
}

inline std::size_t hash_value(const PowerProduct& t) {
    auto e = t.exponents();
    return boost::hash_range(e.begin(), e.end());
}

struct PowerProductHash {
    std::size_t operator()(const PowerProduct& t) const { return hash_value(t); }
};

struct Monomial {
    Coefficient coeff;
    PowerProduct pp;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Canonical sparse polynomial: a finite map from power products to nonzero
/// coefficients. Terms are kept in descending structural order so that equal
/// polynomials have identical representations.
class Polynomial {
public:
    Polynomial() = default;

    /// The zero polynomial over `arity` variables.
    explicit Polynomial(std::size_t arity) : arity_(arity) {}

    Polynomial(std::size_t arity, Monomial m) : arity_(arity) {
        if (m.pp.arity() != arity) throw arity_error(arity, m.pp.arity());
        if (!m.coeff.is_zero()) terms_.push_back(std::move(m));
    }

    /// Builds a canonical polynomial from arbitrary terms: like power products
    /// are merged and zero sums dropped.
    static Polynomial from_terms(std::size_t arity, std::vector<Monomial> terms) {
        for (const auto& m : terms)
            if (m.pp.arity() != arity) throw arity_error(arity, m.pp.arity());
        std::sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) { return a.pp > b.pp; });
        Polynomial p(arity);
        for (auto& m : terms) {
            if (!p.terms_.empty() && p.terms_.back().pp == m.pp)
                p.terms_.back().coeff += m.coeff;
            else
                p.terms_.push_back(std::move(m));
            if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
        }
        return p;
    }

    static Polynomial constant(std::size_t arity, const Coefficient& c) {
        return Polynomial(arity, Monomial{c, PowerProduct(arity)});
    }

    std::size_t arity() const noexcept { return arity_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::span<const Monomial> terms() const noexcept { return terms_; }

    const Coefficient* find(const PowerProduct& t) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), t,
                                   [](const Monomial& m, const PowerProduct& key) { return m.pp > key; });
        return (it != terms_.end() && it->pp == t) ? &it->coeff : nullptr;
    }

    bool contains(const PowerProduct& t) const { return find(t) != nullptr; }

    /// C(p, t); zero when t is outside the support.
    Coefficient coefficient(const PowerProduct& t) const {
        const auto* c = find(t);
        return c ? *c : Coefficient(0);
    }

    std::vector<PowerProduct> support() const {
        std::vector<PowerProduct> s;
        s.reserve(terms_.size());
        for (const auto& m : terms_) s.push_back(m.pp);
        return s;
    }

    std::uint64_t total_degree() const noexcept {
        std::uint64_t d = 0;
        for (const auto& m : terms_) d = std::max(d, m.pp.degree());
        return d;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

    /// Arbitrary but total order, used to key containers of polynomials.
    friend bool operator<(const Polynomial& a, const Polynomial& b) {
        if (a.arity_ != b.arity_) return a.arity_ < b.arity_;
        const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
        for (std::size_t i = 0; i < n; ++i) {
            const auto& x = a.terms_[i];
            const auto& y = b.terms_[i];
            if (auto c = x.pp <=> y.pp; c != 0) return c < 0;
            if (x.coeff != y.coeff) return x.coeff < y.coeff;
        }
        return a.terms_.size() < b.terms_.size();
    }

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q) { return combine(p, q, false); }
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q) { return combine(p, q, true); }

    friend Polynomial operator-(Polynomial p) {
        for (auto& m : p.terms_) m.coeff = -m.coeff;
        return p;
    }

    Polynomial& operator+=(const Polynomial& q) { return *this = *this + q; }
    Polynomial& operator-=(const Polynomial& q) { return *this = *this - q; }

    /// c * p
    friend Polynomial operator*(const Coefficient& c, Polynomial p) {
        if (c.is_zero()) return Polynomial(p.arity_);
        for (auto& m : p.terms_) m.coeff *= c;
        return p;
    }

    /// m * p. Multiplying every power product by the same factor preserves
    /// the structural order, so no re-sorting is needed.
    friend Polynomial operator*(const Monomial& m, const Polynomial& p) {
        if (m.pp.arity() != p.arity_) throw arity_error(m.pp.arity(), p.arity_);
        Polynomial r(p.arity_);
        if (m.coeff.is_zero()) return r;
        r.terms_.reserve(p.terms_.size());
        for (const auto& t : p.terms_) r.terms_.push_back({m.coeff * t.coeff, m.pp * t.pp});
        return r;
    }

    friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
        check_arity(p, q);
        Polynomial r(p.arity_);
        for (const auto& m : p.terms_) r += m * q;
        return r;
    }

private:
    static void check_arity(const Polynomial& p, const Polynomial& q) {
        if (p.arity_ != q.arity_) throw arity_error(p.arity_, q.arity_);
    }

    static Polynomial combine(const Polynomial& p, const Polynomial& q, bool subtract) {
        check_arity(p, q);
        Polynomial r(p.arity_);
        r.terms_.reserve(p.terms_.size() + q.terms_.size());
        auto i = p.terms_.begin();
        auto j = q.terms_.begin();
        auto take_q = [&](const Monomial& m) { r.terms_.push_back({subtract ? Coefficient(-m.coeff) : m.coeff, m.pp}); };
        while (i != p.terms_.end() && j != q.terms_.end()) {
            auto c = i->pp <=> j->pp;
            if (c > 0) {
                r.terms_.push_back(*i++);
            } else if (c < 0) {
                take_q(*j++);
            } else {
                Coefficient s = subtract ? Coefficient(i->coeff - j->coeff) : Coefficient(i->coeff + j->coeff);
                if (!s.is_zero()) r.terms_.push_back({std::move(s), i->pp});
                ++i;
                ++j;
            }
        }
        for (; i != p.terms_.end(); ++i) r.terms_.push_back(*i);
        for (; j != q.terms_.end(); ++j) take_q(*j);
        return r;
    }

    std::size_t arity_ = 0;
    std::vector<Monomial> terms_;
};

/// Variable names of K[x1..xn]; the index of a name is its exponent slot.
class Ring {
public:
    Ring() = default;

    explicit Ring(std::vector<std::string> variables) : vars_(std::move(variables)) {
        if (vars_.empty()) throw error("ring needs at least one variable");
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i].empty()) throw error("empty variable name");
            if (!index_.emplace(vars_[i], i).second) throw error("duplicate variable name '" + vars_[i] + "'");
        }
    }

    std::size_t arity() const noexcept { return vars_.size(); }
    const std::vector<std::string>& variables() const noexcept { return vars_; }
    const std::string& name(std::size_t i) const { return vars_.at(i); }

    std::optional<std::size_t> index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    PowerProduct var(const std::string& name, Exponent exp = 1) const {
        auto i = index_of(name);
        if (!i) throw error("unknown variable '" + name + "'");
        return PowerProduct::variable(arity(), *i, exp);
    }

    friend bool operator==(const Ring& a, const Ring& b) { return a.vars_ == b.vars_; }

private:
    std::vector<std::string> vars_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace redmach
