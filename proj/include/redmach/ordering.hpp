#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "redmach/error.hpp"
#include "redmach/poly.hpp"

namespace redmach {

enum class OrderKind { lex, revlex, grlex, grevlex };

inline std::string_view to_string(OrderKind k) {
    switch (k) {
        case OrderKind::lex: return "lex";
        case OrderKind::revlex: return "revlex";
        case OrderKind::grlex: return "grlex";
        case OrderKind::grevlex: return "grevlex";
    }
    return "?";
}

/// Case-insensitive lookup of "lex", "revlex", "grlex", "grevlex".
inline std::optional<OrderKind> parse_order_kind(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (auto k : {OrderKind::lex, OrderKind::revlex, OrderKind::grlex, OrderKind::grevlex})
        if (lower == to_string(k)) return k;
    return std::nullopt;
}

/// A monomial ordering over a fixed number of variables, with the first
/// declared variable the largest.
///
///   lex      first differing exponent decides, larger wins
///   revlex   last differing exponent decides, smaller wins (1 is the
///            maximum, so this one is not admissible)
///   grlex    total degree, ties by lex
///   grevlex  total degree, ties by revlex
class Ordering {
public:
    Ordering(OrderKind kind, std::size_t arity) : kind_(kind), arity_(arity) {}

    OrderKind kind() const noexcept { return kind_; }
    std::size_t arity() const noexcept { return arity_; }

    bool admissible() const noexcept { return kind_ != OrderKind::revlex; }

    void require_admissible() const {
        if (!admissible()) throw ordering_error("ordering " + std::string(to_string(kind_)) + " is not admissible");
    }

    std::strong_ordering compare(const PowerProduct& t, const PowerProduct& u) const {
        if (t.arity() != arity_) throw arity_error(arity_, t.arity());
        if (u.arity() != arity_) throw arity_error(arity_, u.arity());
        switch (kind_) {
            case OrderKind::lex: return lex(t, u);
            case OrderKind::revlex: return revlex(t, u);
            case OrderKind::grlex:
                if (auto c = t.degree() <=> u.degree(); c != 0) return c;
                return lex(t, u);
            case OrderKind::grevlex:
                if (auto c = t.degree() <=> u.degree(); c != 0) return c;
                return revlex(t, u);
        }
        return std::strong_ordering::equal;
    }

    bool less(const PowerProduct& t, const PowerProduct& u) const { return compare(t, u) < 0; }

    friend bool operator==(const Ordering&, const Ordering&) = default;

private:
    static std::strong_ordering lex(const PowerProduct& t, const PowerProduct& u) {
        for (std::size_t i = 0; i < t.arity(); ++i)
            if (t[i] != u[i]) return t[i] <=> u[i];
        return std::strong_ordering::equal;
    }

    static std::strong_ordering revlex(const PowerProduct& t, const PowerProduct& u) {
        for (std::size_t i = t.arity(); i-- > 0;)
            if (t[i] != u[i]) return u[i] <=> t[i];
        return std::strong_ordering::equal;
    }

    OrderKind kind_;
    std::size_t arity_;
};

/// Strict "greater" under an ordering; sorts containers in descending order.
struct OrderGreater {
    Ordering ord;
    bool operator()(const PowerProduct& t, const PowerProduct& u) const { return ord.compare(t, u) > 0; }
};

/// p = lm + rest with lm = lc * lpp and every power product of rest below lpp.
struct Decomposition {
    PowerProduct lpp;
    Coefficient lc;
    Monomial lm;
    Polynomial rest;
};

inline const Monomial& leading_term(const Ordering& ord, const Polynomial& p) {
    if (p.is_zero()) throw zero_polynomial_error("zero polynomial has no leading term");
    auto terms = p.terms();
    const Monomial* best = &terms.front();
    for (const auto& m : terms.subspan(1))
        if (ord.compare(m.pp, best->pp) > 0) best = &m;
    return *best;
}

inline Decomposition decompose(const Ordering& ord, const Polynomial& p) {
    ord.require_admissible();
    const Monomial& lm = leading_term(ord, p);
    Polynomial rest = p - Polynomial(p.arity(), lm);
    return {lm.pp, lm.coeff, lm, std::move(rest)};
}

/// Terms of p in strictly descending order.
inline std::vector<Monomial> sorted_terms(const Ordering& ord, const Polynomial& p) {
    std::vector<Monomial> out(p.terms().begin(), p.terms().end());
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ord.compare(a.pp, b.pp) > 0; });
    return out;
}

}  // namespace redmach
