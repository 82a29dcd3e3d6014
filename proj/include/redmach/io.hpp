#pragma once

// Text form of polynomials.
//
//   polynomial := ['+'|'-'] term (('+'|'-') term)*
//   term       := factor (['*'] factor)*      implicit '*' only after a number
//   factor     := rational | var ['^' nat]
//   rational   := int ['/' posint]
//
// Whitespace is ignored between tokens. Printing produces text in the same
// grammar, e.g. "x^2*y - 1/3*x + 2".

#include <cctype>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>

#include "redmach/error.hpp"
#include "redmach/ordering.hpp"
#include "redmach/poly.hpp"

namespace redmach {

inline std::string format(const PowerProduct& t, const Ring& ring) {
    if (t.arity() != ring.arity()) throw arity_error(ring.arity(), t.arity());
    std::string out;
    for (std::size_t i = 0; i < t.arity(); ++i) {
        if (t[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += ring.name(i);
        if (t[i] > 1) out += '^' + std::to_string(t[i]);
    }
    return out.empty() ? "1" : out;
}

inline std::string format(const Coefficient& c) { return c.str(); }

namespace detail {

    inline void append_term(std::string& out, const Monomial& m, const Ring& ring, bool first) {
        const bool negative = m.coeff < 0;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        const Coefficient mag = negative ? Coefficient(-m.coeff) : m.coeff;
        if (m.pp.is_unit()) {
            out += mag.str();
        } else {
            if (mag != 1) out += mag.str() + "*";
            out += format(m.pp, ring);
        }
    }

}  // namespace detail

/// Terms are printed in descending order of `ord`.
inline std::string format(const Polynomial& p, const Ring& ring, const Ordering& ord) {
    if (p.arity() != ring.arity()) throw arity_error(ring.arity(), p.arity());
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& m : sorted_terms(ord, p)) {
        detail::append_term(out, m, ring, first);
        first = false;
    }
    return out;
}

inline std::string format(const Polynomial& p, const Ring& ring) {
    return format(p, ring, Ordering(OrderKind::grlex, ring.arity()));
}

namespace detail {

    class PolynomialParser {
    public:
        PolynomialParser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

        Polynomial parse() {
            std::vector<Monomial> terms;
            skip_ws();
            bool negative = false;
            if (peek() == '+' || peek() == '-') {
                negative = peek() == '-';
                ++pos_;
            }
            while (true) {
                Monomial m = term();
                if (negative) m.coeff = -m.coeff;
                terms.push_back(std::move(m));
                skip_ws();
                if (at_end()) break;
                if (peek() != '+' && peek() != '-') fail("expected '+', '-' or end of input");
                negative = peek() == '-';
                ++pos_;
            }
            return Polynomial::from_terms(ring_.arity(), std::move(terms));
        }

    private:
        Monomial term() {
            Monomial m{Coefficient(1), PowerProduct(ring_.arity())};
            bool after_number = false;
            factor(m, after_number);
            while (true) {
                skip_ws();
                if (peek() == '*') {
                    ++pos_;
                    skip_ws();
                    factor(m, after_number);
                } else if (after_number && is_ident_start(peek())) {
                    factor(m, after_number);
                } else {
                    break;
                }
            }
            return m;
        }

        void factor(Monomial& m, bool& after_number) {
            skip_ws();
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                m.coeff *= rational();
                after_number = true;
            } else if (is_ident_start(peek())) {
                const std::size_t start = pos_;
                std::string name = identifier();
                auto idx = ring_.index_of(name);
                if (!idx) fail("unknown variable '" + name + "'", start);
                Exponent exp = 1;
                skip_ws();
                if (peek() == '^') {
                    ++pos_;
                    skip_ws();
                    exp = natural();
                }
                m.pp = m.pp * PowerProduct::variable(ring_.arity(), *idx, exp);
                after_number = false;
            } else {
                fail(at_end() ? "unexpected end of input" : std::string("unexpected character '") + peek() + "'");
            }
        }

        Coefficient rational() {
            const std::size_t start = pos_;
            std::string num = digits();
            skip_ws();
            // a '/' must be followed by a positive integer
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed rational: missing denominator");
                std::string den = digits();
                if (den.find_first_not_of('0') == std::string::npos) fail("malformed rational: zero denominator", start);
                return Coefficient(num + "/" + den);
            }
            return Coefficient(num);
        }

        Exponent natural() {
            const std::size_t start = pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
            std::string d = digits();
            unsigned long long v = 0;
            for (char c : d) {
                v = v * 10 + static_cast<unsigned>(c - '0');
                if (v > std::numeric_limits<Exponent>::max()) fail("exponent too large", start);
            }
            return static_cast<Exponent>(v);
        }

        std::string digits() {
            std::string d;
            while (std::isdigit(static_cast<unsigned char>(peek()))) d += text_[pos_++];
            return d;
        }

        std::string identifier() {
            std::string id;
            while (is_ident_char(peek())) id += text_[pos_++];
            return id;
        }

        static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
        static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

        void skip_ws() {
            while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }

        bool at_end() const { return pos_ >= text_.size(); }
        char peek() const { return at_end() ? '\0' : text_[pos_]; }

        [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
        [[noreturn]] void fail(const std::string& what, std::size_t at) const { throw parse_error(what, at); }

        std::string_view text_;
        const Ring& ring_;
        std::size_t pos_ = 0;
    };

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, const Ring& ring) {
    return detail::PolynomialParser(text, ring).parse();
}

}  // namespace redmach
