#pragma once

// Helpers shared by the unit and acceptance suites.

#include <cstddef>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "redmach/redmach.hpp"

namespace redmach::testing {

inline Polynomial P(const std::string& text, const Ring& ring) { return parse_polynomial(text, ring); }

inline std::string read_data(const std::string& name) {
    std::ifstream in(std::string(REDMACH_TEST_DATA_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Seeded generator of small random power products, polynomials and
/// reduction instances.
class Random {
public:
    explicit Random(std::uint64_t seed) : rng_(seed) {}

    std::size_t uniform(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

    PowerProduct pp(std::size_t arity, std::size_t max_degree) {
        PowerProduct t(arity);
        const std::size_t deg = uniform(0, max_degree);
        for (std::size_t k = 0; k < deg; ++k) t = t * PowerProduct::variable(arity, uniform(0, arity - 1));
        return t;
    }

    Coefficient coefficient(int range = 5, bool allow_fractions = true) {
        int num = 0;
        while (num == 0) num = static_cast<int>(uniform(0, 2 * range)) - range;
        int den = allow_fractions && uniform(0, 3) == 0 ? static_cast<int>(uniform(1, 3)) : 1;
        return Coefficient(num) / den;
    }

    Polynomial poly(std::size_t arity, std::size_t max_terms, std::size_t max_degree) {
        std::vector<Monomial> terms;
        const std::size_t n = uniform(1, max_terms);
        for (std::size_t i = 0; i < n; ++i) terms.push_back({coefficient(), pp(arity, max_degree)});
        return Polynomial::from_terms(arity, std::move(terms));
    }

    Polynomial nonzero_poly(std::size_t arity, std::size_t max_terms, std::size_t max_degree) {
        for (;;) {
            Polynomial p = poly(arity, max_terms, max_degree);
            if (!p.is_zero()) return p;
        }
    }

    struct Instance {
        std::size_t arity;
        Polynomial g;
        std::vector<Polynomial> F;
    };

    /// At most 3 variables, degree at most 3, at most 3 generators.
    Instance instance(std::size_t max_terms_g = 4, std::size_t max_terms_f = 3) {
        Instance inst;
        inst.arity = uniform(1, 3);
        inst.g = poly(inst.arity, max_terms_g, 3);
        const std::size_t nf = uniform(1, 3);
        for (std::size_t i = 0; i < nf; ++i) inst.F.push_back(nonzero_poly(inst.arity, max_terms_f, 3));
        return inst;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline const std::vector<OrderKind>& admissible_kinds() {
    static const std::vector<OrderKind> kinds{OrderKind::lex, OrderKind::grlex, OrderKind::grevlex};
    return kinds;
}

}  // namespace redmach::testing
