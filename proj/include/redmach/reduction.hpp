#pragma once

// Single reduction steps, selection strategies, the classic normal-form
// algorithm and an exhaustive explorer over all monomial choices.

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "redmach/error.hpp"
#include "redmach/ordering.hpp"
#include "redmach/poly.hpp"

namespace redmach {

/// An ordered list of nonzero generators together with their leading-term
/// decompositions under a fixed admissible ordering.
class Basis {
public:
    explicit Basis(Ordering ord) : ord_(ord) { ord_.require_admissible(); }

    Basis(Ordering ord, std::vector<Polynomial> generators) : Basis(ord) {
        gens_.reserve(generators.size());
        heads_.reserve(generators.size());
        for (auto& g : generators) push_back(std::move(g));
    }

    void push_back(Polynomial f) {
        if (f.is_zero()) throw zero_polynomial_error("basis generators must be nonzero");
        if (f.arity() != ord_.arity()) throw arity_error(ord_.arity(), f.arity());
        heads_.push_back(decompose(ord_, f));
        gens_.push_back(std::move(f));
    }

    const Ordering& ordering() const noexcept { return ord_; }
    std::size_t arity() const noexcept { return ord_.arity(); }
    std::size_t size() const noexcept { return gens_.size(); }
    bool empty() const noexcept { return gens_.empty(); }
    const Polynomial& operator[](std::size_t i) const { return gens_[i]; }
    const Decomposition& head(std::size_t i) const { return heads_[i]; }
    std::span<const Polynomial> generators() const noexcept { return gens_; }

    /// True iff some generator's leading power product divides t.
    bool reducible(const PowerProduct& t) const {
        for (const auto& h : heads_)
            if (divides(h.lpp, t)) return true;
        return false;
    }

private:
    Ordering ord_;
    std::vector<Polynomial> gens_;
    std::vector<Decomposition> heads_;
};

/// Chooses the reducer for a power product. The rule sees only the power
/// product and the basis, never the polynomial being reduced, so a strategy
/// is "fixed" for the whole reduction process.
class SelectionStrategy {
public:
    using rule_type = std::function<std::optional<std::size_t>(const PowerProduct&, const Basis&)>;

    SelectionStrategy(std::string name, rule_type rule) : name_(std::move(name)), rule_(std::move(rule)) {}

    const std::string& name() const noexcept { return name_; }

    std::optional<std::size_t> operator()(const PowerProduct& t, const Basis& basis) const { return rule_(t, basis); }

private:
    std::string name_;
    rule_type rule_;
};

/// First generator in list order whose leading power product divides t.
inline SelectionStrategy first_divisor() {
    return {"first", [](const PowerProduct& t, const Basis& basis) -> std::optional<std::size_t> {
                for (std::size_t i = 0; i < basis.size(); ++i)
                    if (divides(basis.head(i).lpp, t)) return i;
                return std::nullopt;
            }};
}

/// Divisor with the greatest leading power product; ties go to list order.
inline SelectionStrategy max_lpp() {
    return {"maxlpp", [](const PowerProduct& t, const Basis& basis) -> std::optional<std::size_t> {
                std::optional<std::size_t> best;
                for (std::size_t i = 0; i < basis.size(); ++i) {
                    if (!divides(basis.head(i).lpp, t)) continue;
                    if (!best || basis.ordering().compare(basis.head(i).lpp, basis.head(*best).lpp) > 0) best = i;
                }
                return best;
            }};
}

inline std::vector<SelectionStrategy> default_strategies() { return {first_divisor(), max_lpp()}; }

inline std::optional<SelectionStrategy> strategy_by_name(std::string_view name) {
    for (auto& s : default_strategies())
        if (s.name() == name) return s;
    return std::nullopt;
}

/// g ->_{f,t} h, i.e. h = g - (M(g,t) / LM(f)) * f.
inline Polynomial reduce_step(const Polynomial& g, const Polynomial& f, const PowerProduct& t, const Ordering& ord) {
    const Coefficient* c = g.find(t);
    if (!c) throw error("reduction power product is not in the support");
    const Decomposition head = decompose(ord, f);
    if (!divides(head.lpp, t)) throw divisibility_error("leading power product of reducer does not divide t");
    Monomial factor{*c / head.lc, quotient(t, head.lpp)};
    return g - factor * f;
}

/// No power product of g is divisible by a leading power product of the basis.
inline bool is_normal_form(const Polynomial& g, const Basis& basis) {
    for (const auto& m : g.terms())
        if (basis.reducible(m.pp)) return false;
    return true;
}

struct ReductionStepRecord {
    PowerProduct pp;
    std::size_t reducer;
    Polynomial result;
};

using MonomialReductionSequence = std::vector<ReductionStepRecord>;

struct ReductionResult {
    Polynomial remainder;
    std::size_t steps = 0;
    /// Filled only when recording was requested.
    MonomialReductionSequence sequence;
};

struct CofactorReduction {
    Polynomial remainder;
    /// g = sum_i quotients[i] * F[i] + remainder
    std::vector<Polynomial> quotients;
    std::size_t steps = 0;
};

namespace detail {

    // Shared loop of the classic algorithm. Each iteration takes the greatest
    // power product that is still reducible: irreducible terms above it are
    // moved to the remainder, and reduction only introduces smaller terms.
    template <class OnStep>
    Polynomial classic_loop(const Polynomial& g, const Basis& basis, const SelectionStrategy& strategy,
                            OnStep&& on_step) {
        if (g.arity() != basis.arity()) throw arity_error(basis.arity(), g.arity());
        const Ordering& ord = basis.ordering();
        std::map<PowerProduct, Coefficient, OrderGreater> work(OrderGreater{ord});
        for (const auto& m : g.terms()) work.emplace(m.pp, m.coeff);
        std::vector<Monomial> remainder;

        while (!work.empty()) {
            auto node = work.extract(work.begin());
            auto idx = strategy(node.key(), basis);
            if (!idx) {
                remainder.push_back({std::move(node.mapped()), std::move(node.key())});
                continue;
            }
            const Decomposition& head = basis.head(*idx);
            const Coefficient factor = node.mapped() / head.lc;
            const PowerProduct shift = quotient(node.key(), head.lpp);
            for (const auto& r : head.rest.terms()) {
                PowerProduct pp = shift * r.pp;
                Coefficient delta = -(factor * r.coeff);
                auto [it, inserted] = work.try_emplace(std::move(pp), delta);
                if (!inserted) {
                    it->second += delta;
                    if (it->second.is_zero()) work.erase(it);
                }
            }
            on_step(node.key(), *idx, factor, shift, remainder, work);
        }
        return Polynomial::from_terms(g.arity(), std::move(remainder));
    }

    inline Polynomial snapshot(std::size_t arity, const std::vector<Monomial>& remainder,
                               const std::map<PowerProduct, Coefficient, OrderGreater>& work) {
        std::vector<Monomial> all(remainder);
        for (const auto& [pp, c] : work) all.push_back({c, pp});
        return Polynomial::from_terms(arity, std::move(all));
    }

}  // namespace detail

/// Normal form by repeatedly reducing the greatest reducible monomial, with
/// the reducer picked by `strategy`.
inline ReductionResult classic_reduce(const Polynomial& g, const Basis& basis, const SelectionStrategy& strategy,
                                      bool record = false) {
    ReductionResult out;
    out.remainder = detail::classic_loop(
        g, basis, strategy, [&](const PowerProduct& t, std::size_t idx, const auto&, const auto&, const auto& rem,
                                const auto& work) {
            ++out.steps;
            if (record) out.sequence.push_back({t, idx, detail::snapshot(g.arity(), rem, work)});
        });
    return out;
}

inline CofactorReduction reduce_with_cofactors(const Polynomial& g, const Basis& basis,
                                               const SelectionStrategy& strategy) {
    std::vector<std::vector<Monomial>> q(basis.size());
    std::size_t steps = 0;
    Polynomial h = detail::classic_loop(
        g, basis, strategy, [&](const PowerProduct&, std::size_t idx, const Coefficient& factor,
                                const PowerProduct& shift, const auto&, const auto&) {
            ++steps;
            q[idx].push_back({factor, shift});
        });
    CofactorReduction out{std::move(h), {}, steps};
    out.quotients.reserve(q.size());
    for (auto& terms : q) out.quotients.push_back(Polynomial::from_terms(g.arity(), std::move(terms)));
    return out;
}

/// Result of exploring every branch of a reduction process: each reachable
/// normal form with a histogram of branch lengths (length -> branch count).
/// Counts saturate at the maximum of uint64.
struct BranchSummary {
    using histogram = std::map<std::size_t, std::uint64_t>;

    std::map<Polynomial, histogram> normal_forms;
    /// Distinct intermediate polynomials visited.
    std::size_t nodes_explored = 0;

    std::size_t min_length() const {
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (const auto& [nf, h] : normal_forms)
            if (!h.empty()) best = std::min(best, h.begin()->first);
        return best;
    }

    std::uint64_t branch_count() const {
        std::uint64_t n = 0;
        for (const auto& [nf, h] : normal_forms)
            for (const auto& [len, count] : h) n = saturating_add(n, count);
        return n;
    }

    static std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
        return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
    }
};

inline constexpr std::size_t default_node_budget = 100'000;

/// Depth-first walk of the reduction process of g: at every node each
/// reducible monomial is a separate branch (visited in descending order),
/// the reducer being fixed by the strategy. Subtrees rooted at equal
/// polynomials are identical, so they are explored once and their summary is
/// reused; the budget bounds the number of distinct nodes.
inline BranchSummary enumerate_branches(const Polynomial& g, const Basis& basis, const SelectionStrategy& strategy,
                                        std::size_t node_budget = default_node_budget) {
    if (g.arity() != basis.arity()) throw arity_error(basis.arity(), g.arity());
    const Ordering& ord = basis.ordering();
    using Summary = std::map<Polynomial, BranchSummary::histogram>;
    std::map<Polynomial, Summary> memo;

    std::function<const Summary&(const Polynomial&)> visit = [&](const Polynomial& p) -> const Summary& {
        if (auto it = memo.find(p); it != memo.end()) return it->second;
        if (memo.size() >= node_budget) throw budget_exceeded(node_budget);
        Summary summary;
        bool leaf = true;
        for (const auto& m : sorted_terms(ord, p)) {
            auto idx = strategy(m.pp, basis);
            if (!idx) continue;
            leaf = false;
            const Summary& child = visit(reduce_step(p, basis[*idx], m.pp, ord));
            for (const auto& [nf, hist] : child) {
                auto& mine = summary[nf];
                for (const auto& [len, count] : hist)
                    mine[len + 1] = BranchSummary::saturating_add(mine[len + 1], count);
            }
        }
        if (leaf) summary[p][0] = 1;
        return memo.emplace(p, std::move(summary)).first->second;
    };

    BranchSummary out;
    out.normal_forms = visit(g);
    out.nodes_explored = memo.size();
    return out;
}

}  // namespace redmach
