#pragma once

// Buchberger's algorithm over a pluggable normal-form engine, together with
// interreduction, Gröbner tests, ideal membership and congruence.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "redmach/error.hpp"
#include "redmach/machine.hpp"
#include "redmach/ordering.hpp"
#include "redmach/poly.hpp"
#include "redmach/reduction.hpp"
#include "redmach/worker_pool.hpp"

namespace redmach {

enum class Engine { classic, machine, cached, parallel };

inline std::string_view to_string(Engine e) {
    switch (e) {
        case Engine::classic: return "classic";
        case Engine::machine: return "machine";
        case Engine::cached: return "cached";
        case Engine::parallel: return "parallel";
    }
    return "?";
}

/// Short labels used in benchmark output: C, RM, RMc, RMp.
inline std::string_view label(Engine e) {
    switch (e) {
        case Engine::classic: return "C";
        case Engine::machine: return "RM";
        case Engine::cached: return "RMc";
        case Engine::parallel: return "RMp";
    }
    return "?";
}

inline std::optional<Engine> parse_engine(std::string_view name) {
    for (auto e : {Engine::classic, Engine::machine, Engine::cached, Engine::parallel})
        if (name == to_string(e) || name == label(e)) return e;
    return std::nullopt;
}

/// A normal-form routine: one engine plus a fixed selection strategy.
/// Copies share the worker pool of the parallel engine.
class Reducer {
public:
    struct Outcome {
        Polynomial remainder;
        /// classic: reduction steps; machine and parallel: substitutions;
        /// cached: expansions.
        std::size_t steps = 0;
    };

    explicit Reducer(Engine engine = Engine::classic, SelectionStrategy strategy = max_lpp(), std::size_t workers = 1)
        : engine_(engine), strategy_(std::move(strategy)) {
        if (engine_ == Engine::parallel) {
            if (workers == 0) throw error("parallel engine needs at least one worker");
            pool_ = std::make_shared<WorkerPool>(workers);
        }
    }

    Engine engine() const noexcept { return engine_; }
    const SelectionStrategy& strategy() const noexcept { return strategy_; }
    std::size_t workers() const noexcept { return pool_ ? pool_->size() : 1; }

    Outcome operator()(const Polynomial& g, const Basis& basis) const {
        switch (engine_) {
            case Engine::classic: {
                auto r = classic_reduce(g, basis, strategy_);
                return {std::move(r.remainder), r.steps};
            }
            case Engine::machine: {
                auto r = machine_reduce(g, basis, strategy_);
                return {std::move(r.result), r.substitutions};
            }
            case Engine::cached: {
                auto r = run_cached_machine(g, basis, strategy_);
                return {std::move(r.result), r.expansions};
            }
            case Engine::parallel: {
                auto r = run_parallel_machine(g, basis, strategy_, *pool_);
                return {std::move(r.result), r.substitutions};
            }
        }
        throw error("unknown engine");
    }

private:
    Engine engine_;
    SelectionStrategy strategy_;
    std::shared_ptr<WorkerPool> pool_;
};

/// (lcm / LM(f)) * f - (lcm / LM(g)) * g with lcm = lcm(LPP(f), LPP(g)).
inline Polynomial spol(const Polynomial& f, const Polynomial& g, const Ordering& ord) {
    const Decomposition hf = decompose(ord, f);
    const Decomposition hg = decompose(ord, g);
    const PowerProduct l = lcm(hf.lpp, hg.lpp);
    return Monomial{Coefficient(1 / hf.lc), quotient(l, hf.lpp)} * f -
           Monomial{Coefficient(1 / hg.lc), quotient(l, hg.lpp)} * g;
}

inline Polynomial make_monic(const Polynomial& p, const Ordering& ord) {
    if (p.is_zero()) return p;
    return Coefficient(1 / leading_term(ord, p).coeff) * p;
}

enum class GroebnerMode { classic, improved };

inline std::string_view to_string(GroebnerMode m) { return m == GroebnerMode::classic ? "classic" : "improved"; }

inline std::optional<GroebnerMode> parse_mode(std::string_view name) {
    if (name == "classic" || name == "CLASSIC") return GroebnerMode::classic;
    if (name == "improved" || name == "IMPROVED") return GroebnerMode::improved;
    return std::nullopt;
}

struct CriticalPair {
    std::size_t i;
    std::size_t j;
    PowerProduct lcm;
    std::uint64_t degree;
};

/// Pair queue order: lcm degree, then the monomial ordering on the lcm, then
/// indices.
struct PairOrder {
    Ordering ord;
    bool operator()(const CriticalPair& a, const CriticalPair& b) const {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (auto c = ord.compare(a.lcm, b.lcm); c != 0) return c < 0;
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    }
};

struct GroebnerStats {
    std::size_t pairs_processed = 0;
    std::size_t skipped_product = 0;
    std::size_t skipped_chain = 0;
    std::size_t zero_reductions = 0;
    std::size_t reduction_steps = 0;
};

/// rows[k][j] is the coefficient of input generator j in basis element k.
using CofactorMatrix = std::vector<std::vector<Polynomial>>;

struct GroebnerResult {
    std::vector<Polynomial> basis;
    bool reduced = false;
    Engine engine = Engine::classic;
    GroebnerMode mode = GroebnerMode::improved;
    GroebnerStats stats;
    std::optional<CofactorMatrix> cofactors;
};

struct BuchbergerOptions {
    GroebnerMode mode = GroebnerMode::improved;
    Reducer reducer{};
    /// Record, for every basis element, its representation over the input.
    bool track_cofactors = false;
};

namespace detail {

    inline void axpy(std::vector<Polynomial>& row, const Monomial& factor, const std::vector<Polynomial>& other) {
        for (std::size_t j = 0; j < row.size(); ++j) row[j] += factor * other[j];
    }

    inline void scale(std::vector<Polynomial>& row, const Coefficient& c) {
        for (auto& p : row) p = c * std::move(p);
    }

    /// Engine normal form; with cofactor tracking also the classic cofactor
    /// reduction, whose remainder must agree with the engine's.
    struct TrackedReduction {
        Polynomial remainder;
        std::size_t steps = 0;
        std::optional<CofactorReduction> cofactors;
    };

    inline TrackedReduction tracked_reduce(const Polynomial& g, const Basis& basis, const Reducer& reducer,
                                           bool track) {
        auto out = reducer(g, basis);
        TrackedReduction r{std::move(out.remainder), out.steps, std::nullopt};
        if (track) {
            r.cofactors = reduce_with_cofactors(g, basis, reducer.strategy());
            if (r.cofactors->remainder != r.remainder)
                throw std::logic_error("engine normal form disagrees with classic reduction");
        }
        return r;
    }

    inline std::vector<Polynomial> unit_row(std::size_t n, std::size_t j, std::size_t arity) {
        std::vector<Polynomial> row(n, Polynomial(arity));
        row[j] = Polynomial::constant(arity, 1);
        return row;
    }

    inline void validate_generators(const std::vector<Polynomial>& F, const Ordering& ord) {
        ord.require_admissible();
        for (const auto& f : F) {
            if (f.is_zero()) throw zero_polynomial_error("generators must be nonzero");
            if (f.arity() != ord.arity()) throw arity_error(ord.arity(), f.arity());
        }
    }

}  // namespace detail

/// Interreduces G until every element is monic and in normal form modulo
/// the others; zero results are dropped. The output is sorted by ascending
/// leading power product. When `rows` is given it is transformed along with
/// the basis so that element k keeps its representation rows[k].
inline std::vector<Polynomial> inter_reduce(std::vector<Polynomial> G, const Ordering& ord, const Reducer& reducer,
                                            CofactorMatrix* rows = nullptr) {
    ord.require_admissible();
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < G.size(); ++i)
        if (!G[i].is_zero()) keep.push_back(i);
    {
        std::vector<Polynomial> nonzero;
        CofactorMatrix nz_rows;
        for (auto i : keep) {
            nonzero.push_back(std::move(G[i]));
            if (rows) nz_rows.push_back(std::move((*rows)[i]));
        }
        G = std::move(nonzero);
        if (rows) *rows = std::move(nz_rows);
    }

    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < G.size(); ++i) {
            Basis others(ord);
            std::vector<std::size_t> map;
            for (std::size_t k = 0; k < G.size(); ++k) {
                if (k == i) continue;
                others.push_back(G[k]);
                map.push_back(k);
            }
            auto red = detail::tracked_reduce(G[i], others, reducer, rows != nullptr);
            if (red.remainder == G[i]) continue;
            changed = true;
            if (rows) {
                auto& q = red.cofactors->quotients;
                for (std::size_t k = 0; k < q.size(); ++k)
                    for (const auto& m : q[k].terms()) detail::axpy((*rows)[i], Monomial{-m.coeff, m.pp}, (*rows)[map[k]]);
            }
            if (red.remainder.is_zero()) {
                G.erase(G.begin() + static_cast<std::ptrdiff_t>(i));
                if (rows) rows->erase(rows->begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                G[i] = std::move(red.remainder);
            }
            break;
        }
    }

    std::vector<std::size_t> order(G.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<PowerProduct> lpps;
    for (const auto& g : G) lpps.push_back(leading_term(ord, g).pp);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ord.less(lpps[a], lpps[b]); });
    std::vector<Polynomial> out;
    CofactorMatrix out_rows;
    for (auto i : order) {
        const Coefficient inv = 1 / leading_term(ord, G[i]).coeff;
        out.push_back(inv * G[i]);
        if (rows) {
            detail::scale((*rows)[i], inv);
            out_rows.push_back(std::move((*rows)[i]));
        }
    }
    if (rows) *rows = std::move(out_rows);
    return out;
}

inline GroebnerResult buchberger(const std::vector<Polynomial>& F, const Ordering& ord,
                                 const BuchbergerOptions& options = {}) {
    if (F.empty()) throw error("buchberger needs at least one generator");
    detail::validate_generators(F, ord);
    const std::size_t arity = ord.arity();
    const Reducer& reducer = options.reducer;
    const bool improved = options.mode == GroebnerMode::improved;
    const bool track = options.track_cofactors;

    GroebnerResult result;
    result.engine = reducer.engine();
    result.mode = options.mode;
    Basis G(ord, F);
    CofactorMatrix rows;
    if (track)
        for (std::size_t j = 0; j < F.size(); ++j) rows.push_back(detail::unit_row(F.size(), j, arity));

    std::set<CriticalPair, PairOrder> queue(PairOrder{ord});
    std::set<std::pair<std::size_t, std::size_t>> pending;
    auto add_pairs_with = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            PowerProduct l = lcm(G.head(i).lpp, G.head(j).lpp);
            const auto d = l.degree();
            queue.insert({i, j, std::move(l), d});
            pending.emplace(i, j);
        }
    };
    for (std::size_t j = 1; j < G.size(); ++j) add_pairs_with(j);

    auto is_pending = [&](std::size_t a, std::size_t b) { return pending.contains({std::min(a, b), std::max(a, b)}); };

    while (!queue.empty()) {
        const CriticalPair pair = *queue.begin();
        queue.erase(queue.begin());
        pending.erase({pair.i, pair.j});

        if (improved) {
            // coprime leading power products
            if (pair.lcm == G.head(pair.i).lpp * G.head(pair.j).lpp) {
                ++result.stats.skipped_product;
                continue;
            }
            bool chain = false;
            for (std::size_t k = 0; k < G.size() && !chain; ++k) {
                if (k == pair.i || k == pair.j) continue;
                chain = divides(G.head(k).lpp, pair.lcm) && !is_pending(pair.i, k) && !is_pending(pair.j, k);
            }
            if (chain) {
                ++result.stats.skipped_chain;
                continue;
            }
        }

        ++result.stats.pairs_processed;
        const Polynomial s = spol(G[pair.i], G[pair.j], ord);
        auto red = detail::tracked_reduce(s, G, reducer, track);
        result.stats.reduction_steps += red.steps;
        if (red.remainder.is_zero()) {
            ++result.stats.zero_reductions;
            continue;
        }
        const Coefficient inv = 1 / leading_term(ord, red.remainder).coeff;
        if (track) {
            const auto& hi = G.head(pair.i);
            const auto& hj = G.head(pair.j);
            std::vector<Polynomial> row(F.size(), Polynomial(arity));
            detail::axpy(row, Monomial{Coefficient(1 / hi.lc), quotient(pair.lcm, hi.lpp)}, rows[pair.i]);
            detail::axpy(row, Monomial{Coefficient(-1 / hj.lc), quotient(pair.lcm, hj.lpp)}, rows[pair.j]);
            const auto& q = red.cofactors->quotients;
            for (std::size_t k = 0; k < q.size(); ++k)
                for (const auto& m : q[k].terms()) detail::axpy(row, Monomial{-m.coeff, m.pp}, rows[k]);
            detail::scale(row, inv);
            rows.push_back(std::move(row));
        }
        G.push_back(inv * red.remainder);
        add_pairs_with(G.size() - 1);
    }

    std::vector<Polynomial> basis(G.generators().begin(), G.generators().end());
    if (improved) {
        basis = inter_reduce(std::move(basis), ord, reducer, track ? &rows : nullptr);
        result.reduced = true;
    }
    result.basis = std::move(basis);
    if (track) result.cofactors = std::move(rows);
    return result;
}

/// Reduced Gröbner basis of F: buchberger followed, in classic mode, by an
/// explicit interreduction.
inline std::vector<Polynomial> reduced_groebner_basis(const std::vector<Polynomial>& F, const Ordering& ord,
                                                      const BuchbergerOptions& options = {}) {
    auto r = buchberger(F, ord, options);
    if (r.reduced) return std::move(r.basis);
    return inter_reduce(std::move(r.basis), ord, options.reducer);
}

/// Every S-polynomial of G reduces to zero modulo G.
inline bool is_groebner(const std::vector<Polynomial>& G, const Ordering& ord, const Reducer& reducer = Reducer{}) {
    detail::validate_generators(G, ord);
    Basis basis(ord, G);
    for (std::size_t j = 1; j < G.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (!reducer(spol(G[i], G[j], ord), basis).remainder.is_zero()) return false;
    return true;
}

/// Membership test against a basis that is already a Gröbner basis.
inline bool ideal_member_gb(const Polynomial& g, const std::vector<Polynomial>& gb, const Ordering& ord,
                            const Reducer& reducer = Reducer{}) {
    return reducer(g, Basis(ord, gb)).remainder.is_zero();
}

inline bool ideal_member(const Polynomial& g, const std::vector<Polynomial>& F, const Ordering& ord,
                         const Reducer& reducer = Reducer{}) {
    if (g.is_zero()) return true;
    BuchbergerOptions opts;
    opts.reducer = reducer;
    return ideal_member_gb(g, buchberger(F, ord, opts).basis, ord, reducer);
}

inline bool congruent(const Polynomial& g, const Polynomial& h, const std::vector<Polynomial>& F,
                      const Ordering& ord, const Reducer& reducer = Reducer{}) {
    return ideal_member(g - h, F, ord, reducer);
}

/// Set equality of two bases.
inline bool same_basis(std::vector<Polynomial> a, std::vector<Polynomial> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

/// Checks basis[k] == sum_j rows[k][j] * F[j] for every k.
inline bool verify_cofactors(const std::vector<Polynomial>& F, const std::vector<Polynomial>& basis,
                             const CofactorMatrix& rows) {
    if (rows.size() != basis.size()) return false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (rows[k].size() != F.size()) return false;
        Polynomial sum(basis[k].arity());
        for (std::size_t j = 0; j < F.size(); ++j) sum += rows[k][j] * F[j];
        if (sum != basis[k]) return false;
    }
    return true;
}

}  // namespace redmach
