#pragma once

// Reduction machines: every monomial of the input is reduced on its own
// ("reduction thread") and the irreducible leaves of all threads are summed.
//
// Three executions are provided:
//   run_machine           plain FIFO worklist, recording every thread tree
//   run_cached_machine    one graph vertex per power product, each reducible
//                         power product is expanded once and coefficients
//                         are propagated along the edges afterwards
//   run_parallel_machine  threads distributed over a worker pool sharing a
//                         synchronized substitution cache

#include <algorithm>
#include <cstddef>
#include <deque>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "redmach/error.hpp"
#include "redmach/io.hpp"
#include "redmach/ordering.hpp"
#include "redmach/poly.hpp"
#include "redmach/reduction.hpp"
#include "redmach/worker_pool.hpp"

namespace redmach {

/// -(t / LM(f)) * R(f) for the strategy's reducer f of t, i.e. the
/// substitution of the unit monomial 1*t. Terms are in descending order.
struct UnitSubstitution {
    std::optional<std::size_t> reducer;
    std::vector<Monomial> terms;

    bool reducible() const noexcept { return reducer.has_value(); }
};

inline UnitSubstitution unit_substitution(const PowerProduct& t, const Basis& basis,
                                          const SelectionStrategy& strategy) {
    UnitSubstitution out;
    out.reducer = strategy(t, basis);
    if (!out.reducer) return out;
    const Decomposition& head = basis.head(*out.reducer);
    const PowerProduct shift = quotient(t, head.lpp);
    for (const auto& r : sorted_terms(basis.ordering(), head.rest))
        out.terms.push_back({Coefficient(-r.coeff / head.lc), shift * r.pp});
    return out;
}

/// Monomial substitution of m: the monomials of -(m / LM(f)) * R(f).
inline std::vector<Monomial> substitution(const Monomial& m, const Basis& basis, const SelectionStrategy& strategy) {
    UnitSubstitution unit = unit_substitution(m.pp, basis, strategy);
    if (!unit.reducible()) throw irreducible_error("substitution of an irreducible monomial");
    for (auto& s : unit.terms) s.coeff *= m.coeff;
    return std::move(unit.terms);
}

struct ThreadNode {
    Monomial monomial;
    /// Set on internal nodes: the generator used for the substitution.
    std::optional<std::size_t> reducer;
    std::vector<std::size_t> children;
};

/// Tree of one reduction thread; nodes[0] is the root.
struct ReductionThreadTree {
    std::vector<ThreadNode> nodes;

    const ThreadNode& root() const { return nodes.front(); }

    /// Number of internal (expanded) nodes.
    std::size_t substitutions() const {
        return static_cast<std::size_t>(
            std::count_if(nodes.begin(), nodes.end(), [](const ThreadNode& n) { return n.reducer.has_value(); }));
    }

    /// Longest root-to-leaf chain of substitutions.
    std::size_t height() const {
        std::vector<std::size_t> depth(nodes.size(), 0);
        std::size_t best = 0;
        // children are always appended after their parent
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (auto c : nodes[i].children) depth[c] = depth[i] + 1;
            best = std::max(best, depth[i]);
        }
        return best;
    }

    std::vector<Monomial> leaves() const {
        std::vector<Monomial> out;
        for (const auto& n : nodes)
            if (!n.reducer) out.push_back(n.monomial);
        return out;
    }

    bool contains(const PowerProduct& t) const {
        return std::any_of(nodes.begin(), nodes.end(), [&](const ThreadNode& n) { return n.monomial.pp == t; });
    }
};

struct MachineTrace {
    std::vector<ReductionThreadTree> threads;
    std::size_t substitution_count = 0;
    std::size_t parallel_depth = 0;
    Polynomial result;
};

namespace detail {

    inline void check_inputs(const Polynomial& g, const Basis& basis) {
        basis.ordering().require_admissible();
        if (g.arity() != basis.arity()) throw arity_error(basis.arity(), g.arity());
    }

    inline Polynomial sum_leaves(std::size_t arity, std::vector<Monomial> leaves) {
        return Polynomial::from_terms(arity, std::move(leaves));
    }

}  // namespace detail

/// Plain reduction machine with full thread trees. Monomials are taken from
/// the worklist in FIFO order, so the trees grow breadth first.
inline MachineTrace run_machine(const Polynomial& g, const Basis& basis, const SelectionStrategy& strategy) {
    detail::check_inputs(g, basis);
    MachineTrace trace;
    struct Item {
        std::size_t thread;
        std::size_t node;
    };
    std::deque<Item> work;
    for (const auto& m : sorted_terms(basis.ordering(), g)) {
        trace.threads.push_back({{ThreadNode{m, std::nullopt, {}}}});
        work.push_back({trace.threads.size() - 1, 0});
    }
    std::vector<Monomial> leaves;
    while (!work.empty()) {
        const Item item = work.front();
        work.pop_front();
        auto& tree = trace.threads[item.thread];
        UnitSubstitution unit = unit_substitution(tree.nodes[item.node].monomial.pp, basis, strategy);
        if (!unit.reducible()) {
            leaves.push_back(tree.nodes[item.node].monomial);
            continue;
        }
        const Coefficient c = tree.nodes[item.node].monomial.coeff;
        tree.nodes[item.node].reducer = unit.reducer;
        ++trace.substitution_count;
        for (auto& s : unit.terms) {
            const std::size_t child = tree.nodes.size();
            tree.nodes.push_back({{Coefficient(c * s.coeff), std::move(s.pp)}, std::nullopt, {}});
            tree.nodes[item.node].children.push_back(child);
            work.push_back({item.thread, child});
        }
    }
    for (const auto& t : trace.threads) trace.parallel_depth = std::max(trace.parallel_depth, t.height());
    trace.result = detail::sum_leaves(g.arity(), std::move(leaves));
    return trace;
}

struct MachineRun {
    Polynomial result;
    std::size_t substitutions = 0;
};

/// The plain machine without trace recording.
inline MachineRun machine_reduce(const Polynomial& g, const Basis& basis, const SelectionStrategy& strategy) {
    detail::check_inputs(g, basis);
    std::deque<Monomial> work(g.terms().begin(), g.terms().end());
    std::vector<Monomial> leaves;
    std::size_t substitutions = 0;
    while (!work.empty()) {
        Monomial m = std::move(work.front());
        work.pop_front();
        UnitSubstitution unit = unit_substitution(m.pp, basis, strategy);
        if (!unit.reducible()) {
            leaves.push_back(std::move(m));
            continue;
        }
        ++substitutions;
        for (auto& s : unit.terms) work.push_back({Coefficient(m.coeff * s.coeff), std::move(s.pp)});
    }
    return {detail::sum_leaves(g.arity(), std::move(leaves)), substitutions};
}

// ---------------------------------------------------------------------------
// Cached machine

/// A coefficient contribution to a vertex. Without a parent it is a
/// coefficient of the input polynomial; with a parent it is the factor the
/// parent's substitution applies per unit of the parent's total coefficient.
struct Multiple {
    Coefficient coeff;
    std::optional<std::size_t> parent;
};

struct Vertex {
    PowerProduct pp;
    bool reducible = false;
    std::vector<Multiple> multiples;
    std::vector<std::size_t> out;
};

/// At most one vertex per power product; edges point from a reducible vertex
/// to every power product of its substitution.
class ReductionGraph {
public:
    std::size_t size() const noexcept { return vertices_.size(); }
    const Vertex& operator[](std::size_t v) const { return vertices_[v]; }
    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }

    std::optional<std::size_t> find(const PowerProduct& t) const {
        auto it = index_.find(t);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const PowerProduct& t) const { return index_.contains(t); }

    std::size_t create_vertex(const PowerProduct& t, Multiple m) {
        vertices_.push_back({t, false, {std::move(m)}, {}});
        index_.emplace(t, vertices_.size() - 1);
        return vertices_.size() - 1;
    }

    void add_multiple(std::size_t v, Multiple m) { vertices_[v].multiples.push_back(std::move(m)); }
    void add_edge(std::size_t from, std::size_t to) { vertices_[from].out.push_back(to); }
    void mark_reducible(std::size_t v) { vertices_[v].reducible = true; }

    std::vector<std::size_t> irreducible_vertices() const {
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if (!vertices_[v].reducible) out.push_back(v);
        return out;
    }

    std::size_t reducible_count() const {
        return static_cast<std::size_t>(
            std::count_if(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.reducible; }));
    }

    std::size_t edge_count() const {
        std::size_t n = 0;
        for (const auto& v : vertices_) n += v.out.size();
        return n;
    }

private:
    std::vector<Vertex> vertices_;
    std::unordered_map<PowerProduct, std::size_t, PowerProductHash> index_;
};

/// Memoized backward propagation of coefficients through a ReductionGraph:
/// total(v) = sum over multiples m of coeff(m) * (total(parent) or 1).
class CoefficientCollector {
public:
    explicit CoefficientCollector(const ReductionGraph& graph)
        : graph_(graph), totals_(graph.size()), state_(graph.size(), state::fresh) {}

    const Coefficient& operator()(std::size_t v) {
        if (state_[v] == state::done) return totals_[v];
        if (state_[v] == state::active) throw error("cycle in reduction graph");
        state_[v] = state::active;
        Coefficient s = 0;
        for (const auto& m : graph_[v].multiples) {
            if (m.parent)
                s += m.coeff * (*this)(*m.parent);
            else
                s += m.coeff;
        }
        totals_[v] = std::move(s);
        state_[v] = state::done;
        return totals_[v];
    }

private:
    enum class state : unsigned char { fresh, active, done };
    const ReductionGraph& graph_;
    std::vector<Coefficient> totals_;
    std::vector<state> state_;
};

inline Coefficient collect_coefficients(std::size_t v, const ReductionGraph& graph) {
    return CoefficientCollector(graph)(v);
}

/// Sum of c(v) * pp(v) over irreducible vertices with nonzero total c(v).
inline Polynomial collect_remainder(const ReductionGraph& graph, std::size_t arity) {
    CoefficientCollector collect(graph);
    std::vector<Monomial> terms;
    for (auto v : graph.irreducible_vertices()) {
        const Coefficient& c = collect(v);
        if (!c.is_zero()) terms.push_back({c, graph[v].pp});
    }
    return Polynomial::from_terms(arity, std::move(terms));
}

struct MonomialWorkItem {
    Monomial monomial;
    bool og = false;
    bool used = false;
};

struct CachedMachineResult {
    Polynomial result;
    ReductionGraph graph;
    /// Worklist in processing order, every entry used at the end.
    std::vector<MonomialWorkItem> worklist;
    std::size_t expansions = 0;
};

/// Reduction machine with caching. The worklist holds each power product at
/// most once; a power product reached again only gains a multiple on its
/// existing vertex.
inline CachedMachineResult run_cached_machine(const Polynomial& g, const Basis& basis,
                                              const SelectionStrategy& strategy) {
    detail::check_inputs(g, basis);
    CachedMachineResult out;
    auto& graph = out.graph;
    auto& work = out.worklist;
    std::unordered_set<PowerProduct, PowerProductHash> listed;
    for (const auto& m : sorted_terms(basis.ordering(), g)) {
        work.push_back({m, true, false});
        listed.insert(m.pp);
    }

    for (std::size_t next = 0; next < work.size(); ++next) {
        // copy: `work` may reallocate below
        const Monomial m = work[next].monomial;
        const bool og = work[next].og;
        if (og) {
            if (auto v = graph.find(m.pp))
                graph.add_multiple(*v, {m.coeff, std::nullopt});
            else
                graph.create_vertex(m.pp, {m.coeff, std::nullopt});
        }
        UnitSubstitution unit = unit_substitution(m.pp, basis, strategy);
        if (unit.reducible()) {
            // expand
            const std::size_t source = *graph.find(m.pp);
            graph.mark_reducible(source);
            ++out.expansions;
            for (auto& s : unit.terms) {
                std::size_t dest;
                if (auto v = graph.find(s.pp)) {
                    dest = *v;
                    graph.add_multiple(dest, {s.coeff, source});
                } else {
                    dest = graph.create_vertex(s.pp, {s.coeff, source});
                }
                graph.add_edge(source, dest);
                // update
                if (listed.insert(s.pp).second) work.push_back({std::move(s), false, false});
            }
        }
        work[next].used = true;
    }
    out.result = collect_remainder(graph, g.arity());
    return out;
}

/// One line per vertex "pp | multiples" followed by one line per edge
/// "pp -> pp". A multiple is printed as its coefficient, followed by
/// "@parent" when inherited; reducible vertices carry a trailing " *".
inline std::string graph_text(const ReductionGraph& graph, const Ring& ring) {
    std::string out;
    for (const auto& v : graph.vertices()) {
        out += format(v.pp, ring) + " |";
        bool first = true;
        for (const auto& m : v.multiples) {
            out += first ? " " : ", ";
            first = false;
            out += m.coeff.str();
            if (m.parent) out += "@" + format(graph[*m.parent].pp, ring);
        }
        if (v.reducible) out += " *";
        out += '\n';
    }
    for (const auto& v : graph.vertices())
        for (auto d : v.out) out += format(v.pp, ring) + " -> " + format(graph[d].pp, ring) + '\n';
    return out;
}

// ---------------------------------------------------------------------------
// Parallel machine

/// Thread-safe memo of unit substitutions keyed by power product. Values are
/// pure functions of (power product, basis, strategy), so insertion races
/// are harmless: the first writer wins and every reader sees equal data.
class SubstitutionCache {
public:
    SubstitutionCache(const Basis& basis, const SelectionStrategy& strategy) : basis_(basis), strategy_(strategy) {}

    std::shared_ptr<const UnitSubstitution> get(const PowerProduct& t) {
        {
            std::shared_lock lk(mutex_);
            if (auto it = map_.find(t); it != map_.end()) return it->second;
        }
        auto computed = std::make_shared<const UnitSubstitution>(unit_substitution(t, basis_, strategy_));
        std::unique_lock lk(mutex_);
        return map_.try_emplace(t, std::move(computed)).first->second;
    }

    std::size_t size() const {
        std::shared_lock lk(mutex_);
        return map_.size();
    }

private:
    const Basis& basis_;
    const SelectionStrategy& strategy_;
    mutable std::shared_mutex mutex_;
    std::unordered_map<PowerProduct, std::shared_ptr<const UnitSubstitution>, PowerProductHash> map_;
};

inline MachineRun run_parallel_machine(const Polynomial& g, const Basis& basis, const SelectionStrategy& strategy,
                                       WorkerPool& pool) {
    detail::check_inputs(g, basis);
    SubstitutionCache cache(basis, strategy);
    const auto inputs = g.terms();
    std::vector<std::vector<Monomial>> leaves(inputs.size());
    std::vector<std::size_t> substitutions(inputs.size(), 0);

    pool.parallel_for(inputs.size(), [&](std::size_t i, std::size_t) {
        std::vector<Monomial> stack{inputs[i]};
        while (!stack.empty()) {
            Monomial m = std::move(stack.back());
            stack.pop_back();
            auto unit = cache.get(m.pp);
            if (!unit->reducible()) {
                leaves[i].push_back(std::move(m));
                continue;
            }
            ++substitutions[i];
            for (const auto& s : unit->terms) stack.push_back({Coefficient(m.coeff * s.coeff), s.pp});
        }
    });

    MachineRun out;
    std::vector<Monomial> all;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        all.insert(all.end(), std::make_move_iterator(leaves[i].begin()), std::make_move_iterator(leaves[i].end()));
        out.substitutions += substitutions[i];
    }
    out.result = detail::sum_leaves(g.arity(), std::move(all));
    return out;
}

inline MachineRun run_parallel_machine(const Polynomial& g, const Basis& basis, const SelectionStrategy& strategy,
                                       std::size_t worker_count) {
    if (worker_count == 0) throw error("parallel machine needs at least one worker");
    WorkerPool pool(worker_count);
    return run_parallel_machine(g, basis, strategy, pool);
}

}  // namespace redmach
