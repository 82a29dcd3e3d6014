// Reduces 4x^3 + 2x^2y + 7xy + 2y modulo {x^2 + x - y, x - 2} with every
// engine and prints the machine's threads and the cached graph.

#include <iostream>

#include "redmach/redmach.hpp"

using namespace redmach;

int main() {
    const Ring ring({"x", "y"});
    const Ordering ord(OrderKind::grlex, ring.arity());
    const Basis basis(ord, {parse_polynomial("x^2 + x - y", ring), parse_polynomial("x - 2", ring)});
    const Polynomial g = parse_polynomial("4*x^3 + 2*x^2*y + 7*x*y + 2*y", ring);
    const auto strategy = max_lpp();

    const auto classic = classic_reduce(g, basis, strategy, true);
    std::cout << "classic: " << format(classic.remainder, ring, ord) << " in " << classic.steps << " steps\n";
    for (const auto& step : classic.sequence)
        std::cout << "  reduce " << format(step.pp, ring) << " by f" << step.reducer + 1 << " -> "
                  << format(step.result, ring, ord) << '\n';

    const auto trace = run_machine(g, basis, strategy);
    std::cout << "machine: " << format(trace.result, ring, ord) << ", " << trace.substitution_count
              << " substitutions, parallel depth " << trace.parallel_depth << '\n';
    for (const auto& thread : trace.threads) {
        std::cout << "  thread " << format(Polynomial(ring.arity(), thread.root().monomial), ring, ord) << ": leaves";
        for (const auto& leaf : thread.leaves()) std::cout << ' ' << format(Polynomial(ring.arity(), leaf), ring, ord);
        std::cout << '\n';
    }

    const auto cached = run_cached_machine(g, basis, strategy);
    std::cout << "cached:  " << format(cached.result, ring, ord) << ", " << cached.expansions << " expansions\n"
              << graph_text(cached.graph, ring);

    const auto parallel = run_parallel_machine(g, basis, strategy, 4);
    std::cout << "parallel (4 workers): " << format(parallel.result, ring, ord) << '\n';
}
