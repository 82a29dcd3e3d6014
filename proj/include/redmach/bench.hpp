#pragma once

// Timing harness comparing normal-form engines inside Buchberger's algorithm.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "redmach/corpus.hpp"
#include "redmach/error.hpp"
#include "redmach/groebner.hpp"
#include "redmach/io.hpp"
#include "redmach/ordering.hpp"

namespace redmach {

struct BenchConfig {
    std::size_t runs = 1000;
    std::size_t warmup = 1;
    OrderKind order = OrderKind::grlex;
    GroebnerMode mode = GroebnerMode::improved;
    std::vector<Engine> engines{Engine::classic, Engine::machine, Engine::cached};
    std::string strategy = "maxlpp";
    /// Worker count of the parallel engine.
    std::size_t workers = 2;
    /// Empty means the built-in corpus.
    std::vector<ProblemSpec> problems;
};

struct BenchRecord {
    int problem = 0;
    Engine engine = Engine::classic;
    OrderKind ordering = OrderKind::grlex;
    std::uint64_t mean_ns = 0;
    std::uint64_t median_ns = 0;
    std::size_t basis_size = 0;
    std::size_t steps = 0;
    /// Set when the engine failed on this problem; timings are then meaningless.
    std::optional<std::string> error;
};

/// Raised when engines disagree on the reduced basis of a problem.
class bench_mismatch : public error {
public:
    using error::error;
};

inline std::uint64_t median_of(std::vector<std::uint64_t> samples) {
    if (samples.empty()) return 0;
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    return n % 2 ? samples[n / 2] : (samples[n / 2 - 1] + samples[n / 2]) / 2;
}

/// Times every (problem, engine) cell sequentially on a monotonic clock and
/// checks afterwards that all engines produced the same reduced basis.
/// `progress`, when set, is called after each finished cell.
inline std::vector<BenchRecord> run_bench(const BenchConfig& config,
                                          const std::function<void(const BenchRecord&)>& progress = {}) {
    if (config.runs == 0) throw error("bench needs at least one timed run");
    const auto& problems = config.problems.empty() ? corpus() : config.problems;
    auto strategy = strategy_by_name(config.strategy);
    if (!strategy) throw error("unknown strategy '" + config.strategy + "'");

    std::vector<BenchRecord> records;
    for (const auto& problem : problems) {
        const Ordering ord(config.order, problem.ring.arity());
        std::vector<std::pair<Engine, std::vector<Polynomial>>> bases;
        for (Engine engine : config.engines) {
            BenchRecord rec{problem.id, engine, config.order, 0, 0, 0, 0, std::nullopt};
            try {
                BuchbergerOptions opts;
                opts.mode = config.mode;
                opts.reducer = Reducer(engine, *strategy, config.workers);
                for (std::size_t i = 0; i < config.warmup; ++i) (void)buchberger(problem.generators, ord, opts);
                std::vector<std::uint64_t> samples;
                samples.reserve(config.runs);
                GroebnerResult last;
                for (std::size_t i = 0; i < config.runs; ++i) {
                    const auto t0 = std::chrono::steady_clock::now();
                    last = buchberger(problem.generators, ord, opts);
                    const auto t1 = std::chrono::steady_clock::now();
                    samples.push_back(static_cast<std::uint64_t>(
                        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
                }
                std::uint64_t total = 0;
                for (auto s : samples) total += s;
                rec.mean_ns = total / samples.size();
                rec.median_ns = median_of(samples);
                rec.steps = last.stats.reduction_steps;
                auto reduced = last.reduced ? std::move(last.basis) : inter_reduce(std::move(last.basis), ord, opts.reducer);
                rec.basis_size = reduced.size();
                bases.emplace_back(engine, std::move(reduced));
            } catch (const std::exception& e) {
                rec.error = e.what();
            }
            records.push_back(rec);
            if (progress) progress(records.back());
        }
        for (std::size_t k = 1; k < bases.size(); ++k) {
            if (!same_basis(bases[0].second, bases[k].second)) {
                std::ostringstream msg;
                msg << "problem " << problem.id << ": engine " << label(bases[k].first) << " basis differs from "
                    << label(bases[0].first) << "\n  " << label(bases[0].first) << ":";
                for (const auto& p : bases[0].second) msg << "\n    " << format(p, problem.ring, ord);
                msg << "\n  " << label(bases[k].first) << ":";
                for (const auto& p : bases[k].second) msg << "\n    " << format(p, problem.ring, ord);
                throw bench_mismatch(msg.str());
            }
        }
    }
    return records;
}

inline constexpr const char* bench_csv_header = "problem,engine,ordering,mean_ns,median_ns,basis_size,steps";

/// Failed cells keep their problem/engine/ordering and leave the rest empty.
inline void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << bench_csv_header << '\n';
    for (const auto& r : records) {
        out << r.problem << ',' << label(r.engine) << ',' << to_string(r.ordering) << ',';
        if (r.error)
            out << ",,,";
        else
            out << r.mean_ns << ',' << r.median_ns << ',' << r.basis_size << ',' << r.steps;
        out << '\n';
    }
}

/// Aligned table with, per problem, the engines ranked by mean time.
inline void write_table(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << std::left << std::setw(8) << "problem" << std::setw(8) << "engine" << std::right << std::setw(14)
        << "mean_us" << std::setw(14) << "median_us" << std::setw(8) << "basis" << std::setw(10) << "steps"
        << "  ranking\n";
    std::map<int, std::vector<const BenchRecord*>> by_problem;
    for (const auto& r : records) by_problem[r.problem].push_back(&r);
    for (const auto& [id, rows] : by_problem) {
        std::vector<const BenchRecord*> ok;
        for (auto* r : rows)
            if (!r->error) ok.push_back(r);
        std::sort(ok.begin(), ok.end(), [](auto* a, auto* b) { return a->mean_ns < b->mean_ns; });
        std::string ranking;
        for (auto* r : ok) ranking += (ranking.empty() ? "" : " < ") + std::string(label(r->engine));
        bool first = true;
        for (auto* r : rows) {
            out << std::left << std::setw(8) << r->problem << std::setw(8) << label(r->engine) << std::right;
            if (r->error) {
                out << "  failed: " << *r->error;
            } else {
                out << std::fixed << std::setprecision(1) << std::setw(14) << r->mean_ns / 1000.0 << std::setw(14)
                    << r->median_ns / 1000.0 << std::setw(8) << r->basis_size << std::setw(10) << r->steps;
                if (first) out << "  " << ranking;
            }
            first = false;
            out << '\n';
        }
    }
}

}  // namespace redmach
