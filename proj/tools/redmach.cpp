// redmach: command-line front end for reduction, Gröbner bases and the
// benchmark harness.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "redmach/redmach.hpp"

using namespace redmach;

namespace {

constexpr const char* grammar_help = R"(Polynomial syntax:
  polynomial := ['+'|'-'] term (('+'|'-') term)*
  term       := factor (['*'] factor)*
  factor     := int['/'posint] | var['^'nat]
  example    : "x^2*y - 1/3*x + 2"

Basis/problem file:
  vars: x,y,z
  <one generator per line>      # comments allowed
)";

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ProblemSpec problem_from_corpus(int id) {
    for (const auto& p : corpus())
        if (p.id == id) return p;
    throw error("no corpus problem with id " + std::to_string(id));
}

struct InputOptions {
    std::string basis_file;
    int problem = 0;

    void add(CLI::App* cmd) {
        cmd->add_option("--basis,-b", basis_file, "Basis/problem file");
        cmd->add_option("--problem,-p", problem, "Use a corpus problem as the basis");
    }

    ProblemSpec load() const {
        if (!basis_file.empty() && problem) throw usage_error("--basis and --problem are mutually exclusive");
        if (!basis_file.empty()) {
            try {
                return parse_problem(read_file(basis_file));
            } catch (const parse_error& e) {
                throw error(basis_file + ": " + e.what());
            }
        }
        if (problem) return problem_from_corpus(problem);
        throw usage_error("a basis is required (--basis FILE or --problem N)");
    }
};

struct EngineOptions {
    std::string order = "grlex";
    std::string strategy = "maxlpp";
    std::string engine = "classic";
    std::size_t workers = 2;

    void add(CLI::App* cmd) {
        cmd->add_option("--order,-o", order, "lex | revlex | grlex | grevlex")->capture_default_str();
        cmd->add_option("--strategy,-s", strategy, "first | maxlpp")->capture_default_str();
        cmd->add_option("--engine,-e", engine, "classic | machine | cached | parallel")->capture_default_str();
        cmd->add_option("--workers,-w", workers, "Workers of the parallel engine")->capture_default_str();
    }

    Ordering ordering(std::size_t arity) const {
        auto kind = parse_order_kind(order);
        if (!kind) throw usage_error("unknown ordering '" + order + "'");
        return {*kind, arity};
    }

    SelectionStrategy selection() const {
        auto s = strategy_by_name(strategy);
        if (!s) throw usage_error("unknown strategy '" + strategy + "'");
        return *s;
    }

    Engine engine_kind() const {
        auto e = parse_engine(engine);
        if (!e) throw usage_error("unknown engine '" + engine + "'");
        return *e;
    }

    Reducer reducer() const {
        if (workers == 0) throw usage_error("--workers must be at least 1");
        return Reducer(engine_kind(), selection(), workers);
    }
};

Polynomial parse_arg(const std::string& text, const Ring& ring) {
    try {
        return parse_polynomial(text, ring);
    } catch (const parse_error& e) {
        throw error("cannot parse '" + text + "': " + e.what());
    }
}

int cmd_reduce(const InputOptions& in, const EngineOptions& eng, const std::string& text, bool trace) {
    const ProblemSpec problem = in.load();
    const Ring& ring = problem.ring;
    const Ordering ord = eng.ordering(ring.arity());
    const Polynomial g = parse_arg(text, ring);
    const Basis basis(ord, problem.generators);
    const auto strategy = eng.selection();

    switch (eng.engine_kind()) {
        case Engine::classic: {
            auto r = classic_reduce(g, basis, strategy, trace);
            std::cout << format(r.remainder, ring, ord) << '\n';
            if (trace) {
                std::cerr << "steps: " << r.steps << '\n';
                for (const auto& s : r.sequence)
                    std::cerr << "  " << format(s.pp, ring) << " by f" << s.reducer + 1 << " -> "
                              << format(s.result, ring, ord) << '\n';
            }
            break;
        }
        case Engine::machine: {
            auto t = run_machine(g, basis, strategy);
            std::cout << format(t.result, ring, ord) << '\n';
            if (trace) {
                std::cerr << "substitutions: " << t.substitution_count << "\nparallel_depth: " << t.parallel_depth
                          << '\n';
                for (const auto& thread : t.threads)
                    std::cerr << "  thread " << format(Polynomial(ring.arity(), thread.root().monomial), ring, ord)
                              << ": " << thread.substitutions() << " substitutions, height " << thread.height()
                              << '\n';
            }
            break;
        }
        case Engine::cached: {
            auto r = run_cached_machine(g, basis, strategy);
            std::cout << format(r.result, ring, ord) << '\n';
            if (trace) std::cerr << "expansions: " << r.expansions << '\n' << graph_text(r.graph, ring);
            break;
        }
        case Engine::parallel: {
            if (eng.workers == 0) throw usage_error("--workers must be at least 1");
            auto r = run_parallel_machine(g, basis, strategy, eng.workers);
            std::cout << format(r.result, ring, ord) << '\n';
            if (trace) std::cerr << "substitutions: " << r.substitutions << '\n';
            break;
        }
    }
    return 0;
}

int cmd_gb(const InputOptions& in, const EngineOptions& eng, const std::string& mode, bool stats) {
    const ProblemSpec problem = in.load();
    const Ordering ord = eng.ordering(problem.ring.arity());
    BuchbergerOptions opts;
    auto m = parse_mode(mode);
    if (!m) throw usage_error("unknown mode '" + mode + "'");
    opts.mode = *m;
    opts.reducer = eng.reducer();
    auto r = buchberger(problem.generators, ord, opts);
    for (const auto& p : r.basis) std::cout << format(p, problem.ring, ord) << '\n';
    if (stats) {
        std::cerr << "engine: " << to_string(r.engine) << "\nmode: " << to_string(r.mode)
                  << "\nreduced: " << (r.reduced ? "yes" : "no") << "\npairs processed: " << r.stats.pairs_processed
                  << "\nskipped (product): " << r.stats.skipped_product
                  << "\nskipped (chain): " << r.stats.skipped_chain << "\nzero reductions: " << r.stats.zero_reductions
                  << "\nreduction steps: " << r.stats.reduction_steps << '\n';
    }
    return 0;
}

std::vector<Engine> parse_engine_list(const std::vector<std::string>& names) {
    std::vector<Engine> out;
    for (const auto& n : names) {
        auto e = parse_engine(n);
        if (!e) throw usage_error("unknown engine '" + n + "'");
        out.push_back(*e);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial reduction machines and Groebner bases over Q"};
    app.require_subcommand(1);
    app.footer(grammar_help);

    InputOptions in;
    EngineOptions eng;

    std::string poly_a, poly_b;
    bool trace = false;
    auto* reduce = app.add_subcommand("reduce", "Normal form of a polynomial modulo a basis");
    in.add(reduce);
    eng.add(reduce);
    reduce->add_option("polynomial", poly_a, "Polynomial to reduce")->required();
    reduce->add_flag("--trace,-t", trace, "Print the reduction trace to stderr");

    std::string mode = "improved";
    bool stats = false;
    auto* gb = app.add_subcommand("gb", "Groebner basis of a problem");
    in.add(gb);
    eng.add(gb);
    gb->add_option("--mode,-m", mode, "classic | improved")->capture_default_str();
    gb->add_flag("--stats", stats, "Print algorithm statistics to stderr");

    auto* member = app.add_subcommand("member", "Ideal membership test");
    in.add(member);
    eng.add(member);
    member->add_option("polynomial", poly_a, "Candidate member")->required();

    auto* cong = app.add_subcommand("congruent", "Congruence of two polynomials modulo an ideal");
    in.add(cong);
    eng.add(cong);
    cong->add_option("lhs", poly_a)->required();
    cong->add_option("rhs", poly_b)->required();

    BenchConfig bench_cfg;
    std::string bench_order = "grlex", bench_mode = "improved", bench_out, bench_problems;
    std::vector<std::string> bench_engines{"C", "RM", "RMc"};
    auto* bench = app.add_subcommand("bench", "Time the engines on the problem collection");
    bench->add_option("--runs,-r", bench_cfg.runs, "Timed runs per cell (env BENCH_RUNS overrides)")
        ->capture_default_str();
    bench->add_option("--warmup", bench_cfg.warmup, "Discarded runs per cell")->capture_default_str();
    bench->add_option("--out", bench_out, "CSV output path (default: stdout)");
    bench->add_option("--order,-o", bench_order, "Monomial ordering")->capture_default_str();
    bench->add_option("--mode,-m", bench_mode, "classic | improved")->capture_default_str();
    bench->add_option("--engines", bench_engines, "Engines to compare (C, RM, RMc, RMp)")
        ->delimiter(',')
        ->capture_default_str();
    bench->add_option("--strategy,-s", bench_cfg.strategy, "first | maxlpp")->capture_default_str();
    bench->add_option("--workers,-w", bench_cfg.workers, "Workers of the parallel engine")->capture_default_str();
    bench->add_option("--problems", bench_problems, "Problem collection file instead of the built-in corpus");

    auto* corpus_cmd = app.add_subcommand("corpus", "Inspect the built-in problem collection");
    corpus_cmd->require_subcommand(1);
    auto* corpus_list = corpus_cmd->add_subcommand("list", "List all problems");
    int show_id = 0;
    auto* corpus_show = corpus_cmd->add_subcommand("show", "Print one problem as a problem file");
    corpus_show->add_option("id", show_id)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help() << '\n';
        return 2;
    }

    try {
        if (*reduce) return cmd_reduce(in, eng, poly_a, trace);
        if (*gb) return cmd_gb(in, eng, mode, stats);
        if (*member) {
            const ProblemSpec problem = in.load();
            const Ordering ord = eng.ordering(problem.ring.arity());
            const bool yes = ideal_member(parse_arg(poly_a, problem.ring), problem.generators, ord, eng.reducer());
            std::cout << (yes ? "true" : "false") << '\n';
            return 0;
        }
        if (*cong) {
            const ProblemSpec problem = in.load();
            const Ordering ord = eng.ordering(problem.ring.arity());
            const bool yes = congruent(parse_arg(poly_a, problem.ring), parse_arg(poly_b, problem.ring),
                                       problem.generators, ord, eng.reducer());
            std::cout << (yes ? "true" : "false") << '\n';
            return 0;
        }
        if (*bench) {
            if (const char* env = std::getenv("BENCH_RUNS")) {
                try {
                    bench_cfg.runs = std::stoul(env);
                } catch (const std::exception&) {
                    throw usage_error(std::string("BENCH_RUNS is not a number: ") + env);
                }
            }
            if (bench_cfg.runs == 0) throw usage_error("--runs must be at least 1");
            auto kind = parse_order_kind(bench_order);
            if (!kind) throw usage_error("unknown ordering '" + bench_order + "'");
            bench_cfg.order = *kind;
            auto m = parse_mode(bench_mode);
            if (!m) throw usage_error("unknown mode '" + bench_mode + "'");
            bench_cfg.mode = *m;
            bench_cfg.engines = parse_engine_list(bench_engines);
            if (!bench_problems.empty()) {
                try {
                    bench_cfg.problems = parse_problem_collection(read_file(bench_problems));
                } catch (const parse_error& e) {
                    throw error(bench_problems + ": " + e.what());
                }
            }
            auto records = run_bench(bench_cfg, [](const BenchRecord& r) {
                if (r.error) std::cerr << "problem " << r.problem << " " << label(r.engine) << " failed: " << *r.error << '\n';
            });
            if (bench_out.empty()) {
                write_csv(std::cout, records);
            } else {
                std::ofstream out(bench_out);
                if (!out) throw error("cannot write '" + bench_out + "'");
                write_csv(out, records);
                write_table(std::cout, records);
            }
            return 0;
        }
        if (*corpus_list) {
            for (const auto& p : corpus()) {
                std::cout << p.id << "\t" << (p.source.empty() ? "-" : p.source) << "\t<";
                for (std::size_t i = 0; i < p.generator_text.size(); ++i)
                    std::cout << (i ? ", " : "") << p.generator_text[i];
                std::cout << ">\n";
            }
            return 0;
        }
        if (*corpus_show) {
            const ProblemSpec p = problem_from_corpus(show_id);
            std::cout << "vars: ";
            for (std::size_t i = 0; i < p.ring.arity(); ++i) std::cout << (i ? "," : "") << p.ring.name(i);
            std::cout << '\n';
            for (const auto& g : p.generator_text) std::cout << g << '\n';
            return 0;
        }
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n\n" << grammar_help;
        return 2;
    } catch (const redmach::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
