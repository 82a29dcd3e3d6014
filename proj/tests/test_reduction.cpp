#include <gtest/gtest.h>

#include "support.hpp"

using namespace redmach;
using redmach::testing::P;

namespace {

const Ring xy({"x", "y"});
const Ordering grlex(OrderKind::grlex, 2);

PowerProduct pp(std::initializer_list<Exponent> e) { return PowerProduct(e); }

Basis example_basis() { return Basis(grlex, {P("x^2 + x - y", xy), P("x - 2", xy)}); }

// Plain tree walk of the reduction process with no sharing between
// subtrees. Returns false when the walk grows past `limit` nodes.
using Histogram = std::map<Polynomial, std::map<std::size_t, std::uint64_t>>;

bool walk(const Polynomial& p, const Basis& basis, const SelectionStrategy& strategy, std::size_t depth, Histogram& out,
          std::size_t& nodes, std::size_t limit) {
    if (++nodes > limit) return false;
    bool leaf = true;
    for (const auto& m : p.terms()) {
        auto idx = strategy(m.pp, basis);
        if (!idx) continue;
        leaf = false;
        const Polynomial& f = basis[*idx];
        const Decomposition d = decompose(basis.ordering(), f);
        Polynomial next = p - Monomial{m.coeff / d.lc, quotient(m.pp, d.lpp)} * f;
        if (!walk(next, basis, strategy, depth + 1, out, nodes, limit)) return false;
    }
    if (leaf) ++out[p][depth];
    return true;
}

}  // namespace

TEST(ReduceStep, Examples) {
    const Polynomial f1 = P("x^2 + x - y", xy), f2 = P("x - 2", xy);
    EXPECT_EQ(reduce_step(P("x^3 + x^2*y + 2*y", xy), f1, pp({3, 0}), grlex), P("x^2*y - x^2 + x*y + 2*y", xy));
    EXPECT_EQ(reduce_step(P("x^2*y - x^2 + x*y + 2*y", xy), f1, pp({2, 0}), grlex), P("x^2*y + x*y + x + y", xy));
    EXPECT_EQ(reduce_step(P("x", xy), f2, pp({1, 0}), grlex), P("2", xy));
}

TEST(ReduceStep, Errors) {
    const Polynomial f1 = P("x^2 + x - y", xy);
    EXPECT_THROW(reduce_step(P("x*y", xy), f1, pp({1, 1}), grlex), divisibility_error);
    EXPECT_THROW(reduce_step(P("x^2", xy), f1, pp({3, 0}), grlex), error);
    EXPECT_THROW(reduce_step(P("x^2", xy), Polynomial(2), pp({2, 0}), grlex), zero_polynomial_error);
}

TEST(ReduceStep, IntroducedTermsPrecedeReducedOne) {
    redmach::testing::Random rnd(31);
    int checked = 0;
    for (auto kind : redmach::testing::admissible_kinds()) {
        const Ordering ord(kind, 3);
        for (int i = 0; i < 300; ++i) {
            auto f = rnd.nonzero_poly(3, 4, 3);
            // make sure at least one term is reducible by f
            auto g = rnd.nonzero_poly(3, 4, 3) + Polynomial(3, Monomial{1, leading_term(ord, f).pp * rnd.pp(3, 2)});
            for (const auto& m : g.terms()) {
                if (!divides(leading_term(ord, f).pp, m.pp)) continue;
                auto h = reduce_step(g, f, m.pp, ord);
                EXPECT_TRUE(h.coefficient(m.pp).is_zero());
                for (const auto& n : (h - g).terms())
                    if (n.pp != m.pp) EXPECT_TRUE(ord.less(n.pp, m.pp));
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 500);
}

TEST(Basis, Validation) {
    EXPECT_THROW(Basis(grlex, {P("x", xy), Polynomial(2)}), zero_polynomial_error);
    EXPECT_THROW(Basis(grlex, {Polynomial::constant(1, 1)}), arity_error);
    auto b = example_basis();
    EXPECT_TRUE(b.reducible(pp({1, 1})));
    EXPECT_FALSE(b.reducible(pp({0, 3})));
}

TEST(NormalForm, Examples) {
    auto b = example_basis();
    EXPECT_TRUE(is_normal_form(P("y^2 + y + 2", xy), b));
    EXPECT_FALSE(is_normal_form(P("x^3", xy), Basis(grlex, {P("x - 2", xy)})));
    EXPECT_TRUE(is_normal_form(Polynomial(2), b));
}

TEST(Strategy, Examples) {
    auto b = example_basis();
    EXPECT_EQ(max_lpp()(pp({3, 0}), b), 0u);
    EXPECT_EQ(first_divisor()(pp({3, 0}), b), 0u);
    for (const auto& s : default_strategies()) {
        EXPECT_EQ(s(pp({1, 1}), b), 1u);
        EXPECT_FALSE(s(pp({0, 2}), b).has_value());
    }
    Basis rev(grlex, {P("x - 2", xy), P("x^2 + x - y", xy)});
    EXPECT_EQ(first_divisor()(pp({3, 0}), rev), 0u);
    EXPECT_EQ(max_lpp()(pp({3, 0}), rev), 1u);
    EXPECT_EQ(strategy_by_name("first")->name(), "first");
    EXPECT_EQ(strategy_by_name("maxlpp")->name(), "maxlpp");
    EXPECT_FALSE(strategy_by_name("random").has_value());
}

TEST(ClassicReduce, GoldenChain) {
    auto r = classic_reduce(P("x^3 + x^2*y + 2*y", xy), example_basis(), max_lpp(), true);
    EXPECT_EQ(r.remainder, P("y^2 + y + 2", xy));
    EXPECT_EQ(r.steps, 4u);
    ASSERT_EQ(r.sequence.size(), 4u);
    const char* chain[] = {"x^2*y - x^2 + x*y + 2*y", "-x^2 + y^2 + 2*y", "y^2 + x + y", "y^2 + y + 2"};
    const std::size_t reducers[] = {0, 0, 0, 1};
    const PowerProduct pps[] = {pp({3, 0}), pp({2, 1}), pp({2, 0}), pp({1, 0})};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(r.sequence[i].result, P(chain[i], xy)) << "step " << i;
        EXPECT_EQ(r.sequence[i].reducer, reducers[i]);
        EXPECT_EQ(r.sequence[i].pp, pps[i]);
    }
}

TEST(ClassicReduce, FourTermGolden) {
    auto r = classic_reduce(P("4*x^3 + 2*x^2*y + 7*x*y + 2*y", xy), example_basis(), max_lpp(), true);
    EXPECT_EQ(r.remainder, P("2*y^2 + 16*y + 8", xy));
    EXPECT_EQ(r.steps, 5u);
    const char* chain[] = {"2*x^2*y - 4*x^2 + 11*x*y + 2*y", "-4*x^2 + 9*x*y + 2*y^2 + 2*y",
                           "9*x*y + 2*y^2 + 4*x - 2*y", "2*y^2 + 4*x + 16*y", "2*y^2 + 16*y + 8"};
    ASSERT_EQ(r.sequence.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(r.sequence[i].result, P(chain[i], xy)) << "step " << i;
}

TEST(ClassicReduce, AlreadyNormal) {
    auto g = P("y^3 - 1/2*y", xy);
    auto r = classic_reduce(g, example_basis(), first_divisor());
    EXPECT_EQ(r.remainder, g);
    EXPECT_EQ(r.steps, 0u);
}

TEST(ClassicReduce, RemainderIsNormalForm) {
    redmach::testing::Random rnd(32);
    for (int i = 0; i < 300; ++i) {
        auto inst = rnd.instance();
        for (auto kind : redmach::testing::admissible_kinds()) {
            Basis basis(Ordering(kind, inst.arity), inst.F);
            for (const auto& s : default_strategies())
                EXPECT_TRUE(is_normal_form(classic_reduce(inst.g, basis, s).remainder, basis));
        }
    }
}

TEST(Cofactors, Examples) {
    const Polynomial f1 = P("x^2 + x - y", xy), f2 = P("x - 2", xy);
    const Polynomial g = P("x^3 + x^2*y + 2*y", xy);
    auto c = reduce_with_cofactors(g, example_basis(), max_lpp());
    EXPECT_EQ(c.remainder, P("y^2 + y + 2", xy));
    EXPECT_EQ(c.quotients[0] * f1 + c.quotients[1] * f2 + c.remainder, g);
    EXPECT_EQ(c.steps, 4u);

    auto self = reduce_with_cofactors(f1, example_basis(), max_lpp());
    EXPECT_TRUE(self.remainder.is_zero());
    EXPECT_EQ(self.quotients[0], P("1", xy));
    EXPECT_TRUE(self.quotients[1].is_zero());

    auto irr = reduce_with_cofactors(P("y", xy), example_basis(), max_lpp());
    EXPECT_EQ(irr.remainder, P("y", xy));
    EXPECT_TRUE(irr.quotients[0].is_zero() && irr.quotients[1].is_zero());
}

TEST(Cofactors, IdentityProperty) {
    redmach::testing::Random rnd(33);
    for (int i = 0; i < 300; ++i) {
        auto inst = rnd.instance();
        Basis basis(Ordering(OrderKind::grevlex, inst.arity), inst.F);
        auto c = reduce_with_cofactors(inst.g, basis, max_lpp());
        Polynomial sum = c.remainder;
        for (std::size_t k = 0; k < inst.F.size(); ++k) sum += c.quotients[k] * inst.F[k];
        EXPECT_EQ(sum, inst.g);
        EXPECT_EQ(c.remainder, classic_reduce(inst.g, basis, max_lpp()).remainder);
    }
}

TEST(Branches, GoldenTree) {
    auto s = enumerate_branches(P("x^3 + x^2*y + 2*y", xy), example_basis(), max_lpp());
    ASSERT_EQ(s.normal_forms.size(), 1u);
    EXPECT_EQ(s.normal_forms.begin()->first, P("y^2 + y + 2", xy));
    EXPECT_EQ(s.min_length(), 4u);
    // the classic branch and one more reach the normal form in 4 steps
    EXPECT_GE(s.normal_forms.begin()->second.at(4), 2u);
    EXPECT_GT(s.branch_count(), 2u);
}

TEST(Branches, IrreducibleInput) {
    auto g = P("y^2", xy);
    auto s = enumerate_branches(g, example_basis(), first_divisor());
    ASSERT_EQ(s.normal_forms.size(), 1u);
    EXPECT_EQ(s.normal_forms.at(g), (BranchSummary::histogram{{0, 1}}));
    EXPECT_EQ(s.nodes_explored, 1u);
}

TEST(Branches, BudgetExceeded) {
    EXPECT_THROW(enumerate_branches(P("x^3 + x^2*y + 2*y", xy), example_basis(), max_lpp(), 3), budget_exceeded);
}

TEST(Branches, MatchesUnsharedTreeWalk) {
    redmach::testing::Random rnd(34);
    int compared = 0;
    for (int i = 0; i < 300; ++i) {
        auto inst = rnd.instance(3, 3);
        Basis basis(Ordering(OrderKind::grlex, inst.arity), inst.F);
        const auto& strategy = i % 2 ? max_lpp() : first_divisor();
        Histogram oracle;
        std::size_t nodes = 0;
        if (!walk(inst.g, basis, strategy, 0, oracle, nodes, 20000)) continue;
        auto s = enumerate_branches(inst.g, basis, strategy);
        EXPECT_EQ(s.normal_forms, oracle);
        ++compared;
    }
    EXPECT_GT(compared, 200);
}

TEST(Branches, SingleNormalFormProperty) {
    redmach::testing::Random rnd(35);
    for (int i = 0; i < 200; ++i) {
        auto inst = rnd.instance();
        for (auto kind : redmach::testing::admissible_kinds()) {
            Basis basis(Ordering(kind, inst.arity), inst.F);
            for (const auto& strategy : default_strategies()) {
                auto s = enumerate_branches(inst.g, basis, strategy);
                ASSERT_EQ(s.normal_forms.size(), 1u);
                EXPECT_EQ(s.normal_forms.begin()->first, classic_reduce(inst.g, basis, strategy).remainder);
            }
        }
    }
}

TEST(Confluence, StrategiesCanDisagreeOnNonGroebnerBases) {
    const Basis basis(grlex, {P("x - 1", xy), P("x*y - 1", xy)});
    const auto g = P("x*y", xy);
    EXPECT_EQ(classic_reduce(g, basis, first_divisor()).remainder, P("y", xy));
    EXPECT_EQ(classic_reduce(g, basis, max_lpp()).remainder, P("1", xy));

    // a random search turns up such instances as well
    redmach::testing::Random rnd(36);
    bool found = false;
    for (int i = 0; i < 2000 && !found; ++i) {
        auto inst = rnd.instance();
        Basis b(Ordering(OrderKind::grlex, inst.arity), inst.F);
        found = classic_reduce(inst.g, b, first_divisor()).remainder != classic_reduce(inst.g, b, max_lpp()).remainder;
    }
    EXPECT_TRUE(found);
}
