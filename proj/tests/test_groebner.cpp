#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

using namespace redmach;
using redmach::testing::P;

namespace {

const Ring xy({"x", "y"});
const Ordering grlex(OrderKind::grlex, 2);

std::vector<Polynomial> monic_all(const std::vector<Polynomial>& G, const Ordering& ord) {
    std::vector<Polynomial> out;
    for (const auto& g : G) out.push_back(make_monic(g, ord));
    return out;
}

const std::vector<ProblemSpec>& golden() {
    static const auto problems = parse_problem_collection(redmach::testing::read_data("golden_grlex.txt"));
    return problems;
}

const std::vector<Engine> all_engines{Engine::classic, Engine::machine, Engine::cached, Engine::parallel};

}  // namespace

TEST(Spol, Examples) {
    EXPECT_EQ(spol(P("x^2 + x - y", xy), P("x - 2", xy), grlex), P("3*x - y", xy));
    auto f = P("3*x^2*y - y + 1", xy);
    EXPECT_TRUE(spol(f, f, grlex).is_zero());
    EXPECT_TRUE(spol(P("x", xy), P("y", xy), grlex).is_zero());
    EXPECT_THROW(spol(Polynomial(2), P("x", xy), grlex), zero_polynomial_error);
}

TEST(Spol, LeadingTermsCancelProperty) {
    redmach::testing::Random rnd(51);
    for (auto kind : redmach::testing::admissible_kinds()) {
        const Ordering ord(kind, 3);
        for (int i = 0; i < 200; ++i) {
            auto f = rnd.nonzero_poly(3, 4, 3), g = rnd.nonzero_poly(3, 4, 3);
            auto l = lcm(leading_term(ord, f).pp, leading_term(ord, g).pp);
            auto s = spol(f, g, ord);
            EXPECT_TRUE(s.coefficient(l).is_zero());
            for (const auto& m : s.terms()) EXPECT_TRUE(ord.less(m.pp, l));
        }
    }
}

TEST(Buchberger, CoprimeGenerators) {
    auto r = buchberger({P("x", xy), P("y", xy)}, grlex);
    EXPECT_TRUE(same_basis(r.basis, {P("x", xy), P("y", xy)}));
    EXPECT_EQ(r.stats.skipped_product, 1u);
    EXPECT_TRUE(is_groebner(r.basis, grlex));
}

TEST(Buchberger, RejectsBadInput) {
    EXPECT_THROW(buchberger({}, grlex), error);
    EXPECT_THROW(buchberger({P("x", xy), Polynomial(2)}, grlex), zero_polynomial_error);
    EXPECT_THROW(buchberger({P("x", xy)}, Ordering(OrderKind::revlex, 2)), ordering_error);
}

TEST(Buchberger, ProblemThree) {
    const auto& p = corpus()[2];
    const Ordering ord(OrderKind::grlex, p.ring.arity());
    auto r = buchberger(p.generators, ord);
    EXPECT_TRUE(r.reduced);
    EXPECT_TRUE(is_groebner(r.basis, ord));
    for (const auto& f : p.generators) EXPECT_TRUE(ideal_member_gb(f, r.basis, ord));
}

TEST(Buchberger, MatchesGoldenBases) {
    ASSERT_EQ(golden().size(), 20u);
    for (std::size_t k = 0; k < 20; ++k) {
        const auto& p = corpus()[k];
        const auto& want = golden()[k];
        ASSERT_EQ(want.id, p.id);
        ASSERT_EQ(want.ring, p.ring);
        const Ordering ord(OrderKind::grlex, p.ring.arity());
        auto got = reduced_groebner_basis(p.generators, ord);
        EXPECT_TRUE(same_basis(got, monic_all(want.generators, ord))) << "problem " << p.id;
    }
}

TEST(Buchberger, CyclicThreeAcrossModesAndEngines) {
    const auto& p = corpus()[18];
    ASSERT_EQ(p.source, "cyclic-3");
    const Ordering ord(OrderKind::grlex, 3);
    std::vector<Polynomial> reference;
    for (auto mode : {GroebnerMode::classic, GroebnerMode::improved}) {
        for (auto engine : all_engines) {
            for (const auto& strategy : default_strategies()) {
                BuchbergerOptions opts;
                opts.mode = mode;
                opts.reducer = Reducer(engine, strategy, 2);
                auto r = buchberger(p.generators, ord, opts);
                EXPECT_EQ(r.engine, engine);
                EXPECT_EQ(r.reduced, mode == GroebnerMode::improved);
                EXPECT_TRUE(is_groebner(r.basis, ord));
                auto reduced = reduced_groebner_basis(p.generators, ord, opts);
                if (reference.empty()) reference = reduced;
                EXPECT_TRUE(same_basis(reduced, reference)) << to_string(mode) << " " << to_string(engine);
            }
        }
    }
}

TEST(Buchberger, ImprovedSkipsPairs) {
    const auto& p = corpus()[19];
    const Ordering ord(OrderKind::grlex, p.ring.arity());
    BuchbergerOptions classic;
    classic.mode = GroebnerMode::classic;
    auto c = buchberger(p.generators, ord, classic);
    auto i = buchberger(p.generators, ord);
    EXPECT_EQ(c.stats.skipped_chain + c.stats.skipped_product, 0u);
    EXPECT_GT(i.stats.skipped_chain + i.stats.skipped_product, 0u);
    EXPECT_LT(i.stats.pairs_processed, c.stats.pairs_processed);
}

TEST(InterReduce, Examples) {
    const Reducer reducer;
    auto a = inter_reduce({P("x", xy), P("2*x", xy)}, grlex, reducer);
    EXPECT_EQ(a, (std::vector<Polynomial>{P("x", xy)}));

    auto b = inter_reduce({P("x - 2", xy), P("x^2 + x - y", xy)}, grlex, reducer);
    EXPECT_TRUE(same_basis(b, {P("x - 2", xy), P("y - 6", xy)}));

    EXPECT_TRUE(same_basis(inter_reduce(b, grlex, reducer), b));
}

TEST(InterReduce, TracksCofactors) {
    const std::vector<Polynomial> F{P("x - 2", xy), P("x^2 + x - y", xy)};
    CofactorMatrix rows{{P("1", xy), Polynomial(2)}, {Polynomial(2), P("1", xy)}};
    auto b = inter_reduce(F, grlex, Reducer{}, &rows);
    EXPECT_TRUE(verify_cofactors(F, b, rows));
}

TEST(IsGroebner, Examples) {
    EXPECT_FALSE(is_groebner({P("x^2 + x - y", xy), P("x - 2", xy)}, grlex));
    EXPECT_TRUE(is_groebner({P("x^3 - y + 1", xy)}, grlex));
}

TEST(Membership, Examples) {
    const std::vector<Polynomial> F{P("x^2 + x - y", xy), P("x - 2", xy)};
    EXPECT_TRUE(ideal_member(F[0], F, grlex));
    EXPECT_FALSE(ideal_member(P("1", xy), {P("x", xy), P("y", xy)}, grlex));
    EXPECT_TRUE(ideal_member(P("x^2*y - 4*y", xy), {P("x - 2", xy)}, grlex));
    EXPECT_TRUE(ideal_member(Polynomial(2), F, grlex));

    const auto g = P("x^3*y + 5", xy);
    EXPECT_TRUE(congruent(g, g, F, grlex));
    EXPECT_TRUE(congruent(P("x", xy), P("2", xy), {P("x - 2", xy)}, grlex));
    EXPECT_FALSE(congruent(P("x", xy), P("y", xy), {P("x - 2", xy)}, grlex));
}

TEST(Buchberger, CofactorsReconstructBasis) {
    for (const auto& p : corpus()) {
        const Ordering ord(OrderKind::grlex, p.ring.arity());
        for (auto mode : {GroebnerMode::classic, GroebnerMode::improved}) {
            BuchbergerOptions opts;
            opts.mode = mode;
            opts.track_cofactors = true;
            opts.reducer = Reducer(Engine::cached);
            auto r = buchberger(p.generators, ord, opts);
            ASSERT_TRUE(r.cofactors.has_value());
            EXPECT_TRUE(verify_cofactors(p.generators, r.basis, *r.cofactors)) << "problem " << p.id;
        }
    }
}

TEST(Buchberger, PermutationInvarianceProperty) {
    redmach::testing::Random rnd(52);
    for (const auto& p : corpus()) {
        const Ordering ord(OrderKind::grlex, p.ring.arity());
        const auto reference = reduced_groebner_basis(p.generators, ord);
        auto shuffled = p.generators;
        for (int k = 0; k < 3; ++k) {
            std::shuffle(shuffled.begin(), shuffled.end(), rnd.engine());
            BuchbergerOptions opts;
            opts.reducer = Reducer(rnd.uniform(0, 1) ? Engine::machine : Engine::classic);
            EXPECT_TRUE(same_basis(reduced_groebner_basis(shuffled, ord, opts), reference)) << "problem " << p.id;
        }
    }
}

TEST(Buchberger, RandomIdealsProperty) {
    redmach::testing::Random rnd(53);
    for (int i = 0; i < 100; ++i) {
        auto inst = rnd.instance(4, 3);
        for (auto kind : redmach::testing::admissible_kinds()) {
            const Ordering ord(kind, inst.arity);
            BuchbergerOptions opts;
            opts.track_cofactors = true;
            auto r = buchberger(inst.F, ord, opts);
            EXPECT_TRUE(is_groebner(r.basis, ord));
            EXPECT_TRUE(verify_cofactors(inst.F, r.basis, *r.cofactors));
            for (const auto& f : inst.F) EXPECT_TRUE(ideal_member_gb(f, r.basis, ord));

            // reduction modulo a Groebner basis is confluent across strategies
            Basis gb(ord, r.basis);
            auto reversed = r.basis;
            std::reverse(reversed.begin(), reversed.end());
            Basis gb_rev(ord, reversed);
            const auto nf = classic_reduce(inst.g, gb, first_divisor()).remainder;
            EXPECT_EQ(classic_reduce(inst.g, gb, max_lpp()).remainder, nf);
            EXPECT_EQ(classic_reduce(inst.g, gb_rev, first_divisor()).remainder, nf);
        }
    }
}

TEST(Engines, ParseAndLabels) {
    for (auto e : all_engines) {
        EXPECT_EQ(parse_engine(to_string(e)), e);
        EXPECT_EQ(parse_engine(label(e)), e);
    }
    EXPECT_EQ(label(Engine::cached), "RMc");
    EXPECT_FALSE(parse_engine("gpu").has_value());
    EXPECT_EQ(parse_mode("CLASSIC"), GroebnerMode::classic);
    EXPECT_FALSE(parse_mode("fast").has_value());
    EXPECT_THROW(Reducer(Engine::parallel, max_lpp(), 0), error);
}
