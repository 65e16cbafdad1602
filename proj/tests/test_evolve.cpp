#include <gtest/gtest.h>

#include <array>

#include "fixtures.hpp"
#include "mogp/evolve.hpp"
#include "mogp/harness/init.hpp"

using namespace mogp;

TEST(Selection, DominanceExamples)
{
    const MoFitness a{5, 3}, b{5, 5}, c{6, 5}, d{4, 1};
    EXPECT_TRUE(weakly_dominates(a, a));
    EXPECT_FALSE(dominates(a, a));
    EXPECT_TRUE(dominates(a, b));
    EXPECT_TRUE(dominates(c, b));
    EXPECT_TRUE(incomparable(a, c));
    EXPECT_TRUE(incomparable(a, d));
    EXPECT_FALSE(incomparable(a, b));
}

TEST(Selection, FavorsRules)
{
    const MoFitness x{5, 7};
    EXPECT_TRUE(favors(SelectionRule::f_only, {5, 99}, x));
    EXPECT_FALSE(favors(SelectionRule::f_only, {4, 1}, x));
    EXPECT_TRUE(favors(SelectionRule::mo_parsimony, {5, 7}, x));
    EXPECT_TRUE(favors(SelectionRule::mo_parsimony, {5, 5}, x));
    EXPECT_FALSE(favors(SelectionRule::mo_parsimony, {5, 9}, x));
    EXPECT_TRUE(favors(SelectionRule::mo_parsimony, {6, 99}, x));
    EXPECT_FALSE(favors(SelectionRule::mo_parsimony, {4, 1}, x));
}

TEST(Selection, StrictDominanceIsAStrictPartialOrder)
{
    std::vector<MoFitness> pts;
    for (double f : {0.0, 1.0, 2.5, 3.0}) {
        for (std::size_t c : {0u, 1u, 3u, 5u}) pts.push_back({f, c});
    }
    for (auto const& a : pts) {
        EXPECT_FALSE(dominates(a, a));
        for (auto const& b : pts) {
            if (dominates(a, b)) {
                EXPECT_FALSE(dominates(b, a));
            }
            EXPECT_EQ(weakly_dominates(a, b) && weakly_dominates(b, a), a == b);
            for (auto const& c : pts) {
                if (dominates(a, b) && dominates(b, c)) {
                    EXPECT_TRUE(dominates(a, c));
                }
            }
        }
    }
}

TEST(Population, OfferOutcomes)
{
    auto ind = [](double f, std::size_t c) { return Individual{SyntaxTree{}, {f, c}}; };
    Population pop(ind(1, 1));
    EXPECT_EQ(pop.offer(ind(0, 3)), OfferOutcome::rejected);
    EXPECT_EQ(pop.offer(ind(1, 1)), OfferOutcome::replaced_equal);
    EXPECT_EQ(pop.size(), 1u);
    EXPECT_EQ(pop.offer(ind(0, 0)), OfferOutcome::inserted);
    EXPECT_EQ(pop.offer(ind(2, 3)), OfferOutcome::inserted);
    EXPECT_EQ(pop.size(), 3u);
    // (2,1) dominates (1,1) and (2,3)
    EXPECT_EQ(pop.offer(ind(2, 1)), OfferOutcome::inserted);
    EXPECT_EQ(pop.size(), 2u);
    EXPECT_TRUE(pop.is_mutually_non_dominated());
    EXPECT_EQ(pop[pop.size() - 1].fitness, (MoFitness{2, 1}));
}

TEST(Population, RandomOffersKeepArchiveInvariant)
{
    RandomSource rng(11);
    Population pop(Individual{SyntaxTree{}, {0, 0}});
    for (int i = 0; i < 5000; ++i) {
        pop.offer(Individual{SyntaxTree{}, {static_cast<double>(rng.below(10)), rng.below(20)}});
        ASSERT_TRUE(pop.is_mutually_non_dominated());
        const auto v = pop.vectors();
        for (std::size_t a = 0; a < v.size(); ++a) {
            for (std::size_t b = a + 1; b < v.size(); ++b) ASSERT_NE(v[a], v[b]);
        }
    }
}

TEST(Steps, OnePlusOneStepMatchesManualReplay)
{
    const auto w = test::example_weights();
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Evaluator eval(ProblemKind::worder, w);
        RandomSource rng(seed);
        RandomSource replay = rng;
        Individual current{test::example_tree(), eval.mo_evaluate(test::example_tree())};
        Individual scratch;
        const auto before = current;
        const bool accepted =
            one_plus_one_step(current, scratch, SelectionRule::mo_parsimony, MutationMode::multi, eval, rng);

        auto child = mutate(before.tree, MutationMode::multi, 6, replay).tree;
        const auto fc = eval.mo_evaluate(child);
        const bool expect = favors(SelectionRule::mo_parsimony, fc, before.fitness);
        ASSERT_EQ(accepted, expect);
        ASSERT_EQ(current.tree, expect ? child : before.tree);
        ASSERT_EQ(current.fitness, expect ? fc : before.fitness);
        ASSERT_EQ(rng.next(), replay.next());
    }
}

TEST(Steps, SmoGpStepMatchesManualReplay)
{
    const auto w = WeightVector::unit(4);
    Evaluator eval(ProblemKind::order, w);
    RandomSource rng(5);
    Population pop(Individual{SyntaxTree{}, {0, 0}});
    for (int i = 0; i < 2000; ++i) {
        RandomSource replay = rng;
        Population expected = pop;
        const auto parent = replay.below(expected.size());
        auto child = mutate(expected[parent].tree, MutationMode::single, 4, replay).tree;
        const auto outcome_expected = expected.offer(Individual{child, eval.mo_evaluate(child)});
        ASSERT_EQ(smo_gp_step(pop, MutationMode::single, eval, rng), outcome_expected);
        ASSERT_EQ(pop.vectors(), expected.vectors());
        ASSERT_EQ(rng.next(), replay.next());
    }
}

TEST(Run, AlreadyOptimalInitNeedsOneEvaluation)
{
    const auto w = WeightVector::unit(3);
    RandomSource rng(1);
    const auto init = SyntaxTree::parse("(J x1 (J x2 x3))");
    const auto r = run_algorithm(Algorithm::gp_single, SelectionRule::mo_parsimony, ProblemKind::order, w, init, {}, rng);
    EXPECT_TRUE(r.success);
    EXPECT_EQ(r.evaluations, 1u);
    EXPECT_EQ(r.max_tree_size, 5u);
}

TEST(Run, BudgetOfOneFailsAndZeroIsRejected)
{
    const auto w = WeightVector::unit(3);
    RandomSource rng(1);
    RunOptions opt;
    opt.budget = 1;
    for (auto algo : {Algorithm::gp_single, Algorithm::smogp_multi}) {
        const auto r = run_algorithm(algo, SelectionRule::mo_parsimony, ProblemKind::order, w, {}, opt, rng);
        EXPECT_FALSE(r.success);
        EXPECT_EQ(r.evaluations, 1u);
    }
    opt.budget = 0;
    EXPECT_THROW(run_algorithm(Algorithm::gp_single, SelectionRule::mo_parsimony, ProblemKind::order, w, {}, opt, rng),
                 ConfigError);
}

TEST(Run, DeterministicAndTraceAccounting)
{
    const auto w = WeightVector::harmonic(12);
    for (auto algo : {Algorithm::gp_single, Algorithm::gp_multi, Algorithm::smogp_single, Algorithm::smogp_multi}) {
        RunOptions opt;
        opt.trace = true;
        RandomSource a(99), b(99);
        const auto ra = run_algorithm(algo, SelectionRule::mo_parsimony, ProblemKind::wmajority, w, {}, opt, a);
        const auto rb = run_algorithm(algo, SelectionRule::mo_parsimony, ProblemKind::wmajority, w, {}, opt, b);
        ASSERT_TRUE(ra.success) << to_string(algo);
        EXPECT_EQ(ra.evaluations, rb.evaluations);
        ASSERT_EQ(ra.trace.size(), rb.trace.size());
        ASSERT_FALSE(ra.trace.empty());
        EXPECT_EQ(ra.trace.front().iteration, 0u);
        // the run stops right after the accepted step that reaches the target
        EXPECT_EQ(ra.trace.back().iteration, ra.evaluations - 1);
        for (std::size_t i = 1; i < ra.trace.size(); ++i) {
            EXPECT_LT(ra.trace[i - 1].iteration, ra.trace[i].iteration);
        }
        std::size_t largest = 0;
        for (auto const& t : ra.trace) largest = std::max(largest, t.complexity);
        EXPECT_EQ(largest, ra.max_tree_size);
    }
}

TEST(Run, FailedRunSpendsTheWholeBudget)
{
    const auto w = WeightVector::unit(30);
    RandomSource rng(3);
    RunOptions opt;
    opt.budget = 50;
    const auto r = run_algorithm(Algorithm::smogp_single, SelectionRule::mo_parsimony, ProblemKind::order, w, {}, opt, rng);
    EXPECT_FALSE(r.success);
    EXPECT_EQ(r.evaluations, 50u);
}

TEST(Run, SMinusKNeverIncreasesUnderParsimony)
{
    for (auto kind : {ProblemKind::order, ProblemKind::majority, ProblemKind::worder, ProblemKind::wmajority}) {
        const auto w = WeightVector::harmonic(15);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            RandomSource rng(seed);
            auto init = make_init({InitKind::redundant_blowup, 60}, 15, rng);
            RunOptions opt;
            opt.trace = true;
            const auto r = run_algorithm(Algorithm::gp_single, SelectionRule::mo_parsimony, kind, w, init, opt, rng);
            ASSERT_TRUE(r.success);
            for (std::size_t i = 1; i < r.trace.size(); ++i) {
                ASSERT_LE(r.trace[i].s_minus_k(), r.trace[i - 1].s_minus_k()) << to_string(kind) << " seed " << seed;
            }
        }
    }
}

TEST(Run, AcceptedSequenceFollowsTheRule)
{
    const auto w = WeightVector::pow2(10);
    for (auto rule : {SelectionRule::f_only, SelectionRule::mo_parsimony}) {
        RandomSource rng(21);
        RunOptions opt;
        opt.trace = true;
        const auto r = run_algorithm(Algorithm::gp_multi, rule, ProblemKind::worder, w, {}, opt, rng);
        ASSERT_TRUE(r.success);
        for (std::size_t i = 1; i < r.trace.size(); ++i) {
            const MoFitness prev{r.trace[i - 1].f_value, r.trace[i - 1].complexity};
            const MoFitness cur{r.trace[i].f_value, r.trace[i].complexity};
            ASSERT_TRUE(favors(rule, cur, prev));
        }
    }
}

TEST(Run, NonRedundantStartStaysSmall)
{
    const std::size_t n = 12;
    const auto w = WeightVector::unit(n);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RandomSource rng(seed);
        auto init = make_init({InitKind::non_redundant, 5}, n, rng);
        const auto t_init = init.complexity();
        const auto r = run_algorithm(Algorithm::gp_single, SelectionRule::mo_parsimony, ProblemKind::order, w, init, {}, rng);
        ASSERT_TRUE(r.success);
        EXPECT_LE(r.max_tree_size, std::max(t_init, 2 * n - 1));
    }
}

TEST(Run, StrictTargetEndsNonRedundant)
{
    const auto w = WeightVector::unit(8);
    Evaluator eval(ProblemKind::majority, w);
    RandomSource rng(4);
    auto init = make_init({InitKind::redundant_blowup, 40}, 8, rng);
    RunOptions opt;
    opt.strict_target = true;
    opt.trace = true;
    const auto r = run_algorithm(Algorithm::gp_single, SelectionRule::mo_parsimony, eval, init, opt, rng);
    ASSERT_TRUE(r.success);
    EXPECT_EQ(r.trace.back().complexity, 15u);
}

TEST(Run, AuditedSmoGpRunsAreClean)
{
    for (auto kind : {ProblemKind::order, ProblemKind::majority, ProblemKind::worder, ProblemKind::wmajority}) {
        const std::size_t n = 8;
        const auto w = WeightVector::pow2(n);
        RandomSource rng(7);
        RunOptions opt;
        opt.audit = true;
        opt.population_limit = n + 1;
        opt.audit_non_redundant = is_weighted(kind);
        const auto r = run_algorithm(Algorithm::smogp_single, SelectionRule::mo_parsimony, kind, w, {}, opt, rng);
        EXPECT_TRUE(r.success);
        EXPECT_TRUE(r.audit.clean()) << to_string(kind);
        EXPECT_EQ(r.final_population_size, n + 1);
    }
}
