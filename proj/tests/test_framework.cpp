#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mmcost;

namespace {

LabeledDataset separable() { return {{1, 2, 3, 4}, 1, {0, 0, 1, 1}}; }
LabeledDataset constant_features() { return {{5, 5, 5, 5}, 1, {0, 1, 1, 1}}; }

LabeledDataset noisy(std::uint64_t seed, std::size_t n = 60) {
    auto rng = make_stream(seed, "framework-data");
    return oracle::random_dataset(rng, n, 3, 12);
}

} // namespace

TEST(MatrixDominance, Examples) {
    EXPECT_TRUE(matrix_dominates({1, 1}, {2, 2}));
    EXPECT_FALSE(matrix_dominates({1, 3}, {2, 2}));
    EXPECT_FALSE(matrix_dominates({2, 2}, {2, 2}));
    EXPECT_TRUE(matrix_dominates({2, 1}, {2, 2}));
}

TEST(FilterDominated, Examples) {
    EXPECT_EQ(filter_dominated({{1, 1}, {2, 2}, {1, 3}}).matrices(), (std::vector<CostMatrix>{{2, 2}, {1, 3}}));
    EXPECT_EQ(filter_dominated({{1, 3}, {3, 1}}).size(), 2u);
    EXPECT_EQ(filter_dominated({{2, 2}, {2, 2}}).matrices(), (std::vector<CostMatrix>{{2, 2}}));
    EXPECT_EQ(nondominated_indices({{1, 1}, {2, 2}, {1, 3}}), (std::vector<std::size_t>{1, 2}));
}

TEST(FilterDominated, ResultIsAnAntichainCoveringTheInput) {
    auto rng = make_stream(1, "filter-prop");
    for (int t = 0; t < 500; ++t) {
        std::vector<CostMatrix> m;
        for (std::size_t i = 0, k = 1 + uniform_index(rng, 10); i < k; ++i)
            m.emplace_back(1 + uniform_index(rng, 4), 1 + uniform_index(rng, 4));
        const CostMatrixSet u(m);
        const auto f = filter_dominated(u);
        EXPECT_TRUE(pairwise_nondominated(f));
        for (const auto& c : m)
            EXPECT_TRUE(std::any_of(f.begin(), f.end(), [&](const auto& g) { return g == c || matrix_dominates(c, g); }));
    }
}

TEST(DiscretizeInterval, Examples) {
    const auto grid = discretize_interval(1, 1, 3, 3);
    EXPECT_EQ(grid.matrices(), (std::vector<CostMatrix>{{1, 1}, {1, 2}, {1, 3}}));
    EXPECT_EQ(filter_dominated(grid).matrices(), (std::vector<CostMatrix>{{1, 3}}));
    EXPECT_EQ(discretize_interval(2, 0.1, 0.7, 7).matrices().back(), CostMatrix(2, 0.7));
    EXPECT_THROW(discretize_interval(1, 1, 3, 1), std::invalid_argument);
    EXPECT_THROW(discretize_interval(1, 3, 1, 3), std::invalid_argument);
}

TEST(SampleCostSet, SizesAndNondominance) {
    EXPECT_EQ(sample_cost_set(1, 0, 10, std::uint64_t{3}).size(), 1u);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto u = sample_cost_set(2, 0, 10, seed);
        ASSERT_EQ(u.size(), 2u);
        EXPECT_FALSE(matrix_dominates(u[0], u[1]));
        EXPECT_FALSE(matrix_dominates(u[1], u[0]));
        const auto u5 = sample_cost_set(5, 0, 10, seed);
        EXPECT_TRUE(pairwise_nondominated(u5));
        for (const auto& c : u5) {
            EXPECT_GE(c.c0, 0.0);
            EXPECT_LT(c.c0, 10.0);
            EXPECT_GE(c.c1, 0.0);
            EXPECT_LT(c.c1, 10.0);
        }
    }
}

TEST(SampleCostSet, DeterministicPerSeed) {
    EXPECT_EQ(sample_cost_set(4, 0, 10, std::uint64_t{9}).matrices(), sample_cost_set(4, 0, 10, std::uint64_t{9}).matrices());
    EXPECT_NE(sample_cost_set(4, 0, 10, std::uint64_t{9}).matrices(), sample_cost_set(4, 0, 10, std::uint64_t{10}).matrices());
}

TEST(SampleCostSet, Errors) {
    EXPECT_THROW(sample_cost_set(0, 0, 10, std::uint64_t{1}), std::invalid_argument);
    EXPECT_THROW(sample_cost_set(3, 5, 5, std::uint64_t{1}), std::invalid_argument);
    // acceptance rate 1/12! makes a 50-draw budget hopeless
    EXPECT_THROW(sample_cost_set(12, 0, 10, std::uint64_t{1}, 50), std::runtime_error);
}

TEST(SampleAntichain, AlwaysAnAntichain) {
    auto rng = make_stream(2, "antichain");
    for (int t = 0; t < 300; ++t) {
        const auto k = 1 + uniform_index(rng, 20);
        const auto u = sample_antichain(k, 0, 10, rng);
        EXPECT_EQ(u.size(), k);
        EXPECT_TRUE(pairwise_nondominated(u));
    }
}

TEST(ParseFramework, CaseInsensitive) {
    EXPECT_EQ(parse_framework("sp"), Framework::SP);
    EXPECT_EQ(parse_framework("M"), Framework::M);
    EXPECT_EQ(to_string(Framework::S), "S");
    EXPECT_THROW(parse_framework("x"), std::invalid_argument);
}

TEST(SolveSingle, Examples) {
    EXPECT_EQ(solve_single(separable(), {3, 2}).train_max_cost, 0.0);
    const auto c = solve_single(constant_features(), {1, 1});
    EXPECT_EQ(c.train_max_cost, 1.0);
    EXPECT_EQ(c.model.stumps()[0], DecisionStump::constant(+1));
    EXPECT_EQ(solve_single(noisy(1), {1, 2}, {1, 1e-9}).model.size(), 1u);
}

TEST(SolvePair, Examples) {
    const auto d = noisy(2);
    const CostMatrix c{2, 3};
    const auto pair = solve_pair(d, c, c);
    const auto single = solve_single(d, c);
    EXPECT_EQ(pair.model, single.model);
    EXPECT_EQ(pair.train_max_cost, single.train_max_cost);
    EXPECT_EQ(solve_pair(separable(), {1, 3}, {3, 1}).train_max_cost, 0.0);
}

TEST(SolvePair, OrderOfThePairDoesNotMatter) {
    // balanced labels, swapped-symmetric pair
    auto rng = make_stream(3, "pair-symmetry");
    for (int t = 0; t < 20; ++t) {
        auto d = oracle::random_dataset(rng, 40, 2, 10);
        const CostMatrix a{uniform(rng, 0.5, 5), uniform(rng, 0.5, 5)};
        const CostMatrix b{a.c1, a.c0};
        const auto ab = solve_pair(d, a, b);
        const auto ba = solve_pair(d, b, a);
        EXPECT_EQ(ab.model, ba.model);
        EXPECT_EQ(ab.train_max_cost, ba.train_max_cost);
    }
}

TEST(SolveS, SingletonAndCandidateCount) {
    const auto d = noisy(4);
    const CostMatrixSet one{{1, 2}};
    const auto s = solve_S(d, one);
    EXPECT_EQ(s.model, solve_single(d, {1, 2}).model);
    EXPECT_EQ(s_candidates(d, {{1, 2}, {2, 1}, {1, 1}}).size(), 3u); // S keeps dominated matrices
}

TEST(SolveS, SelectsMinimumTrainingMaxCost) {
    const auto d = noisy(5);
    const CostMatrixSet u{{1, 5}, {3, 3}, {6, 1}};
    const auto cands = s_candidates(d, u);
    const auto chosen = solve_S(d, u);
    for (const auto& c : cands) {
        EXPECT_EQ(c.train_max_cost, max_total_cost(class_stats(d), c.train_point, u).value);
        EXPECT_LE(chosen.train_max_cost, c.train_max_cost);
    }
}

TEST(SolveSP, DominatedPairReducesToSingle) {
    const auto d = noisy(6);
    const auto sp = solve_SP(d, {{1, 1}, {5, 5}});
    EXPECT_EQ(sp.provenance.kind, Provenance::Kind::single);
    EXPECT_EQ(sp.provenance.i, 1u);
    EXPECT_EQ(sp.model, solve_single(d, {5, 5}).model);
}

TEST(SolveSP, CandidatePool) {
    const auto d = noisy(7);
    const CostMatrixSet u{{1, 5}, {3, 3}, {6, 1}};
    const auto cands = sp_candidates(d, u);
    ASSERT_EQ(cands.size(), 6u);
    EXPECT_EQ(cands[3].provenance, (Provenance{Provenance::Kind::pair, 0, 1}));
    EXPECT_EQ(cands[5].provenance, (Provenance{Provenance::Kind::pair, 1, 2}));
    const auto two = sp_candidates(d, {{1, 5}, {6, 1}});
    ASSERT_EQ(two.size(), 1u);
    EXPECT_EQ(two[0].provenance.str(), "pair(0,1)");
}

TEST(SolveSP, NeverWorseThanSOnTraining) {
    auto rng = make_stream(8, "sp-vs-s");
    for (int t = 0; t < 25; ++t) {
        const auto d = oracle::random_dataset(rng, 50, 3, 10);
        const auto u = sample_antichain(3 + uniform_index(rng, 3), 0, 10, rng);
        EXPECT_LE(solve_SP(d, u).train_max_cost, solve_S(d, u).train_max_cost + 1e-9);
    }
}

TEST(SolveM, Examples) {
    const auto d = noisy(9);
    EXPECT_EQ(solve_M(d, {{2, 3}}).model, solve_single(d, {2, 3}).model);
    EXPECT_EQ(solve_M(separable(), {{1, 3}, {3, 1}, {2, 2}}).train_max_cost, 0.0);
    const CostMatrixSet u{{1, 5}, {3, 3}, {6, 1}};
    EXPECT_EQ(solve_M(d, u).model, solve_M(d, u).model);
    EXPECT_EQ(solve_M(d, u).provenance.str(), "direct");
}

TEST(Frameworks, AddingADominatedMatrixChangesNothingForSPAndM) {
    auto rng = make_stream(10, "neutrality");
    for (int t = 0; t < 10; ++t) {
        const auto d = oracle::random_dataset(rng, 40, 2, 10);
        const auto u = sample_antichain(3, 1, 10, rng);
        std::vector<CostMatrix> more = u.matrices();
        more.emplace_back(u[0].c0 * 0.5, u[0].c1 * 0.5);
        const CostMatrixSet padded(more);
        EXPECT_EQ(solve_M(d, u).model, solve_M(d, padded).model);
        EXPECT_EQ(solve_SP(d, u).model, solve_SP(d, padded).model);
        EXPECT_EQ(solve_SP(d, u).train_max_cost, solve_SP(d, padded).train_max_cost);
    }
}

TEST(Frameworks, DispatchMatchesDirectCalls) {
    const auto d = noisy(11);
    const CostMatrixSet u{{1, 5}, {3, 3}, {6, 1}};
    EXPECT_EQ(solve(Framework::S, d, u).model, solve_S(d, u).model);
    EXPECT_EQ(solve(Framework::SP, d, u).model, solve_SP(d, u).model);
    EXPECT_EQ(solve(Framework::M, d, u).model, solve_M(d, u).model);
}
