#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mmcost;

namespace {

const Front kThree = convex_front({{0, 1}, {0.5, 0.25}, {1, 0}});
const ClassStats kTen = ClassStats::from_counts(10, 10);

std::vector<std::size_t> idx(std::initializer_list<std::size_t> v) { return v; }

} // namespace

TEST(PointDominates, Examples) {
    EXPECT_TRUE(point_dominates({0.1, 0.2}, {0.3, 0.4}));
    EXPECT_FALSE(point_dominates({0.1, 0.5}, {0.3, 0.2}));
    EXPECT_FALSE(point_dominates({0.3, 0.2}, {0.1, 0.5}));
    EXPECT_FALSE(point_dominates({0.2, 0.2}, {0.2, 0.2}));
    EXPECT_TRUE(point_dominates({0.2, 0.2}, {0.2, 0.3}));
}

TEST(ParetoFilter, Examples) {
    const auto out = pareto_filter({{0.1, 0.5}, {0.2, 0.3}, {0.4, 0.4}, {0.3, 0.2}});
    const std::vector<OperatingPoint> expected{{0.1, 0.5}, {0.2, 0.3}, {0.3, 0.2}};
    EXPECT_EQ(out, expected);
    EXPECT_EQ(pareto_filter({{0.4, 0.6}}), (std::vector<OperatingPoint>{{0.4, 0.6}}));
    EXPECT_EQ(pareto_filter({{0.4, 0.6}, {0.4, 0.6}}), (std::vector<OperatingPoint>{{0.4, 0.6}}));
    EXPECT_THROW(pareto_filter({}), std::invalid_argument);
}

TEST(ParetoFilter, KeptAreMutuallyNondominatedAndRemovedAreDominated) {
    auto rng = make_stream(3, "pareto");
    for (int t = 0; t < 500; ++t) {
        std::vector<OperatingPoint> pts;
        for (std::size_t i = 0, n = 1 + uniform_index(rng, 40); i < n; ++i)
            pts.emplace_back(uniform_index(rng, 9) / 8.0, uniform_index(rng, 9) / 8.0); // coarse grid: ties and duplicates
        const auto kept = pareto_filter(pts);
        for (const auto& a : kept)
            for (const auto& b : kept) EXPECT_FALSE(point_dominates(a, b));
        for (const auto& p : pts) {
            const bool is_kept = std::find(kept.begin(), kept.end(), p) != kept.end();
            if (is_kept) continue;
            EXPECT_TRUE(std::any_of(kept.begin(), kept.end(), [&](const auto& k) { return point_dominates(k, p); }));
        }
    }
}

TEST(ConvexFront, Examples) {
    EXPECT_EQ(kThree.size(), 3u);
    const auto chord = convex_front({{0, 1}, {0.5, 0.6}, {1, 0}});
    EXPECT_EQ(chord.points(), (std::vector<OperatingPoint>{{0, 1}, {1, 0}}));
    EXPECT_EQ(convex_front({{0.3, 0.3}}).size(), 1u);
    EXPECT_THROW(convex_front({}), std::invalid_argument);
}

TEST(ConvexFront, RejectsInvalidFronts) {
    EXPECT_THROW(Front({{0, 1}, {0.5, 0.6}, {1, 0}}), std::invalid_argument);   // concave
    EXPECT_THROW(Front({{0.5, 0.5}, {0.4, 0.4}}), std::invalid_argument);       // unsorted
    EXPECT_THROW(Front({{0.5, 0.5}, {0.5, 0.4}}), std::invalid_argument);       // equal p10
}

TEST(ConvexFront, HullPropertiesAndPermutationInvariance) {
    auto rng = make_stream(5, "hull");
    for (int t = 0; t < 300; ++t) {
        std::vector<OperatingPoint> pts{{0, 1}, {1, 0}};
        for (std::size_t i = 0, n = uniform_index(rng, 60); i < n; ++i) pts.emplace_back(uniform01(rng), uniform01(rng));
        const auto front = convex_front(pts);
        EXPECT_TRUE(front.adjacent_slopes_non_increasing(1e-9));

        // every input point lies on or above/right of the hull polyline
        for (const auto& p : pts) {
            for (std::size_t i = 0; i + 1 < front.size(); ++i) {
                const auto& a = front[i];
                const auto& b = front[i + 1];
                if (p.p10 < a.p10 || p.p10 > b.p10) continue;
                const double y = a.p01 + (b.p01 - a.p01) * (p.p10 - a.p10) / (b.p10 - a.p10);
                EXPECT_GE(p.p01, y - 1e-12);
            }
        }

        auto shuffled = pts;
        shuffle(shuffled, rng);
        EXPECT_EQ(convex_front(shuffled).points(), front.points());
    }
}

TEST(SlopeCompare, Examples) {
    const OperatingPoint h1{0.1, 0.4}, h2{0.3, 0.2};
    // costs 5 vs 5, 13 vs 9, 7 vs 11
    EXPECT_EQ(slope_compare(h1, h2, kTen, {1, 1}), std::strong_ordering::equal);
    EXPECT_EQ(slope_compare(h1, h2, kTen, {1, 3}), std::strong_ordering::greater);
    EXPECT_EQ(slope_compare(h1, h2, kTen, {3, 1}), std::strong_ordering::less);
    EXPECT_GT(oracle::eq1_cost(10, 10, 0.1, 0.4, 1, 3), oracle::eq1_cost(10, 10, 0.3, 0.2, 1, 3));
    EXPECT_LT(oracle::eq1_cost(10, 10, 0.1, 0.4, 3, 1), oracle::eq1_cost(10, 10, 0.3, 0.2, 3, 1));
}

TEST(SlopeCompare, VerticalSegmentsAndZeroCosts) {
    // equal p10: only the p01 gap matters, no division by zero
    EXPECT_EQ(slope_compare({0.2, 0.5}, {0.2, 0.3}, kTen, {1, 1}), std::strong_ordering::greater);
    EXPECT_EQ(slope_compare({0.2, 0.5}, {0.2, 0.3}, kTen, {1, 0}), std::strong_ordering::equal);
    EXPECT_EQ(slope_compare({0.1, 0.5}, {0.4, 0.3}, kTen, {0, 1}), std::strong_ordering::greater);
}

TEST(SlopeCompare, RejectsOtherConfigurations) {
    EXPECT_THROW(slope_compare({0.3, 0.2}, {0.1, 0.4}, kTen, {1, 1}), std::invalid_argument);
    EXPECT_THROW(slope_compare({0.1, 0.2}, {0.3, 0.4}, kTen, {1, 1}), std::invalid_argument);
    EXPECT_THROW(slope_compare({0.1, 0.2}, {0.1, 0.2}, kTen, {1, 1}), std::invalid_argument);
}

TEST(SlopeCompare, AgreesWithDirectCostComparison) {
    auto rng = make_stream(11, "lemma1-test");
    std::size_t equal_cases = 0;
    for (int t = 0; t < 100000; ++t) {
        const auto c = random_lemma1_case(rng);
        const double l1 = oracle::eq1_cost(c.stats.n0, c.stats.n1, c.h1.p10, c.h1.p01, c.c.c0, c.c.c1);
        const double l2 = oracle::eq1_cost(c.stats.n0, c.stats.n1, c.h2.p10, c.h2.p01, c.c.c0, c.c.c1);
        const auto got = slope_compare(c.h1, c.h2, c.stats, c.c);
        ASSERT_EQ(got, l1 <=> l2) << "trial " << t;
        equal_cases += got == std::strong_ordering::equal;
    }
    EXPECT_GT(equal_cases, 0u);
}

TEST(CostProfile, Examples) {
    EXPECT_EQ(cost_profile(kThree, kTen, {2, 1}), (CostProfile{10, 12.5, 20}));
    EXPECT_EQ(cost_profile(kThree, kTen, {1, 2}), (CostProfile{20, 10, 10}));
    EXPECT_EQ(cost_profile(Front({{0.2, 0.2}}), kTen, {1, 2}).size(), 1u);
}

TEST(CheckUnimodal, Examples) {
    EXPECT_TRUE(check_unimodal(CostProfile{3, 2, 1, 2, 3}, 0));
    EXPECT_FALSE(check_unimodal(CostProfile{3, 1, 2, 1}, 0));
    EXPECT_TRUE(check_unimodal(CostProfile{5}, 0));
    EXPECT_TRUE(check_unimodal(CostProfile{2, 2, 1, 1, 3, 3}, 0));
    EXPECT_FALSE(check_unimodal(CostProfile{1, 2, 1}, 0));
    EXPECT_TRUE(check_unimodal(CostProfile{1, 1 + 1e-12, 1}, 1e-9));
    EXPECT_THROW(check_unimodal(CostProfile{}, 0), std::invalid_argument);
}

TEST(CheckUnimodal, ProfilesAlongConvexFronts) {
    auto rng = make_stream(13, "lemma2-test");
    for (int t = 0; t < 10000; ++t) {
        const auto front = random_front(rng, 98);
        const auto stats = random_stats(rng);
        const auto c = random_matrix(rng);
        ASSERT_TRUE(check_unimodal(cost_profile(front, stats, c), 1e-9)) << "trial " << t;
    }
}

TEST(SingleBest, Examples) {
    EXPECT_EQ(single_best(kThree, kTen, {2, 1}), idx({0}));
    EXPECT_EQ(single_best(kThree, kTen, {1, 2}), idx({1, 2}));
    EXPECT_EQ(single_best(Front({{0.2, 0.2}}), kTen, {1, 2}), idx({0}));
}

TEST(PairMinimax, Examples) {
    const auto r = pair_minimax(kThree, kTen, {2, 1}, {1, 2});
    EXPECT_DOUBLE_EQ(r.value, 12.5);
    EXPECT_EQ(r.indices, idx({1}));

    const auto same = pair_minimax(kThree, kTen, {1, 2}, {1, 2});
    EXPECT_EQ(same.indices, single_best(kThree, kTen, {1, 2}));

    EXPECT_EQ(pair_minimax(Front({{0.2, 0.2}}), kTen, {2, 1}, {1, 2}).indices, idx({0}));
}

TEST(BruteMinimax, Examples) {
    const auto r = brute_minimax(kThree, kTen, {{2, 1}, {1, 2}});
    EXPECT_DOUBLE_EQ(r.value, 12.5);
    EXPECT_EQ(r.indices, idx({1}));

    EXPECT_EQ(brute_minimax(kThree, kTen, {{1, 2}}).indices, single_best(kThree, kTen, {1, 2}));

    const auto dup = brute_minimax(kThree, kTen, {{2, 1}, {1, 2}, {2, 1}});
    EXPECT_EQ(dup.value, r.value);
    EXPECT_EQ(dup.indices, r.indices);
}

TEST(CandidateMinimax, Examples) {
    const auto r = candidate_minimax(kThree, kTen, {{2, 1}, {1, 2}});
    EXPECT_DOUBLE_EQ(r.value, 12.5);
    EXPECT_EQ(r.value, brute_minimax(kThree, kTen, {{2, 1}, {1, 2}}).value);
    EXPECT_EQ(r.index, 1u);

    const auto single = candidate_minimax(kThree, kTen, {{2, 1}});
    EXPECT_DOUBLE_EQ(single.value, 10.0);
}

TEST(CandidateMinimax, MatchesExhaustiveSearch) {
    auto rng = make_stream(17, "corollary-test");
    for (int t = 0; t < 1000; ++t) {
        const auto front = random_front(rng, 48);
        const auto stats = random_stats(rng);
        const auto u = sample_antichain(1 + uniform_index(rng, 20), 0.0, 10.0, rng);
        ASSERT_TRUE(pairwise_nondominated(u));
        const auto brute = brute_minimax(front, stats, u);
        const auto cand = candidate_minimax(front, stats, u);
        ASSERT_TRUE(approx_equal(brute.value, cand.value, 1e-9)) << "trial " << t;
        EXPECT_LE(cand.candidates.size(), front.size());
    }
}
