#pragma once

// Randomized checks of the front geometry: slope ordering of pairwise costs,
// unimodality of cost profiles along a convex front, candidate-set minimax
// against exhaustive minimax, and dominance-filter neutrality. Each suite
// stops at the first counterexample and reports it verbatim.

#include "mmcost/framework.hpp"
#include "mmcost/geometry.hpp"

#include <json.hpp>

#include <sstream>

namespace mmcost {

enum class Suite { lemma1, lemma2, corollary, dominance };

inline Suite parse_suite(const std::string& s) {
    if (s == "lemma1") return Suite::lemma1;
    if (s == "lemma2") return Suite::lemma2;
    if (s == "corollary") return Suite::corollary;
    if (s == "dominance") return Suite::dominance;
    throw std::invalid_argument("unknown suite '" + s + "' (expected lemma1, lemma2, corollary or dominance)");
}

inline std::string to_string(Suite s) {
    switch (s) {
    case Suite::lemma1: return "lemma1";
    case Suite::lemma2: return "lemma2";
    case Suite::corollary: return "corollary";
    case Suite::dominance: return "dominance";
    }
    return {};
}

struct VerificationReport {
    Suite suite;
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::string counterexample; // empty when every trial passed

    bool ok() const noexcept { return passed == trials; }
};

/// Lower-left hull of up to max_random uniform points in the unit square plus
/// the anchors (0,1) and (1,0).
inline Front random_front(Rng& rng, std::size_t max_random) {
    const auto count = static_cast<std::size_t>(uniform_index(rng, max_random + 1));
    std::vector<OperatingPoint> pts{{0.0, 1.0}, {1.0, 0.0}};
    for (std::size_t i = 0; i < count; ++i) pts.emplace_back(uniform01(rng), uniform01(rng));
    return convex_front(std::move(pts));
}

inline ClassStats random_stats(Rng& rng, std::size_t max_count = 1000) {
    return ClassStats::from_counts(1 + uniform_index(rng, max_count), 1 + uniform_index(rng, max_count));
}

inline CostMatrix random_matrix(Rng& rng, double hi = 10.0) {
    for (;;) {
        const double c0 = uniform(rng, 0.0, hi), c1 = uniform(rng, 0.0, hi);
        if (c0 + c1 > 0.0) return {c0, c1};
    }
}

struct Lemma1Case {
    OperatingPoint h1, h2;
    ClassStats stats;
    CostMatrix c;
};

/// Configuration on a dyadic grid: rates are multiples of 2^-g, costs are
/// multiples of 2^-10 below 10, counts at most 1024. Every product and sum in
/// the total cost is then exact in double precision. Half the draws use a
/// coarse grid so that exact cost ties occur.
inline Lemma1Case random_lemma1_case(Rng& rng) {
    const bool coarse = uniform_index(rng, 2) == 0;
    const std::uint64_t grid = coarse ? 8 : 1024;
    const std::uint64_t max_count = coarse ? 8 : 1024;
    const double scale = static_cast<double>(grid);
    auto rate = [&] { return static_cast<double>(uniform_index(rng, grid + 1)) / scale; };
    auto cost = [&] {
        return coarse ? static_cast<double>(uniform_index(rng, 10))
                      : static_cast<double>(uniform_index(rng, 10 * 1024)) / 1024.0;
    };
    for (;;) {
        double a10 = rate(), b10 = rate(), a01 = rate(), b01 = rate();
        if (a10 > b10) std::swap(a10, b10);
        if (a01 < b01) std::swap(a01, b01);
        if (a10 == b10 && a01 == b01) continue;
        const double c0 = cost(), c1 = cost();
        if (c0 + c1 <= 0.0) continue;
        const auto stats = ClassStats::from_counts(1 + uniform_index(rng, max_count), 1 + uniform_index(rng, max_count));
        return {{a10, a01}, {b10, b01}, stats, {c0, c1}};
    }
}

namespace detail {

inline std::string describe(const Front& f) {
    std::ostringstream os;
    os.precision(17);
    os << "front [";
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? ", " : "") << "(" << f[i].p10 << ", " << f[i].p01 << ")";
    os << "]";
    return os.str();
}

inline std::string describe(const CostMatrixSet& u) {
    std::ostringstream os;
    os.precision(17);
    os << "costs [";
    for (std::size_t i = 0; i < u.size(); ++i) os << (i ? ", " : "") << "(" << u[i].c0 << ", " << u[i].c1 << ")";
    os << "]";
    return os.str();
}

inline std::string describe(const ClassStats& s) {
    return "n0=" + std::to_string(s.n0) + " n1=" + std::to_string(s.n1);
}

inline const char* name(std::strong_ordering o) {
    return o == std::strong_ordering::less ? "less" : o == std::strong_ordering::greater ? "greater" : "equal";
}

} // namespace detail

inline VerificationReport verify_theory(Suite suite, std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("verify: trials must be >= 1");
    auto rng = make_stream(seed, "verify:" + to_string(suite));
    VerificationReport rep{suite, trials, 0, {}};
    std::ostringstream why;
    why.precision(17);

    for (std::size_t t = 0; t < trials; ++t) {
        bool ok = true;
        switch (suite) {
        case Suite::lemma1: {
            const auto c = random_lemma1_case(rng);
            const auto via_slope = slope_compare(c.h1, c.h2, c.stats, c.c);
            const auto direct = total_cost(c.stats, c.h1, c.c) <=> total_cost(c.stats, c.h2, c.c);
            if (via_slope != direct) {
                ok = false;
                why << "h1=(" << c.h1.p10 << ", " << c.h1.p01 << ") h2=(" << c.h2.p10 << ", " << c.h2.p01 << ") "
                    << detail::describe(c.stats) << " c=(" << c.c.c0 << ", " << c.c.c1 << ") slope_compare="
                    << detail::name(via_slope) << " direct=" << (direct < 0 ? "less" : direct > 0 ? "greater" : "equal");
            }
            break;
        }
        case Suite::lemma2: {
            const auto front = random_front(rng, 98);
            const auto stats = random_stats(rng);
            const auto c = random_matrix(rng);
            const auto profile = cost_profile(front, stats, c);
            if (!check_unimodal(profile, 1e-9)) {
                ok = false;
                why << detail::describe(front) << " " << detail::describe(stats) << " c=(" << c.c0 << ", " << c.c1
                    << ") profile not unimodal";
            }
            break;
        }
        case Suite::corollary: {
            const auto front = random_front(rng, 48);
            const auto stats = random_stats(rng);
            const auto u = sample_antichain(1 + uniform_index(rng, 20), 0.0, 10.0, rng);
            const auto brute = brute_minimax(front, stats, u);
            const auto cand = candidate_minimax(front, stats, u);
            if (!approx_equal(brute.value, cand.value, 1e-9)) {
                ok = false;
                why << detail::describe(front) << " " << detail::describe(stats) << " " << detail::describe(u)
                    << " brute=" << brute.value << " candidate=" << cand.value;
            }
            break;
        }
        case Suite::dominance: {
            const auto k = 1 + uniform_index(rng, 10);
            std::vector<CostMatrix> m;
            for (std::size_t i = 0; i < k; ++i) {
                const auto roll = uniform_index(rng, 4);
                if (roll == 0 && !m.empty()) m.push_back(m[uniform_index(rng, m.size())]); // duplicate
                else if (roll == 1 && !m.empty()) {
                    const auto& base = m[uniform_index(rng, m.size())];
                    m.emplace_back(base.c0 * uniform01(rng), base.c1); // dominated by base (or equal)
                } else m.push_back(random_matrix(rng));
            }
            const CostMatrixSet u(std::move(m));
            const OperatingPoint p{uniform01(rng), uniform01(rng)};
            const auto stats = random_stats(rng);
            const double full = max_total_cost(stats, p, u).value;
            const double filtered = max_total_cost(stats, p, filter_dominated(u)).value;
            if (full != filtered) {
                ok = false;
                why << detail::describe(u) << " p=(" << p.p10 << ", " << p.p01 << ") " << detail::describe(stats)
                    << " max=" << full << " filtered max=" << filtered;
            }
            break;
        }
        }
        if (!ok) {
            rep.counterexample = "trial " + std::to_string(t) + ": " + why.str();
            break;
        }
        ++rep.passed;
    }
    return rep;
}

} // namespace mmcost
