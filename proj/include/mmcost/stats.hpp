#pragma once

// Wilcoxon signed-rank test for paired per-fold costs.
//
// Zero differences are dropped, tied |d| share their average rank. The null
// distribution is enumerated exactly for up to kWilcoxonExactLimit nonzero
// differences; beyond that a normal approximation with tie-corrected
// variance and a 0.5 continuity correction is used.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace mmcost {

inline constexpr std::size_t kWilcoxonExactLimit = 25;

struct WilcoxonResult {
    double w_plus = 0.0;
    std::size_t n_effective = 0;
    double p_two_sided = 1.0;
    bool exact = true;
};

namespace detail {

// Doubled average ranks of |d| (always integers), d assumed nonzero.
inline std::vector<std::int64_t> doubled_ranks(std::span<const double> d, std::vector<std::size_t>* tie_sizes = nullptr) {
    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(d[a]) < std::abs(d[b]); });
    std::vector<std::int64_t> r2(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) ++j;
        // ranks i+1 .. j+1 averaged, doubled: (i+1) + (j+1)
        const auto shared = static_cast<std::int64_t>(i + j + 2);
        for (std::size_t k = i; k <= j; ++k) r2[order[k]] = shared;
        if (tie_sizes && j > i) tie_sizes->push_back(j - i + 1);
        i = j + 1;
    }
    return r2;
}

/// counts[s] = number of sign assignments whose positive doubled-rank sum is s.
inline std::vector<double> signed_rank_counts(std::span<const std::int64_t> r2) {
    const auto total = std::accumulate(r2.begin(), r2.end(), std::int64_t{0});
    std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
    counts[0] = 1.0;
    std::int64_t reach = 0;
    for (auto r : r2) {
        reach += r;
        for (std::int64_t s = reach; s >= r; --s) counts[static_cast<std::size_t>(s)] += counts[static_cast<std::size_t>(s - r)];
    }
    return counts;
}

inline double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

} // namespace detail

inline WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("wilcoxon: sample lengths differ");
    if (a.empty()) throw std::invalid_argument("wilcoxon: empty sample");
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!std::isfinite(a[i]) || !std::isfinite(b[i])) throw std::invalid_argument("wilcoxon: non-finite value");
        if (a[i] != b[i]) d.push_back(a[i] - b[i]);
    }
    WilcoxonResult r;
    r.n_effective = d.size();
    if (d.empty()) return r;

    std::vector<std::size_t> ties;
    const auto r2 = detail::doubled_ranks(d, &ties);
    std::int64_t w2 = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > 0) w2 += r2[i];
    r.w_plus = static_cast<double>(w2) / 2.0;

    const double n = static_cast<double>(d.size());
    if (d.size() <= kWilcoxonExactLimit) {
        const auto counts = detail::signed_rank_counts(r2);
        const double all = std::ldexp(1.0, static_cast<int>(d.size()));
        double upper = 0.0, lower = 0.0;
        for (std::size_t s = 0; s < counts.size(); ++s) {
            if (static_cast<std::int64_t>(s) >= w2) upper += counts[s];
            if (static_cast<std::int64_t>(s) <= w2) lower += counts[s];
        }
        r.p_two_sided = std::min(1.0, 2.0 * std::min(upper, lower) / all);
        return r;
    }

    r.exact = false;
    const double mean = n * (n + 1.0) / 4.0;
    double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
    for (auto t : ties) {
        const double tt = static_cast<double>(t);
        var -= (tt * tt * tt - tt) / 48.0;
    }
    if (var <= 0.0) {
        r.p_two_sided = 1.0;
        return r;
    }
    const double z = (std::abs(r.w_plus - mean) - 0.5) / std::sqrt(var);
    r.p_two_sided = std::clamp(2.0 * detail::normal_upper_tail(z), 0.0, 1.0);
    return r;
}

/// 1: SP significantly better (lower cost); -1: significantly worse.
enum class Mark : int { none = 0, better = 1, worse = -1 };

inline Mark significance_mark(const WilcoxonResult& result, double sp_mean, double other_mean, double alpha = 0.05) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("significance_mark: alpha must be in (0, 1)");
    if (result.p_two_sided >= alpha) return Mark::none;
    return sp_mean < other_mean ? Mark::better : Mark::worse;
}

} // namespace mmcost
