#pragma once

// Operating-point geometry: dominance, Pareto fronts, the lower-left convex
// front, per-matrix cost profiles along a front, and exhaustive / candidate
// minimax searches over a discrete front.

#include "mmcost/core.hpp"

#include <algorithm>
#include <compare>
#include <limits>
#include <set>
#include <vector>

namespace mmcost {

inline constexpr double kFrontTolerance = 1e-9;

/// a dominates b: no worse in either error rate, and not the same point.
inline bool point_dominates(const OperatingPoint& a, const OperatingPoint& b) noexcept {
    return a.p10 <= b.p10 && a.p01 <= b.p01 && !(a == b);
}

/// Non-dominated points, sorted by p10 ascending, duplicates collapsed.
inline std::vector<OperatingPoint> pareto_filter(std::vector<OperatingPoint> points) {
    if (points.empty()) throw std::invalid_argument("pareto_filter: empty input");
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        return a.p10 < b.p10 || (a.p10 == b.p10 && a.p01 < b.p01);
    });
    // After sorting, a point survives iff its p01 is strictly below every
    // p01 seen so far (earlier points have p10 <= its p10).
    std::vector<OperatingPoint> out;
    for (const auto& p : points)
        if (out.empty() || p.p01 < out.back().p01) out.push_back(p);
    return out;
}

namespace detail {

// z component of (b - a) x (c - a); positive for a counter-clockwise turn.
inline double cross(const OperatingPoint& a, const OperatingPoint& b, const OperatingPoint& c) noexcept {
    return (b.p10 - a.p10) * (c.p01 - a.p01) - (b.p01 - a.p01) * (c.p10 - a.p10);
}

inline double abs_slope(const OperatingPoint& a, const OperatingPoint& b) noexcept {
    return (a.p01 - b.p01) / (b.p10 - a.p10);
}

} // namespace detail

/// Ordered operating points, strictly increasing in p10 and strictly
/// decreasing in p01, with non-increasing absolute slope left to right.
class Front {
public:
    explicit Front(std::vector<OperatingPoint> points) : points_(std::move(points)) {
        if (points_.empty()) throw std::invalid_argument("front: empty");
        for (std::size_t i = 1; i < points_.size(); ++i)
            if (!(points_[i - 1].p10 < points_[i].p10 && points_[i - 1].p01 > points_[i].p01))
                throw std::invalid_argument("front: points not strictly monotone");
        if (!adjacent_slopes_non_increasing(kFrontTolerance))
            throw std::invalid_argument("front: not convex");
    }

    std::size_t size() const noexcept { return points_.size(); }
    const OperatingPoint& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<OperatingPoint>& points() const noexcept { return points_; }
    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }

    /// |slope(a,b)| >= |slope(b,c)| for every consecutive triple, slack tol
    /// relative to the larger slope.
    bool adjacent_slopes_non_increasing(double tol) const {
        for (std::size_t i = 2; i < points_.size(); ++i) {
            const double left = detail::abs_slope(points_[i - 2], points_[i - 1]);
            const double right = detail::abs_slope(points_[i - 1], points_[i]);
            if (left < right - tol * std::max({left, right, 1.0})) return false;
        }
        return true;
    }

private:
    std::vector<OperatingPoint> points_;
};

/// Lower-left convex hull of the non-dominated points (monotone chain).
/// Collinear interior points are dropped.
inline Front convex_front(std::vector<OperatingPoint> points) {
    auto nd = pareto_filter(std::move(points));
    std::vector<OperatingPoint> hull;
    hull.reserve(nd.size());
    for (const auto& p : nd) {
        while (hull.size() >= 2 && detail::cross(hull[hull.size() - 2], hull.back(), p) <= 0.0)
            hull.pop_back();
        hull.push_back(p);
    }
    return Front(std::move(hull));
}

/// Order of L(h1) against L(h2) for h1 left of and above h2, decided by the
/// segment slope against n0*c0 / n1*c1 in cross-multiplied form. The two
/// sides count as equal within rel_tol of the larger one.
inline std::strong_ordering slope_compare(const OperatingPoint& h1, const OperatingPoint& h2,
                                          const ClassStats& stats, const CostMatrix& c, double rel_tol = 1e-12) {
    if (!(h1.p10 <= h2.p10 && h1.p01 >= h2.p01) || h1 == h2)
        throw std::invalid_argument("slope_compare: h1 must lie left of and above h2");
    const double rise = (h1.p01 - h2.p01) * static_cast<double>(stats.n1) * c.c1;
    const double run = (h2.p10 - h1.p10) * static_cast<double>(stats.n0) * c.c0;
    if (std::abs(rise - run) <= rel_tol * std::max(std::abs(rise), std::abs(run))) return std::strong_ordering::equal;
    if (rise > run) return std::strong_ordering::greater;
    if (rise < run) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

using CostProfile = std::vector<double>;

inline CostProfile cost_profile(const Front& front, const ClassStats& stats, const CostMatrix& c) {
    CostProfile values;
    values.reserve(front.size());
    for (const auto& p : front) values.push_back(total_cost(stats, p, c));
    return values;
}

/// True iff the sequence is non-increasing up to some index and
/// non-decreasing after it. Each comparison is slack by tol * max(|a|,|b|,1).
inline bool check_unimodal(std::span<const double> values, double tol) {
    if (values.empty()) throw std::invalid_argument("check_unimodal: empty profile");
    if (tol < 0.0) throw std::invalid_argument("check_unimodal: negative tolerance");
    auto slack = [tol](double a, double b) { return tol * std::max({std::abs(a), std::abs(b), 1.0}); };
    std::size_t i = 0;
    while (i + 1 < values.size() && values[i + 1] <= values[i] + slack(values[i], values[i + 1])) ++i;
    for (; i + 1 < values.size(); ++i)
        if (values[i + 1] < values[i] - slack(values[i], values[i + 1])) return false;
    return true;
}

struct MinimaxResult {
    double value = 0.0;
    std::vector<std::size_t> indices; // ascending
};

namespace detail {

template <class PointCost>
MinimaxResult argmin_with_ties(std::size_t n, PointCost&& cost) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = cost(i);
    MinimaxResult r{*std::min_element(v.begin(), v.end()), {}};
    for (std::size_t i = 0; i < n; ++i)
        if (approx_equal(v[i], r.value, kFrontTolerance)) r.indices.push_back(i);
    return r;
}

} // namespace detail

/// Every front index minimizing the total cost for c.
inline std::vector<std::size_t> single_best(const Front& front, const ClassStats& stats, const CostMatrix& c) {
    return detail::argmin_with_ties(front.size(), [&](std::size_t i) { return total_cost(stats, front[i], c); })
        .indices;
}

/// Minimax over a pair of matrices; returns the full tie set.
inline MinimaxResult pair_minimax(const Front& front, const ClassStats& stats, const CostMatrix& ci,
                                  const CostMatrix& cj) {
    return detail::argmin_with_ties(front.size(), [&](std::size_t i) {
        return std::max(total_cost(stats, front[i], ci), total_cost(stats, front[i], cj));
    });
}

/// Exhaustive minimax over every front point.
inline MinimaxResult brute_minimax(const Front& front, const ClassStats& stats, const CostMatrixSet& u) {
    return detail::argmin_with_ties(front.size(),
                                    [&](std::size_t i) { return max_total_cost(stats, front[i], u).value; });
}

struct CandidateMinimax {
    double value = 0.0;
    std::size_t index = 0;
    std::vector<std::size_t> candidates; // ascending, deduplicated
};

/// Minimax restricted to single-matrix minimizers and pairwise minimax tie
/// sets. Assumes u has no dominated matrices.
inline CandidateMinimax candidate_minimax(const Front& front, const ClassStats& stats, const CostMatrixSet& u) {
    std::set<std::size_t> pool;
    for (std::size_t i = 0; i < u.size(); ++i) {
        auto best = single_best(front, stats, u[i]);
        pool.insert(best.begin(), best.end());
    }
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            auto pm = pair_minimax(front, stats, u[i], u[j]);
            pool.insert(pm.indices.begin(), pm.indices.end());
        }
    CandidateMinimax r{std::numeric_limits<double>::infinity(), 0, {pool.begin(), pool.end()}};
    for (auto idx : r.candidates) {
        const double v = max_total_cost(stats, front[idx], u).value;
        if (v < r.value) {
            r.value = v;
            r.index = idx;
        }
    }
    return r;
}

} // namespace mmcost
