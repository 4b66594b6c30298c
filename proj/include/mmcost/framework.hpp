#pragma once

// Minimax training over a finite set of cost matrices.
//
//   S  - fit one model per matrix, keep the one with the smallest max cost.
//   SP - drop dominated matrices, fit one model per matrix and one pairwise
//        minimax model per unordered pair, keep the best over all of them.
//   M  - fit a single model directly against the max over the whole set.
//
// Every model is a stump ensemble grown by fit_gam; selection always uses
// training-set costs.

#include "mmcost/learner.hpp"
#include "mmcost/rng.hpp"

#include <string>

namespace mmcost {

/// ci is dominated by cj: componentwise no larger, and not identical.
inline bool matrix_dominates(const CostMatrix& ci, const CostMatrix& cj) noexcept {
    return ci.c0 <= cj.c0 && ci.c1 <= cj.c1 && !(ci == cj);
}

/// Positions of matrices that survive dominance filtering; for exact
/// duplicates only the first occurrence survives.
inline std::vector<std::size_t> nondominated_indices(const CostMatrixSet& u) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < u.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < u.size() && !drop; ++j)
            drop = matrix_dominates(u[i], u[j]) || (j < i && u[j] == u[i]);
        if (!drop) keep.push_back(i);
    }
    return keep;
}

inline CostMatrixSet filter_dominated(const CostMatrixSet& u) {
    std::vector<CostMatrix> out;
    for (auto i : nondominated_indices(u)) out.push_back(u[i]);
    return CostMatrixSet(std::move(out));
}

inline bool pairwise_nondominated(const CostMatrixSet& u) { return nondominated_indices(u).size() == u.size(); }

/// k matrices with entries uniform in [lo, hi), redrawn as a whole until no
/// matrix dominates another. Throws once max_attempts draws have failed;
/// the acceptance rate is 1/k!, so k above ~8 needs sample_antichain.
inline CostMatrixSet sample_cost_set(std::size_t k, double lo, double hi, Rng& rng,
                                     std::size_t max_attempts = 100000) {
    if (k < 1) throw std::invalid_argument("sample_cost_set: k must be >= 1");
    if (!(lo < hi) || lo < 0.0) throw std::invalid_argument("sample_cost_set: need 0 <= lo < hi");
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<CostMatrix> m;
        m.reserve(k);
        bool valid = true;
        for (std::size_t i = 0; i < k; ++i) {
            const double c0 = uniform(rng, lo, hi);
            const double c1 = uniform(rng, lo, hi);
            if (c0 + c1 <= 0.0) valid = false;
            else m.emplace_back(c0, c1);
        }
        if (!valid) continue;
        CostMatrixSet u(std::move(m));
        if (pairwise_nondominated(u)) return u;
    }
    throw std::runtime_error("sample_cost_set: rejection budget exhausted for k = " + std::to_string(k));
}

inline CostMatrixSet sample_cost_set(std::size_t k, double lo, double hi, std::uint64_t seed,
                                     std::size_t max_attempts = 100000) {
    auto rng = make_stream(seed, "costs");
    return sample_cost_set(k, lo, hi, rng, max_attempts);
}

/// Pairwise non-dominated set with the same distribution (as a set) as
/// sample_cost_set, built directly: draw k values per coordinate, pair the
/// ascending c0 values with descending c1 values, then shuffle the order.
inline CostMatrixSet sample_antichain(std::size_t k, double lo, double hi, Rng& rng) {
    if (k < 1) throw std::invalid_argument("sample_antichain: k must be >= 1");
    if (!(lo < hi) || lo < 0.0) throw std::invalid_argument("sample_antichain: need 0 <= lo < hi");
    for (;;) {
        std::vector<double> a(k), b(k);
        for (auto& v : a) v = uniform(rng, lo, hi);
        for (auto& v : b) v = uniform(rng, lo, hi);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end(), std::greater<>());
        if (std::adjacent_find(a.begin(), a.end()) != a.end() || std::adjacent_find(b.begin(), b.end()) != b.end())
            continue;
        if (k == 1 && a[0] + b[0] <= 0.0) continue;
        std::vector<CostMatrix> m;
        for (std::size_t i = 0; i < k; ++i) m.emplace_back(a[i], b[i]);
        shuffle(m, rng);
        return CostMatrixSet(std::move(m));
    }
}

/// Grid over [c1_lo, c1_hi] at fixed c0. All grid points share c0, so
/// filter_dominated collapses the result to the largest-c1 matrix; vary c0
/// as well to pose a genuine multi-matrix problem.
inline CostMatrixSet discretize_interval(double c0_fixed, double c1_lo, double c1_hi, std::size_t steps) {
    if (steps < 2) throw std::invalid_argument("discretize_interval: steps must be >= 2");
    if (!(c1_lo < c1_hi)) throw std::invalid_argument("discretize_interval: need c1_lo < c1_hi");
    std::vector<CostMatrix> m;
    const double step = (c1_hi - c1_lo) / static_cast<double>(steps - 1);
    for (std::size_t t = 0; t < steps; ++t)
        m.emplace_back(c0_fixed, t + 1 == steps ? c1_hi : c1_lo + static_cast<double>(t) * step);
    return CostMatrixSet(std::move(m));
}

struct Provenance {
    enum class Kind { single, pair, direct };
    Kind kind = Kind::single;
    std::size_t i = 0; // positions in the caller's cost set
    std::size_t j = 0;

    std::string str() const {
        switch (kind) {
        case Kind::single: return "single(" + std::to_string(i) + ")";
        case Kind::pair: return "pair(" + std::to_string(i) + "," + std::to_string(j) + ")";
        case Kind::direct: return "direct";
        }
        return {};
    }
    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct TrainedCandidate {
    StumpEnsemble model;
    Provenance provenance;
    OperatingPoint train_point;
    double train_max_cost = 0.0; // over the cost set the solver was given
};

struct FrameworkConfig {
    std::size_t max_iters = 50;
    double min_improvement = 1e-9;

    GamConfig gam() const { return {max_iters, min_improvement}; }
};

enum class Framework { S, SP, M };

inline std::string to_string(Framework f) {
    switch (f) {
    case Framework::S: return "S";
    case Framework::SP: return "SP";
    case Framework::M: return "M";
    }
    return {};
}

inline Framework parse_framework(std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (s == "S") return Framework::S;
    if (s == "SP") return Framework::SP;
    if (s == "M") return Framework::M;
    throw std::invalid_argument("unknown framework '" + s + "' (expected s, sp or m)");
}

namespace detail {

inline TrainedCandidate train(const LabeledDataset& data, const CostMatrixSet& objective_set,
                              const CostMatrixSet& eval_set, Provenance prov, const FrameworkConfig& cfg) {
    const auto stats = class_stats(data);
    auto model = fit_gam(data, CostObjective{stats, objective_set}, cfg.gam());
    const auto point = operating_point(model.predict(data), data.labels());
    const double cost = max_total_cost(stats, point, eval_set).value;
    return {std::move(model), prov, point, cost};
}

// First candidate with the smallest training max cost.
inline TrainedCandidate select_min(std::vector<TrainedCandidate> v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i].train_max_cost < v[best].train_max_cost) best = i;
    return std::move(v[best]);
}

} // namespace detail

inline TrainedCandidate solve_single(const LabeledDataset& data, const CostMatrix& c, const FrameworkConfig& cfg = {}) {
    const CostMatrixSet u{c};
    return detail::train(data, u, u, {Provenance::Kind::single, 0, 0}, cfg);
}

inline TrainedCandidate solve_pair(const LabeledDataset& data, const CostMatrix& ci, const CostMatrix& cj,
                                   const FrameworkConfig& cfg = {}) {
    const CostMatrixSet u{ci, cj};
    return detail::train(data, u, u, {Provenance::Kind::pair, 0, 1}, cfg);
}

/// One single-matrix model per entry of u (u unfiltered), scored over u.
inline std::vector<TrainedCandidate> s_candidates(const LabeledDataset& data, const CostMatrixSet& u,
                                                  const FrameworkConfig& cfg = {}) {
    std::vector<TrainedCandidate> v;
    for (std::size_t i = 0; i < u.size(); ++i)
        v.push_back(detail::train(data, CostMatrixSet{u[i]}, u, {Provenance::Kind::single, i, i}, cfg));
    return v;
}

inline TrainedCandidate solve_S(const LabeledDataset& data, const CostMatrixSet& u, const FrameworkConfig& cfg = {}) {
    return detail::select_min(s_candidates(data, u, cfg));
}

/// Candidate pool of the singles-plus-pairs framework after dominance
/// filtering: singles first, then pairs (i < j) in lexicographic order.
/// Provenance indices refer to positions in the original u.
inline std::vector<TrainedCandidate> sp_candidates(const LabeledDataset& data, const CostMatrixSet& u,
                                                   const FrameworkConfig& cfg = {}) {
    const auto keep = nondominated_indices(u);
    const auto filtered = filter_dominated(u);
    std::vector<TrainedCandidate> v;
    if (keep.size() == 2) {
        v.push_back(detail::train(data, filtered, filtered, {Provenance::Kind::pair, keep[0], keep[1]}, cfg));
        return v;
    }
    for (std::size_t a = 0; a < keep.size(); ++a)
        v.push_back(detail::train(data, CostMatrixSet{filtered[a]}, filtered,
                                  {Provenance::Kind::single, keep[a], keep[a]}, cfg));
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = a + 1; b < keep.size(); ++b)
            v.push_back(detail::train(data, CostMatrixSet{filtered[a], filtered[b]}, filtered,
                                      {Provenance::Kind::pair, keep[a], keep[b]}, cfg));
    return v;
}

inline TrainedCandidate solve_SP(const LabeledDataset& data, const CostMatrixSet& u, const FrameworkConfig& cfg = {}) {
    return detail::select_min(sp_candidates(data, u, cfg));
}

inline TrainedCandidate solve_M(const LabeledDataset& data, const CostMatrixSet& u, const FrameworkConfig& cfg = {}) {
    const auto filtered = filter_dominated(u);
    return detail::train(data, filtered, filtered, {Provenance::Kind::direct, 0, 0}, cfg);
}

inline TrainedCandidate solve(Framework f, const LabeledDataset& data, const CostMatrixSet& u,
                              const FrameworkConfig& cfg = {}) {
    switch (f) {
    case Framework::S: return solve_S(data, u, cfg);
    case Framework::SP: return solve_SP(data, u, cfg);
    case Framework::M: return solve_M(data, u, cfg);
    }
    throw std::logic_error("solve: unknown framework");
}

} // namespace mmcost
