#pragma once

// Unweighted additive ensemble of decision stumps, F(x) = sign(sum f_i(x)),
// grown greedily one stump per round against a max-over-matrices cost
// objective.
//
// Encoding: class 1 <-> +1, class 0 <-> -1. A score of exactly 0 predicts
// class 0. A threshold stump outputs its polarity when x[feature] >= threshold
// and the negated polarity otherwise.

#include "mmcost/core.hpp"

#include <limits>
#include <numeric>
#include <variant>

namespace mmcost {

struct ThresholdStump {
    std::size_t feature = 0;
    double threshold = 0.0;
    int polarity = 1;

    friend bool operator==(const ThresholdStump&, const ThresholdStump&) = default;
};

struct ConstantStump {
    int output = 1;

    friend bool operator==(const ConstantStump&, const ConstantStump&) = default;
};

class DecisionStump {
public:
    DecisionStump(ThresholdStump s) : rule_(s) {
        if (s.polarity != 1 && s.polarity != -1) throw std::invalid_argument("stump: polarity must be +1 or -1");
        if (!std::isfinite(s.threshold)) throw std::invalid_argument("stump: threshold must be finite");
    }
    DecisionStump(ConstantStump s) : rule_(s) {
        if (s.output != 1 && s.output != -1) throw std::invalid_argument("stump: output must be +1 or -1");
    }

    static DecisionStump threshold(std::size_t feature, double theta, int polarity) {
        return ThresholdStump{feature, theta, polarity};
    }
    static DecisionStump constant(int output) { return ConstantStump{output}; }

    bool is_constant() const noexcept { return std::holds_alternative<ConstantStump>(rule_); }
    const ThresholdStump* as_threshold() const noexcept { return std::get_if<ThresholdStump>(&rule_); }
    const ConstantStump* as_constant() const noexcept { return std::get_if<ConstantStump>(&rule_); }

    int output(std::span<const double> x) const {
        if (const auto* c = as_constant()) return c->output;
        const auto& t = std::get<ThresholdStump>(rule_);
        if (t.feature >= x.size()) throw std::out_of_range("stump: feature index out of range");
        return x[t.feature] >= t.threshold ? t.polarity : -t.polarity;
    }

    friend bool operator==(const DecisionStump&, const DecisionStump&) = default;

private:
    std::variant<ThresholdStump, ConstantStump> rule_;
};

inline int stump_output(const DecisionStump& stump, std::span<const double> x) { return stump.output(x); }

inline Label label_from_score(double score) noexcept { return score > 0.0 ? 1 : 0; }

class StumpEnsemble {
public:
    StumpEnsemble(std::vector<DecisionStump> stumps, std::size_t n_features)
        : stumps_(std::move(stumps)), m_(n_features) {
        if (stumps_.empty()) throw std::invalid_argument("ensemble: must contain at least one stump");
        for (const auto& s : stumps_)
            if (const auto* t = s.as_threshold(); t && t->feature >= m_)
                throw std::invalid_argument("ensemble: stump feature index out of range");
    }

    std::size_t size() const noexcept { return stumps_.size(); }
    std::size_t n_features() const noexcept { return m_; }
    const std::vector<DecisionStump>& stumps() const noexcept { return stumps_; }

    double score(std::span<const double> x) const {
        int s = 0;
        for (const auto& stump : stumps_) s += stump.output(x);
        return static_cast<double>(s);
    }

    std::vector<Label> predict(const LabeledDataset& data) const {
        return predict(data.features(), data.n_features());
    }

    /// Row-major feature matrix with n_features columns.
    std::vector<Label> predict(std::span<const double> features, std::size_t n_features) const {
        if (n_features != m_) throw std::invalid_argument("ensemble: feature count mismatch");
        const std::size_t n = m_ == 0 ? 0 : features.size() / m_;
        std::vector<Label> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = label_from_score(score(features.subspan(i * m_, m_)));
        return out;
    }

    friend bool operator==(const StumpEnsemble&, const StumpEnsemble&) = default;

private:
    std::vector<DecisionStump> stumps_;
    std::size_t m_;
};

inline double ensemble_score(const StumpEnsemble& e, std::span<const double> x) { return e.score(x); }

inline std::vector<Label> ensemble_predict(const StumpEnsemble& e, const LabeledDataset& data) {
    return e.predict(data);
}

namespace detail {

// Threshold strictly between two adjacent distinct values a < b, so that
// a < t <= b. Falls back to b when the midpoint rounds down onto a.
inline double midpoint_threshold(double a, double b) noexcept {
    const double t = a + (b - a) / 2.0;
    return t > a ? t : b;
}

struct SortedFeature {
    std::vector<std::size_t> order;      // row indices by ascending value
    std::vector<std::size_t> group_end;  // exclusive end in `order` of each run of equal values
    std::vector<double> thresholds;      // one per boundary between consecutive runs
};

inline std::vector<SortedFeature> sort_features(const LabeledDataset& data) {
    std::vector<SortedFeature> out(data.n_features());
    for (std::size_t j = 0; j < data.n_features(); ++j) {
        auto& sf = out[j];
        sf.order.resize(data.size());
        std::iota(sf.order.begin(), sf.order.end(), std::size_t{0});
        std::stable_sort(sf.order.begin(), sf.order.end(),
                         [&](std::size_t a, std::size_t b) { return data.at(a, j) < data.at(b, j); });
        for (std::size_t k = 1; k <= sf.order.size(); ++k) {
            if (k == sf.order.size() || data.at(sf.order[k], j) != data.at(sf.order[k - 1], j)) {
                sf.group_end.push_back(k);
                if (k < sf.order.size())
                    sf.thresholds.push_back(midpoint_threshold(data.at(sf.order[k - 1], j), data.at(sf.order[k], j)));
            }
        }
    }
    return out;
}

} // namespace detail

/// All candidate stumps in search order: per feature, midpoint thresholds
/// ascending with polarity +1 then -1; then constant +1 and constant -1.
inline std::vector<DecisionStump> enumerate_candidate_stumps(const LabeledDataset& data) {
    std::vector<DecisionStump> out;
    const auto sorted = detail::sort_features(data);
    for (std::size_t j = 0; j < sorted.size(); ++j)
        for (double t : sorted[j].thresholds) {
            out.push_back(DecisionStump::threshold(j, t, +1));
            out.push_back(DecisionStump::threshold(j, t, -1));
        }
    out.push_back(DecisionStump::constant(+1));
    out.push_back(DecisionStump::constant(-1));
    return out;
}

/// Objective: the largest total cost over a nonempty matrix set. A singleton
/// set is plain cost-sensitive learning, a pair is pairwise minimax.
struct CostObjective {
    ClassStats stats;
    CostMatrixSet matrices;

    double evaluate(const OperatingPoint& p) const { return max_total_cost(stats, p, matrices).value; }
    double evaluate(const ErrorCounts& e) const { return evaluate(to_operating_point(e, stats)); }
};

inline double objective_value(const CostObjective& objective, std::span<const Label> predictions,
                              std::span<const Label> labels) {
    return objective.evaluate(operating_point(predictions, labels));
}

struct GamConfig {
    std::size_t max_iters = 50;
    double min_improvement = 1e-9;
};

struct GamFit {
    StumpEnsemble ensemble;
    std::vector<double> objective_trace; // objective after each accepted stump
};

/// Greedy stagewise fit. Each round scores every candidate stump appended to
/// the current ensemble and keeps the best (earliest in search order on
/// ties); stops after max_iters rounds or when the best candidate improves
/// the objective by no more than min_improvement. With no accepted stump the
/// better constant stump is returned alone.
inline GamFit fit_gam_traced(const LabeledDataset& data, const CostObjective& objective, const GamConfig& cfg = {}) {
    if (cfg.max_iters < 1) throw std::invalid_argument("fit_gam: max_iters must be >= 1");
    if (!(cfg.min_improvement >= 0.0)) throw std::invalid_argument("fit_gam: min_improvement must be >= 0");
    if (class_stats(data) != objective.stats)
        throw std::invalid_argument("fit_gam: objective class counts do not match the dataset");

    const std::size_t n = data.size();
    const auto labels = data.labels();
    const auto sorted = detail::sort_features(data);

    std::vector<int> score(n, 0);
    // Errors committed by instance i if the next stump outputs +1 / -1.
    std::vector<Label> err_plus(n), err_minus(n);
    ErrorCounts total_plus, total_minus;
    std::vector<ErrorCounts> prefix_plus, prefix_minus;

    auto add = [](ErrorCounts& acc, Label y, Label err) {
        if (err) (y == 0 ? acc.fp : acc.fn) += 1;
    };

    std::vector<DecisionStump> stumps;
    std::vector<double> trace;
    double current = objective.evaluate(ErrorCounts{0, objective.stats.n1}); // empty ensemble predicts all 0

    for (std::size_t round = 0; round < cfg.max_iters; ++round) {
        total_plus = total_minus = {};
        for (std::size_t i = 0; i < n; ++i) {
            err_plus[i] = label_from_score(score[i] + 1) != labels[i];
            err_minus[i] = label_from_score(score[i] - 1) != labels[i];
            add(total_plus, labels[i], err_plus[i]);
            add(total_minus, labels[i], err_minus[i]);
        }

        double best_value = std::numeric_limits<double>::infinity();
        std::optional<DecisionStump> best;
        auto consider = [&](double value, auto&& make) {
            if (value < best_value) {
                best_value = value;
                best = make();
            }
        };

        for (std::size_t j = 0; j < sorted.size(); ++j) {
            const auto& sf = sorted[j];
            // Left of threshold t: rows in groups [0, g]; right: the rest.
            ErrorCounts left_plus, left_minus;
            std::size_t pos = 0;
            for (std::size_t g = 0; g < sf.thresholds.size(); ++g) {
                for (; pos < sf.group_end[g]; ++pos) {
                    const auto r = sf.order[pos];
                    add(left_plus, labels[r], err_plus[r]);
                    add(left_minus, labels[r], err_minus[r]);
                }
                // polarity +1: left gets -1, right gets +1
                const ErrorCounts pos_pol{left_minus.fp + (total_plus.fp - left_plus.fp),
                                          left_minus.fn + (total_plus.fn - left_plus.fn)};
                const ErrorCounts neg_pol{left_plus.fp + (total_minus.fp - left_minus.fp),
                                          left_plus.fn + (total_minus.fn - left_minus.fn)};
                const double t = sf.thresholds[g];
                consider(objective.evaluate(pos_pol), [&] { return DecisionStump::threshold(j, t, +1); });
                consider(objective.evaluate(neg_pol), [&] { return DecisionStump::threshold(j, t, -1); });
            }
        }
        consider(objective.evaluate(total_plus), [] { return DecisionStump::constant(+1); });
        consider(objective.evaluate(total_minus), [] { return DecisionStump::constant(-1); });

        if (!(current - best_value > cfg.min_improvement)) break;
        current = best_value;
        trace.push_back(current);
        for (std::size_t i = 0; i < n; ++i) score[i] += best->output(data.row(i));
        stumps.push_back(*best);
    }

    if (stumps.empty()) {
        const double plus = objective.evaluate(ErrorCounts{objective.stats.n0, 0});
        const double minus = objective.evaluate(ErrorCounts{0, objective.stats.n1});
        stumps.push_back(DecisionStump::constant(plus <= minus ? +1 : -1));
    }
    return {StumpEnsemble(std::move(stumps), data.n_features()), std::move(trace)};
}

inline StumpEnsemble fit_gam(const LabeledDataset& data, const CostObjective& objective, const GamConfig& cfg = {}) {
    return fit_gam_traced(data, objective, cfg).ensemble;
}

} // namespace mmcost
