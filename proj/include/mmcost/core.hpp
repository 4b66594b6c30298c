#pragma once

// Domain types for binary cost-sensitive classification and the total-cost
// arithmetic every other module builds on.
//
// Conventions: class 0 / class 1 labels; p10 is the rate at which class-0
// instances are predicted as 1, p01 the rate at which class-1 instances are
// predicted as 0. Correct classifications cost nothing.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mmcost {

using Label = std::uint8_t;

/// Row-major n x m feature matrix with a binary label per row.
class LabeledDataset {
public:
    LabeledDataset(std::vector<double> features, std::size_t n_features,
                   std::vector<Label> labels,
                   std::vector<std::string> feature_names = {})
        : features_(std::move(features)), m_(n_features), labels_(std::move(labels)),
          names_(std::move(feature_names)) {
        validate();
    }

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t n_features() const noexcept { return m_; }

    std::span<const double> row(std::size_t i) const {
        return {features_.data() + i * m_, m_};
    }
    double at(std::size_t i, std::size_t j) const { return features_[i * m_ + j]; }

    std::span<const Label> labels() const noexcept { return labels_; }
    std::span<const double> features() const noexcept { return features_; }
    const std::vector<std::string>& feature_names() const noexcept { return names_; }

    /// Rows selected by index, in the given order.
    LabeledDataset subset(std::span<const std::size_t> rows) const {
        std::vector<double> f;
        std::vector<Label> y;
        f.reserve(rows.size() * m_);
        y.reserve(rows.size());
        for (auto r : rows) {
            if (r >= size()) throw std::out_of_range("subset: row index out of range");
            auto x = row(r);
            f.insert(f.end(), x.begin(), x.end());
            y.push_back(labels_[r]);
        }
        return LabeledDataset(std::move(f), m_, std::move(y), names_);
    }

private:
    void validate() const {
        if (features_.size() != labels_.size() * m_)
            throw std::invalid_argument("dataset: feature matrix size does not match n x m");
        if (!names_.empty() && names_.size() != m_)
            throw std::invalid_argument("dataset: feature name count does not match m");
        if (labels_.size() < 2) throw std::invalid_argument("degenerate dataset: fewer than 2 instances");
        std::size_t ones = 0;
        for (auto y : labels_) {
            if (y > 1) throw std::invalid_argument("dataset: label not in {0, 1}");
            ones += y;
        }
        if (ones == 0 || ones == labels_.size())
            throw std::invalid_argument("degenerate dataset: only one class present");
        for (double v : features_)
            if (!std::isfinite(v)) throw std::invalid_argument("dataset: non-finite feature value");
    }

    std::vector<double> features_;
    std::size_t m_;
    std::vector<Label> labels_;
    std::vector<std::string> names_;
};

struct ClassStats {
    std::size_t n = 0;
    std::size_t n0 = 0;
    std::size_t n1 = 0;

    double p0() const noexcept { return static_cast<double>(n0) / static_cast<double>(n); }
    double p1() const noexcept { return static_cast<double>(n1) / static_cast<double>(n); }

    static ClassStats from_counts(std::size_t n0, std::size_t n1) {
        if (n0 == 0 || n1 == 0) throw std::invalid_argument("degenerate dataset: only one class present");
        return {n0 + n1, n0, n1};
    }

    friend bool operator==(const ClassStats&, const ClassStats&) = default;
};

/// Misclassification costs: c0 for a class-0 instance, c1 for a class-1 instance.
struct CostMatrix {
    double c0 = 1.0;
    double c1 = 1.0;

    CostMatrix() = default;
    CostMatrix(double cost0, double cost1) : c0(cost0), c1(cost1) {
        if (!std::isfinite(c0) || !std::isfinite(c1))
            throw std::invalid_argument("cost matrix: costs must be finite");
        if (c0 < 0.0 || c1 < 0.0) throw std::invalid_argument("cost matrix: costs must be nonnegative");
        if (c0 + c1 <= 0.0) throw std::invalid_argument("cost matrix: costs cannot both be zero");
    }

    friend bool operator==(const CostMatrix&, const CostMatrix&) = default;
};

/// Per-class error rates of a classifier.
struct OperatingPoint {
    double p10 = 0.0;
    double p01 = 0.0;

    OperatingPoint() = default;
    OperatingPoint(double fp_rate, double fn_rate) : p10(fp_rate), p01(fn_rate) {
        if (!(p10 >= 0.0 && p10 <= 1.0) || !(p01 >= 0.0 && p01 <= 1.0))
            throw std::invalid_argument("operating point: rates must lie in [0, 1]");
    }

    friend bool operator==(const OperatingPoint&, const OperatingPoint&) = default;
};

/// Nonempty ordered collection of cost matrices. Order is significant for
/// tie-breaking everywhere downstream.
class CostMatrixSet {
public:
    CostMatrixSet() = delete;
    explicit CostMatrixSet(std::vector<CostMatrix> matrices) : m_(std::move(matrices)) {
        if (m_.empty()) throw std::invalid_argument("cost matrix set: must be nonempty");
    }
    CostMatrixSet(std::initializer_list<CostMatrix> matrices)
        : CostMatrixSet(std::vector<CostMatrix>(matrices)) {}

    std::size_t size() const noexcept { return m_.size(); }
    const CostMatrix& operator[](std::size_t i) const { return m_[i]; }
    auto begin() const noexcept { return m_.begin(); }
    auto end() const noexcept { return m_.end(); }
    const std::vector<CostMatrix>& matrices() const noexcept { return m_; }

    friend bool operator==(const CostMatrixSet&, const CostMatrixSet&) = default;

private:
    std::vector<CostMatrix> m_;
};

inline ClassStats class_stats(std::span<const Label> labels) {
    std::size_t n1 = 0;
    for (auto y : labels) {
        if (y > 1) throw std::invalid_argument("class_stats: label not in {0, 1}");
        n1 += y;
    }
    return ClassStats::from_counts(labels.size() - n1, n1);
}

inline ClassStats class_stats(const LabeledDataset& dataset) { return class_stats(dataset.labels()); }

/// Error counts behind an operating point: false positives among class 0,
/// false negatives among class 1.
struct ErrorCounts {
    std::size_t fp = 0;
    std::size_t fn = 0;
};

inline OperatingPoint to_operating_point(const ErrorCounts& e, const ClassStats& stats) {
    return {static_cast<double>(e.fp) / static_cast<double>(stats.n0),
            static_cast<double>(e.fn) / static_cast<double>(stats.n1)};
}

inline OperatingPoint operating_point(std::span<const Label> predictions, std::span<const Label> labels) {
    if (predictions.size() != labels.size())
        throw std::invalid_argument("operating_point: prediction and label lengths differ");
    const auto stats = class_stats(labels);
    ErrorCounts e;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 0 && predictions[i] != 0) ++e.fp;
        if (labels[i] == 1 && predictions[i] == 0) ++e.fn;
    }
    return to_operating_point(e, stats);
}

/// L = n0 * p10 * c0 + n1 * p01 * c1.
inline double total_cost(const ClassStats& stats, const OperatingPoint& point, const CostMatrix& c) {
    return static_cast<double>(stats.n0) * point.p10 * c.c0 +
           static_cast<double>(stats.n1) * point.p01 * c.c1;
}

struct MaxCost {
    double value = 0.0;
    std::size_t index = 0;
};

/// Largest total cost over the set; the smallest index wins ties.
inline MaxCost max_total_cost(const ClassStats& stats, const OperatingPoint& point, const CostMatrixSet& u) {
    MaxCost best{total_cost(stats, point, u[0]), 0};
    for (std::size_t i = 1; i < u.size(); ++i) {
        const double v = total_cost(stats, point, u[i]);
        if (v > best.value) best = {v, i};
    }
    return best;
}

/// |a - b| <= rel * max(|a|, |b|, 1). Used for cost-value ties.
inline bool approx_equal(double a, double b, double rel = 1e-9) noexcept {
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1.0});
}

} // namespace mmcost
