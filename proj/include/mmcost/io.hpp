#pragma once

// File formats.
//
// Dataset CSV: a header row, then one row per instance. The label column
// (selected by name) holds 0 or 1; every other column must be numeric and
// becomes a feature, in file order.
//
// Cost-set document (JSON):
//   {"format_version": 1, "matrices": [{"c0": 1.0, "c1": 2.0}, ...]}
// A bare array of {c0, c1} objects is accepted on input.
//
// Model document (JSON):
//   {"format_version": 1, "kind": "stump_ensemble", "n_features": m,
//    "feature_names": [...], "label_encoding": {"positive": 1, "negative": 0},
//    "zero_score_label": 0,
//    "stumps": [{"kind": "threshold", "feature": j, "threshold": t, "polarity": 1},
//               {"kind": "constant", "output": -1}, ...],
//    "metadata": {...}}
// Prediction: score = sum of stump outputs; label 1 iff score > 0. A
// threshold stump outputs `polarity` when x[feature] >= threshold and
// -polarity otherwise.

#include "mmcost/framework.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

namespace mmcost {

inline constexpr int kFormatVersion = 1;

using json = nlohmann::json;

/// Parse failure with 1-based file line and column (0 when not applicable).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(what), line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

inline std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i)
        if (i == line.size() || line[i] == ',') {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    return out;
}

inline std::optional<double> parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

} // namespace detail

struct CsvTable {
    std::vector<std::string> header;
    std::vector<double> values;     // row-major
    std::vector<std::size_t> lines; // file line of each row
    std::size_t rows = 0;
};

inline CsvTable read_numeric_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    CsvTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        auto cells = detail::split_csv(line);
        if (t.header.empty()) {
            for (auto c : cells) t.header.emplace_back(c);
            continue;
        }
        if (cells.size() != t.header.size())
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(t.header.size()) +
                                 " cells, found " + std::to_string(cells.size()),
                             lineno);
        for (std::size_t j = 0; j < cells.size(); ++j) {
            auto v = detail::parse_double(cells[j]);
            if (!v || !std::isfinite(*v))
                throw ParseError(path + ":" + std::to_string(lineno) + ": non-numeric value '" +
                                     std::string(cells[j]) + "' in column '" + t.header[j] + "'",
                                 lineno, j + 1);
            t.values.push_back(*v);
        }
        t.lines.push_back(lineno);
        ++t.rows;
    }
    if (t.header.empty()) throw ParseError(path + ": missing header row");
    return t;
}

inline LabeledDataset load_csv(const std::string& path, const std::string& label_column) {
    auto t = read_numeric_csv(path);
    const auto it = std::find(t.header.begin(), t.header.end(), label_column);
    if (it == t.header.end()) throw ParseError(path + ": no label column '" + label_column + "'");
    const auto label_idx = static_cast<std::size_t>(it - t.header.begin());
    const std::size_t cols = t.header.size();

    std::vector<std::string> names;
    for (std::size_t j = 0; j < cols; ++j)
        if (j != label_idx) names.push_back(t.header[j]);
    std::vector<double> features;
    std::vector<Label> labels;
    features.reserve(t.rows * (cols - 1));
    for (std::size_t i = 0; i < t.rows; ++i) {
        const double y = t.values[i * cols + label_idx];
        if (y != 0.0 && y != 1.0)
            throw ParseError(path + ":" + std::to_string(t.lines[i]) + ": data row " + std::to_string(i + 1) +
                                 ": label " + json(y).dump() + " not in {0, 1}",
                             t.lines[i], label_idx + 1);
        labels.push_back(static_cast<Label>(y));
        for (std::size_t j = 0; j < cols; ++j)
            if (j != label_idx) features.push_back(t.values[i * cols + j]);
    }
    return LabeledDataset(std::move(features), cols - 1, std::move(labels), std::move(names));
}

// ---------------------------------------------------------------------------
// Cost sets

inline json cost_set_to_json(const CostMatrixSet& u) {
    json m = json::array();
    for (const auto& c : u) m.push_back({{"c0", c.c0}, {"c1", c.c1}});
    return {{"format_version", kFormatVersion}, {"matrices", m}};
}

inline CostMatrixSet cost_set_from_json(const json& doc) {
    const json* list = &doc;
    if (doc.is_object()) {
        if (doc.value("format_version", kFormatVersion) != kFormatVersion)
            throw ParseError("cost set: unsupported format_version");
        if (!doc.contains("matrices")) throw ParseError("cost set: missing 'matrices'");
        list = &doc.at("matrices");
    }
    if (!list->is_array()) throw ParseError("cost set: 'matrices' must be an array");
    std::vector<CostMatrix> m;
    try {
        for (const auto& e : *list) m.emplace_back(e.at("c0").get<double>(), e.at("c1").get<double>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("cost set: ") + e.what());
    }
    return CostMatrixSet(std::move(m));
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

inline CostMatrixSet load_cost_set(const std::string& path) { return cost_set_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Models

inline json stump_to_json(const DecisionStump& s) {
    if (const auto* c = s.as_constant()) return {{"kind", "constant"}, {"output", c->output}};
    const auto* t = s.as_threshold();
    return {{"kind", "threshold"}, {"feature", t->feature}, {"threshold", t->threshold}, {"polarity", t->polarity}};
}

inline DecisionStump stump_from_json(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "constant") return DecisionStump::constant(j.at("output").get<int>());
    if (kind == "threshold")
        return DecisionStump::threshold(j.at("feature").get<std::size_t>(), j.at("threshold").get<double>(),
                                        j.at("polarity").get<int>());
    throw ParseError("model: unknown stump kind '" + kind + "'");
}

inline json model_to_json(const StumpEnsemble& model, const std::vector<std::string>& feature_names = {},
                          json metadata = json::object()) {
    json stumps = json::array();
    for (const auto& s : model.stumps()) stumps.push_back(stump_to_json(s));
    return {{"format_version", kFormatVersion},
            {"kind", "stump_ensemble"},
            {"n_features", model.n_features()},
            {"feature_names", feature_names},
            {"label_encoding", {{"positive", 1}, {"negative", 0}}},
            {"zero_score_label", 0},
            {"stumps", stumps},
            {"metadata", std::move(metadata)}};
}

inline StumpEnsemble model_from_json(const json& doc) {
    try {
        if (doc.at("format_version").get<int>() != kFormatVersion) throw ParseError("model: unsupported format_version");
        if (doc.at("kind").get<std::string>() != "stump_ensemble") throw ParseError("model: not a stump ensemble");
        std::vector<DecisionStump> stumps;
        for (const auto& s : doc.at("stumps")) stumps.push_back(stump_from_json(s));
        return StumpEnsemble(std::move(stumps), doc.at("n_features").get<std::size_t>());
    } catch (const json::exception& e) {
        throw ParseError(std::string("model: ") + e.what());
    }
}

inline json candidate_metadata(const TrainedCandidate& c, Framework f, const CostMatrixSet& u) {
    json prov = {{"kind", c.provenance.str()}};
    if (c.provenance.kind != Provenance::Kind::direct) {
        prov["i"] = c.provenance.i;
        if (c.provenance.kind == Provenance::Kind::pair) prov["j"] = c.provenance.j;
    }
    return {{"framework", to_string(f)},
            {"provenance", prov},
            {"train_point", {{"p10", c.train_point.p10}, {"p01", c.train_point.p01}}},
            {"train_max_cost", c.train_max_cost},
            {"cost_set", cost_set_to_json(u)}};
}

} // namespace mmcost
