#pragma once

// Repeated stratified cross-validation comparing the S, SP and M frameworks.
//
// Within a fold every framework is trained on the same split and scored by
// its largest total cost over the full, unfiltered cost set, on the training
// split and on the held-out split. Fold assignments come from a per-repeat
// random stream derived from the master seed, so the set of frameworks run
// does not change the splits.

#include "mmcost/io.hpp"
#include "mmcost/stats.hpp"

#include <map>
#include <variant>

namespace mmcost {

struct FoldSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Each class is shuffled and cut into `folds` contiguous parts whose sizes
/// differ by at most one; fold f tests on part f of every class.
inline std::vector<FoldSplit> stratified_folds(std::span<const Label> labels, std::size_t folds, Rng& rng) {
    if (folds < 2) throw std::invalid_argument("stratified_folds: need at least 2 folds");
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i] ? 1 : 0].push_back(i);
    for (const auto& members : by_class)
        if (members.size() < folds)
            throw std::invalid_argument("stratified_folds: " + std::to_string(folds) + " folds exceed a class of " +
                                        std::to_string(members.size()) + " instances");

    std::vector<std::size_t> fold_of(labels.size());
    for (auto& members : by_class) {
        shuffle(members, rng);
        const std::size_t base = members.size() / folds, extra = members.size() % folds;
        std::size_t pos = 0;
        for (std::size_t f = 0; f < folds; ++f)
            for (std::size_t k = 0; k < base + (f < extra ? 1 : 0); ++k) fold_of[members[pos++]] = f;
    }
    std::vector<FoldSplit> out(folds);
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t f = 0; f < folds; ++f) (fold_of[i] == f ? out[f].test : out[f].train).push_back(i);
    return out;
}

inline std::vector<FoldSplit> stratified_folds(const LabeledDataset& data, std::size_t folds, std::uint64_t seed) {
    auto rng = make_stream(seed, "folds");
    return stratified_folds(data.labels(), folds, rng);
}

struct RandomCosts {
    std::size_t k = 3;
    double lo = 0.0;
    double hi = 10.0;
};

/// Either a cost-set document path or a random draw.
using CostSource = std::variant<std::string, RandomCosts>;

/// "random:k" or a path to a cost-set document.
inline CostSource parse_cost_source(const std::string& source) {
    constexpr std::string_view prefix = "random:";
    if (source.rfind(prefix, 0) == 0) {
        const auto rest = std::string_view(source).substr(prefix.size());
        std::size_t k = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), k);
        if (ec != std::errc() || ptr != rest.data() + rest.size() || k < 1)
            throw std::invalid_argument("cost source: expected random:<k> with k >= 1, got '" + source + "'");
        return RandomCosts{k};
    }
    return source;
}

inline CostMatrixSet resolve_costs(const CostSource& source, std::uint64_t master_seed) {
    if (const auto* path = std::get_if<std::string>(&source)) return load_cost_set(*path);
    const auto& r = std::get<RandomCosts>(source);
    auto rng = make_stream(master_seed, "costs");
    return sample_cost_set(r.k, r.lo, r.hi, rng);
}

struct BenchmarkConfig {
    std::string dataset_path;
    std::string label_column = "label";
    std::string dataset_name; // defaults to the file stem
    CostSource costs = RandomCosts{};
    std::vector<Framework> frameworks{Framework::S, Framework::SP, Framework::M};
    std::size_t repeats = 20;
    std::size_t folds = 5;
    FrameworkConfig learner;
    double alpha = 0.05;
    std::uint64_t seed = 0;
};

struct FoldResult {
    std::size_t repeat = 0;
    std::size_t fold = 0;
    Framework framework = Framework::SP;
    double train_max_cost = 0.0;
    double test_max_cost = 0.0;
    Provenance provenance;
};

struct FrameworkSummary {
    Framework framework;
    double mean_train = 0.0;
    double mean_test = 0.0;
    bool best_train = false;
    bool best_test = false;
};

enum class Split { train, test };

inline std::string to_string(Split s) { return s == Split::train ? "train" : "test"; }

/// SP against one baseline framework on one split.
struct Comparison {
    Framework baseline;
    Split split;
    WilcoxonResult test;
    Mark mark = Mark::none;
};

struct BenchmarkReport {
    std::string dataset;
    ClassStats stats;
    std::size_t n_features = 0;
    CostMatrixSet costs{CostMatrix{}};
    BenchmarkConfig config;
    std::vector<FoldResult> folds;
    std::vector<FrameworkSummary> summary;
    std::vector<Comparison> comparisons;
    bool superset_checked = false;   // SP <= S on training was asserted per fold
    std::size_t superset_violations = 0;

    const FrameworkSummary* find(Framework f) const {
        for (const auto& s : summary)
            if (s.framework == f) return &s;
        return nullptr;
    }
};

namespace detail {

inline double mean_of(const std::vector<FoldResult>& rows, Framework f, Split s) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : rows)
        if (r.framework == f) {
            sum += s == Split::train ? r.train_max_cost : r.test_max_cost;
            ++n;
        }
    return n ? sum / static_cast<double>(n) : 0.0;
}

inline std::vector<double> column(const std::vector<FoldResult>& rows, Framework f, Split s) {
    std::vector<double> out;
    for (const auto& r : rows)
        if (r.framework == f) out.push_back(s == Split::train ? r.train_max_cost : r.test_max_cost);
    return out;
}

inline bool contains(const std::vector<Framework>& v, Framework f) {
    return std::find(v.begin(), v.end(), f) != v.end();
}

} // namespace detail

/// The S candidates are a subset of SP's whenever the set has no dominated
/// matrices and is not a pair (a pair is trained jointly, without singles).
inline bool superset_premise(const CostMatrixSet& u) { return pairwise_nondominated(u) && u.size() != 2; }

inline BenchmarkReport run_benchmark(const LabeledDataset& data, const CostMatrixSet& u, const BenchmarkConfig& cfg) {
    if (cfg.repeats < 1) throw std::invalid_argument("benchmark: repeats must be >= 1");
    if (cfg.folds < 2) throw std::invalid_argument("benchmark: folds must be >= 2");
    if (cfg.frameworks.empty()) throw std::invalid_argument("benchmark: no frameworks requested");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw std::invalid_argument("benchmark: alpha must be in (0, 1)");

    std::vector<Framework> frameworks;
    for (auto f : {Framework::S, Framework::SP, Framework::M})
        if (detail::contains(cfg.frameworks, f)) frameworks.push_back(f);

    BenchmarkReport report;
    report.dataset = cfg.dataset_name;
    report.stats = class_stats(data);
    report.n_features = data.n_features();
    report.costs = u;
    report.config = cfg;
    report.superset_checked = detail::contains(frameworks, Framework::S) &&
                              detail::contains(frameworks, Framework::SP) && superset_premise(u);

    for (std::size_t r = 0; r < cfg.repeats; ++r) {
        auto rng = make_stream(cfg.seed, "folds", r);
        const auto splits = stratified_folds(data.labels(), cfg.folds, rng);
        for (std::size_t f = 0; f < splits.size(); ++f) {
            const auto train = data.subset(splits[f].train);
            const auto test = data.subset(splits[f].test);
            const auto test_stats = class_stats(test);
            std::map<Framework, double> train_cost;
            for (auto fw : frameworks) {
                TrainedCandidate cand = [&] {
                    try {
                        return solve(fw, train, u, cfg.learner);
                    } catch (const std::exception& e) {
                        throw std::runtime_error("benchmark: repeat " + std::to_string(r) + " fold " +
                                                 std::to_string(f) + " framework " + to_string(fw) + ": " + e.what());
                    }
                }();
                const auto test_point = operating_point(cand.model.predict(test), test.labels());
                FoldResult row{r, f, fw, max_total_cost(class_stats(train), cand.train_point, u).value,
                               max_total_cost(test_stats, test_point, u).value, cand.provenance};
                train_cost[fw] = row.train_max_cost;
                report.folds.push_back(row);
            }
            if (train_cost.count(Framework::S) && train_cost.count(Framework::SP) &&
                train_cost[Framework::SP] > train_cost[Framework::S] + 1e-9) {
                if (report.superset_checked)
                    throw std::logic_error("benchmark: SP training cost exceeds S on repeat " + std::to_string(r) +
                                           " fold " + std::to_string(f));
                ++report.superset_violations;
            }
        }
    }

    for (auto fw : frameworks)
        report.summary.push_back({fw, detail::mean_of(report.folds, fw, Split::train),
                                  detail::mean_of(report.folds, fw, Split::test)});
    for (auto split : {Split::train, Split::test}) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : report.summary) best = std::min(best, split == Split::train ? s.mean_train : s.mean_test);
        for (auto& s : report.summary) {
            const double v = split == Split::train ? s.mean_train : s.mean_test;
            (split == Split::train ? s.best_train : s.best_test) = approx_equal(v, best);
        }
    }

    if (detail::contains(frameworks, Framework::SP))
        for (auto baseline : {Framework::S, Framework::M}) {
            if (!detail::contains(frameworks, baseline)) continue;
            for (auto split : {Split::train, Split::test}) {
                const auto sp = detail::column(report.folds, Framework::SP, split);
                const auto other = detail::column(report.folds, baseline, split);
                Comparison c{baseline, split, wilcoxon_signed_rank(sp, other)};
                c.mark = significance_mark(c.test, detail::mean_of(report.folds, Framework::SP, split),
                                           detail::mean_of(report.folds, baseline, split), cfg.alpha);
                report.comparisons.push_back(c);
            }
        }
    return report;
}

inline std::string file_stem(const std::string& path) {
    auto slash = path.find_last_of("/\\");
    auto name = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = name.find_last_of('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

inline BenchmarkReport run_benchmark(BenchmarkConfig cfg) {
    const auto data = load_csv(cfg.dataset_path, cfg.label_column);
    if (cfg.dataset_name.empty()) cfg.dataset_name = file_stem(cfg.dataset_path);
    const auto u = resolve_costs(cfg.costs, cfg.seed);
    return run_benchmark(data, u, cfg);
}

inline int mark_value(Mark m) { return static_cast<int>(m); }

inline json report_to_json(const BenchmarkReport& rep) {
    const auto& cfg = rep.config;
    json frameworks = json::array();
    for (auto f : cfg.frameworks) frameworks.push_back(to_string(f));
    json cost_source;
    if (const auto* p = std::get_if<std::string>(&cfg.costs)) cost_source = {{"file", *p}};
    else {
        const auto& r = std::get<RandomCosts>(cfg.costs);
        cost_source = {{"random_k", r.k}, {"lo", r.lo}, {"hi", r.hi}};
    }
    json config = {{"dataset_path", cfg.dataset_path},
                   {"label_column", cfg.label_column},
                   {"costs", cost_source},
                   {"frameworks", frameworks},
                   {"repeats", cfg.repeats},
                   {"folds", cfg.folds},
                   {"max_iters", cfg.learner.max_iters},
                   {"min_improvement", cfg.learner.min_improvement},
                   {"alpha", cfg.alpha},
                   {"seed", cfg.seed}};

    json summary = json::array();
    for (const auto& s : rep.summary)
        summary.push_back({{"framework", to_string(s.framework)},
                           {"mean_train_max_cost", s.mean_train},
                           {"mean_test_max_cost", s.mean_test},
                           {"best_train", s.best_train},
                           {"best_test", s.best_test}});
    json comparisons = json::array();
    for (const auto& c : rep.comparisons)
        comparisons.push_back({{"method", "SP"},
                               {"baseline", to_string(c.baseline)},
                               {"split", to_string(c.split)},
                               {"w_plus", c.test.w_plus},
                               {"n_effective", c.test.n_effective},
                               {"p_two_sided", c.test.p_two_sided},
                               {"exact", c.test.exact},
                               {"mark", mark_value(c.mark)}});
    json folds = json::array();
    for (const auto& f : rep.folds)
        folds.push_back({{"repeat", f.repeat},
                         {"fold", f.fold},
                         {"framework", to_string(f.framework)},
                         {"train_max_cost", f.train_max_cost},
                         {"test_max_cost", f.test_max_cost},
                         {"provenance", f.provenance.str()}});
    return {{"format_version", kFormatVersion},
            {"kind", "benchmark_report"},
            {"dataset", rep.dataset},
            {"class_counts", {{"n", rep.stats.n}, {"n0", rep.stats.n0}, {"n1", rep.stats.n1}}},
            {"n_features", rep.n_features},
            {"config", config},
            {"cost_set", cost_set_to_json(rep.costs)},
            {"summary", summary},
            {"comparisons", comparisons},
            {"superset_checked", rep.superset_checked},
            {"superset_violations", rep.superset_violations},
            {"folds", folds}};
}

/// One row per (framework, split). The mark column holds 1 / -1 for a
/// significant SP win / loss against that row's framework and is empty
/// otherwise (always empty on SP rows). `best` flags the lowest mean.
inline std::string report_to_csv(const BenchmarkReport& rep) {
    std::ostringstream out;
    out << "format_version,dataset,k,framework,split,mean_max_cost,mark,p_value,best\n";
    for (auto split : {Split::train, Split::test})
        for (const auto& s : rep.summary) {
            std::string mark, p;
            for (const auto& c : rep.comparisons)
                if (c.baseline == s.framework && c.split == split) {
                    if (c.mark != Mark::none) mark = std::to_string(mark_value(c.mark));
                    p = json(c.test.p_two_sided).dump();
                }
            out << kFormatVersion << ',' << rep.dataset << ',' << rep.costs.size() << ',' << to_string(s.framework)
                << ',' << to_string(split) << ','
                << json(split == Split::train ? s.mean_train : s.mean_test).dump() << ',' << mark << ',' << p << ','
                << ((split == Split::train ? s.best_train : s.best_test) ? "true" : "false") << '\n';
        }
    return out.str();
}

} // namespace mmcost
