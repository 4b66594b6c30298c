// mmcost: train, apply and benchmark minimax cost-sensitive stump ensembles,
// and run the randomized front-geometry checks.
//
// Exit codes: 0 success, 1 failure (verification counterexample, bad data
// or I/O error), 2 usage error.

#include "mmcost/mmcost.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace mmcost;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<Framework> parse_frameworks(const std::string& list) {
    std::vector<Framework> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        auto end = list.find(',', start);
        if (end == std::string::npos) end = list.size();
        if (end > start) out.push_back(parse_framework(list.substr(start, end - start)));
        start = end + 1;
    }
    if (out.empty()) throw UsageError("no frameworks given");
    return out;
}

std::string replace_extension(const std::string& path, const std::string& ext) {
    const auto slash = path.find_last_of("/\\");
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ext;
    return path.substr(0, dot) + ext;
}

struct TrainArgs {
    std::string data, label_col = "label", costs, framework = "sp", model_out;
    std::size_t iters = 50;
    std::uint64_t seed = 0;
};

int run_train(const TrainArgs& a) {
    const auto data = load_csv(a.data, a.label_col);
    const auto u = resolve_costs(parse_cost_source(a.costs), a.seed);
    const auto fw = parse_framework(a.framework);
    FrameworkConfig cfg;
    cfg.max_iters = a.iters;
    const auto cand = solve(fw, data, u, cfg);
    const auto doc = model_to_json(cand.model, data.feature_names(), candidate_metadata(cand, fw, u));
    if (a.model_out.empty()) std::cout << doc.dump(2) << '\n';
    else write_text_file(a.model_out, doc.dump(2) + "\n");
    std::cerr << to_string(fw) << ": " << cand.model.size() << " stumps, provenance " << cand.provenance.str()
              << ", train p10=" << cand.train_point.p10 << " p01=" << cand.train_point.p01
              << ", train max cost " << cand.train_max_cost << '\n';
    return 0;
}

struct PredictArgs {
    std::string model, data, out, label_col;
};

int run_predict(const PredictArgs& a) {
    const auto model = model_from_json(read_json_file(a.model));
    const auto table = read_numeric_csv(a.data);
    const std::size_t cols = table.header.size();
    std::size_t label_idx = cols;
    if (!a.label_col.empty()) {
        auto it = std::find(table.header.begin(), table.header.end(), a.label_col);
        if (it == table.header.end()) throw ParseError(a.data + ": no label column '" + a.label_col + "'");
        label_idx = static_cast<std::size_t>(it - table.header.begin());
    }
    const std::size_t m = label_idx < cols ? cols - 1 : cols;
    if (m != model.n_features())
        throw std::invalid_argument("predict: data has " + std::to_string(m) + " feature columns, model expects " +
                                    std::to_string(model.n_features()));

    std::vector<double> x(m);
    std::vector<Label> predictions, labels;
    std::ostringstream out;
    out << "score,prediction\n";
    for (std::size_t i = 0; i < table.rows; ++i) {
        std::size_t k = 0;
        for (std::size_t j = 0; j < cols; ++j)
            if (j != label_idx) x[k++] = table.values[i * cols + j];
        const double s = model.score(x);
        predictions.push_back(label_from_score(s));
        out << static_cast<int>(s) << ',' << int(predictions.back()) << '\n';
        if (label_idx < cols) labels.push_back(static_cast<Label>(table.values[i * cols + label_idx] != 0.0));
    }
    if (a.out.empty()) std::cout << out.str();
    else write_text_file(a.out, out.str());
    if (!labels.empty()) {
        const auto p = operating_point(predictions, labels);
        std::cerr << "p10=" << p.p10 << " p01=" << p.p01 << '\n';
    }
    return 0;
}

struct BenchArgs {
    std::string data, label_col = "label", costs = "random:3", frameworks = "s,sp,m", out, table, name;
    std::size_t repeats = 20, folds = 5, iters = 50;
    double min_improvement = 1e-9, alpha = 0.05;
    std::uint64_t seed = 0;
};

int run_bench(const BenchArgs& a) {
    BenchmarkConfig cfg;
    cfg.dataset_path = a.data;
    cfg.label_column = a.label_col;
    cfg.dataset_name = a.name;
    cfg.costs = parse_cost_source(a.costs);
    cfg.frameworks = parse_frameworks(a.frameworks);
    cfg.repeats = a.repeats;
    cfg.folds = a.folds;
    cfg.learner.max_iters = a.iters;
    cfg.learner.min_improvement = a.min_improvement;
    cfg.alpha = a.alpha;
    cfg.seed = a.seed;
    const auto rep = run_benchmark(cfg);
    const auto csv = report_to_csv(rep);
    if (!a.out.empty()) {
        write_text_file(a.out, report_to_json(rep).dump(2) + "\n");
        write_text_file(a.table.empty() ? replace_extension(a.out, ".csv") : a.table, csv);
    } else if (!a.table.empty()) {
        write_text_file(a.table, csv);
    }
    std::cout << csv;
    return 0;
}

struct VerifyArgs {
    std::string suite;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
};

int run_verify(const VerifyArgs& a) {
    if (a.trials < 1) throw UsageError("--trials must be >= 1");
    const auto rep = verify_theory(parse_suite(a.suite), a.trials, a.seed);
    std::cout << to_string(rep.suite) << ": " << rep.passed << "/" << rep.trials << " passed\n";
    if (!rep.ok()) {
        std::cout << "counterexample: " << rep.counterexample << '\n';
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimax cost-sensitive classification over a set of cost matrices"};
    app.require_subcommand(1);

    TrainArgs ta;
    auto* train = app.add_subcommand("train", "Fit a model with the S, SP or M framework");
    train->add_option("--data", ta.data, "CSV dataset with a header row")->required();
    train->add_option("--label-col", ta.label_col, "Name of the 0/1 label column")->capture_default_str();
    train->add_option("--costs", ta.costs, "Cost-set JSON file, or random:<k>")->required();
    train->add_option("--framework", ta.framework, "s, sp or m")->capture_default_str();
    train->add_option("--iters", ta.iters, "Maximum stumps per model")->capture_default_str()->check(CLI::PositiveNumber);
    train->add_option("--seed", ta.seed, "Seed for random cost sets")->capture_default_str();
    train->add_option("--model-out", ta.model_out, "Model JSON output (stdout if omitted)");

    PredictArgs pa;
    auto* predict = app.add_subcommand("predict", "Apply a model to a CSV dataset");
    predict->add_option("--model", pa.model, "Model JSON")->required();
    predict->add_option("--data", pa.data, "CSV dataset with a header row")->required();
    predict->add_option("--label-col", pa.label_col, "Label column to ignore (and score against)");
    predict->add_option("--out", pa.out, "Prediction CSV output (stdout if omitted)");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Repeated stratified cross-validation of S, SP and M");
    bench->add_option("--data", ba.data, "CSV dataset with a header row")->required();
    bench->add_option("--label-col", ba.label_col, "Name of the 0/1 label column")->capture_default_str();
    bench->add_option("--name", ba.name, "Dataset name in reports (default: file stem)");
    bench->add_option("--costs", ba.costs, "Cost-set JSON file, or random:<k>")->capture_default_str();
    bench->add_option("--frameworks", ba.frameworks, "Comma-separated subset of s,sp,m")->capture_default_str();
    bench->add_option("--repeats", ba.repeats, "Cross-validation repeats")->capture_default_str()->check(CLI::PositiveNumber);
    bench->add_option("--folds", ba.folds, "Folds per repeat")->capture_default_str()->check(CLI::Range(2, 1 << 20));
    bench->add_option("--iters", ba.iters, "Maximum stumps per model")->capture_default_str()->check(CLI::PositiveNumber);
    bench->add_option("--min-improvement", ba.min_improvement, "Smallest accepted objective decrease")
        ->capture_default_str()->check(CLI::NonNegativeNumber);
    bench->add_option("--alpha", ba.alpha, "Significance level")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    bench->add_option("--seed", ba.seed, "Master seed")->capture_default_str();
    bench->add_option("--out", ba.out, "Full JSON report path; the CSV table goes next to it");
    bench->add_option("--table", ba.table, "CSV table path");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Randomized checks of the front geometry");
    verify->add_option("--suite", va.suite, "lemma1, lemma2, corollary or dominance")->required();
    verify->add_option("--trials", va.trials, "Number of random instances")->capture_default_str();
    verify->add_option("--seed", va.seed, "Seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*train) return run_train(ta);
        if (*predict) return run_predict(pa);
        if (*bench) return run_bench(ba);
        if (*verify) return run_verify(va);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
