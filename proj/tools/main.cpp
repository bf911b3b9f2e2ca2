// bfpm: batch front end for the bounded fuzzy-possibilistic toolkit.
// Pipeline per command: ingest CSV -> min-max normalize -> run -> report.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bfpm/analysis.hpp"
#include "bfpm/classify.hpp"
#include "bfpm/clustering.hpp"
#include "bfpm/dataset.hpp"
#include "bfpm/distance.hpp"
#include "bfpm/errors.hpp"
#include "bfpm/membership.hpp"
#include "bfpm/report.hpp"

namespace {

using bfpm::json;

struct Options {
    std::string dataset_path;
    std::string algo = "bfpm";
    std::size_t c = 2;
    double m = 2.0;
    double epsilon = 1e-6;
    std::size_t max_iter = 300;
    std::uint64_t seed = 42;
    std::string distance_family = "lp";
    double p = 2.0;
    double r = 0.0; // only applied when the flag was given
    std::string weights;
    std::string priority_weights;
    double lambda = 2.0;
    double critical_epsilon = 0.0;
    std::string thresholds = "0.85,0.75,0.70";
    std::string label_column;
    std::string split_kind = "holdout";
    double ratio = 2.0 / 3.0;
    std::size_t k = 10;
    std::size_t t = 10;
    std::string format = "json";
    std::string output;
    bool harden_first = false;
    bool raw_exponent = false;
    bool hungarian = false;
    std::string m_values = "1.2,1.6,1.8,2.0";
    std::string weight_specs = "euclidean";
    std::string indices = "pc,pe,xb";
    double y = 1.0;
    std::string result_path;

    bool r_given = false;
    bool weights_given = false;
    bool lambda_given = false;
    bool critical_given = false;
    bool distance_given = false;

    std::optional<std::string> output_path() const {
        return output.empty() ? std::nullopt : std::optional<std::string>(output);
    }
    std::optional<std::string> label() const {
        return label_column.empty() ? std::nullopt
                                    : std::optional<std::string>(label_column);
    }
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// A numeric token: plain decimal, a/b fraction, or X/d where d is the
// feature count ("uniform:1/d" weights every feature by 1/d).
double parse_value_token(const std::string& token, std::size_t d) {
    auto parse_plain = [](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw bfpm::ConfigError("cannot parse numeric token '" + s + "'");
        }
    };
    const std::size_t slash = token.find('/');
    if (slash == std::string::npos) return parse_plain(token);
    const double num = parse_plain(token.substr(0, slash));
    const std::string den = token.substr(slash + 1);
    if (den == "d") return num / static_cast<double>(d);
    const double denominator = parse_plain(den);
    if (denominator == 0.0) throw bfpm::ConfigError("zero denominator in '" + token + "'");
    return num / denominator;
}

// "uniform:V" or an explicit comma list of d values.
std::vector<double> parse_weight_vector(const std::string& s, std::size_t d) {
    if (s.rfind("uniform:", 0) == 0)
        return std::vector<double>(d, parse_value_token(s.substr(8), d));
    std::vector<double> out;
    for (const std::string& token : split_list(s)) out.push_back(parse_value_token(token, d));
    if (out.size() != d)
        throw bfpm::ConfigError("expected " + std::to_string(d) + " weights, got " +
                                std::to_string(out.size()));
    return out;
}

bfpm::DistanceSpec build_distance(const Options& opt, std::size_t d) {
    bfpm::DistanceSpec spec;
    std::string family = opt.distance_family;
    // `--algo bfpm_wfd --weights ...` without an explicit family means wfd.
    if (!opt.distance_given && opt.algo == "bfpm_wfd") family = "wfd";
    if (family == "lp") spec.family = bfpm::DistanceSpec::Family::lp;
    else if (family == "wfd") spec.family = bfpm::DistanceSpec::Family::wfd;
    else if (family == "pwfd") spec.family = bfpm::DistanceSpec::Family::pwfd;
    else throw bfpm::ConfigError("unknown distance family '" + family + "'");

    spec.p = opt.p;
    if (opt.r_given) spec.r = opt.r;
    if (opt.weights_given) {
        if (spec.family == bfpm::DistanceSpec::Family::lp)
            throw bfpm::ConfigError("--weights requires --distance wfd or pwfd");
        spec.w = parse_weight_vector(opt.weights, d);
        spec.w_prime = spec.w;
    }
    if (!opt.priority_weights.empty())
        spec.w_priority = parse_weight_vector(opt.priority_weights, d);
    bfpm::check_spec(spec, d);
    return spec;
}

bfpm::ClusterConfig build_cluster_config(const Options& opt, std::size_t d) {
    bfpm::ClusterConfig cfg;
    cfg.algorithm = bfpm::algorithm_from_name(opt.algo);
    cfg.c = opt.c;
    cfg.m = opt.m;
    cfg.epsilon = opt.epsilon;
    cfg.max_iter = opt.max_iter;
    cfg.seed = opt.seed;
    cfg.raw_exponent = opt.raw_exponent;
    cfg.distance = build_distance(opt, d);
    return cfg;
}

bfpm::SplitPlan build_split_plan(const Options& opt) {
    bfpm::SplitPlan plan;
    if (opt.split_kind == "holdout") plan.kind = bfpm::SplitPlan::Kind::holdout;
    else if (opt.split_kind == "subsampling")
        plan.kind = bfpm::SplitPlan::Kind::subsampling;
    else if (opt.split_kind == "kfold") plan.kind = bfpm::SplitPlan::Kind::kfold;
    else if (opt.split_kind == "bootstrap") plan.kind = bfpm::SplitPlan::Kind::bootstrap;
    else throw bfpm::ConfigError("unknown split kind '" + opt.split_kind + "'");
    plan.ratio = opt.ratio;
    plan.k = opt.k;
    plan.t = opt.t;
    plan.seed = opt.seed;
    return plan;
}

// The summary line goes to stdout when the artifact goes to a file, and to
// stderr when the artifact itself occupies stdout.
void emit_summary(const Options& opt, const std::string& line) {
    if (opt.output_path())
        std::cout << line << "\n";
    else
        std::cerr << line << "\n";
}

int cmd_cluster(const Options& opt) {
    bfpm::Dataset ds = bfpm::normalize_min_max(
        bfpm::load_csv(opt.dataset_path, opt.label()));
    bfpm::ClusterConfig cfg = build_cluster_config(opt, ds.d());
    bfpm::ClusterResult res = bfpm::run_clustering(ds, cfg);

    std::optional<double> accuracy;
    if (ds.has_labels())
        accuracy = bfpm::clustering_accuracy(res.pm, ds.labels, opt.hungarian);

    if (opt.format == "json") {
        json doc = bfpm::to_json(res, cfg);
        if (accuracy) doc["accuracy"] = *accuracy;
        if (opt.lambda_given) {
            json dom = json::array();
            for (std::size_t j = 0; j < ds.n(); ++j) {
                bfpm::DominantReport rep =
                    bfpm::detect_dominant(ds.X.row_copy(j), opt.lambda);
                if (rep.any())
                    dom.push_back(json{{"object", j},
                                       {"features", rep.flagged()},
                                       {"mean", rep.mean},
                                       {"variance", rep.variance}});
            }
            doc["dominant"] = std::move(dom);
        }
        bfpm::write_output(opt.output_path(), doc.dump(2) + "\n");
    } else {
        std::string csv = bfpm::cluster_result_csv(res);
        if (opt.lambda_given) {
            for (std::size_t j = 0; j < ds.n(); ++j) {
                bfpm::DominantReport rep =
                    bfpm::detect_dominant(ds.X.row_copy(j), opt.lambda);
                if (rep.any()) {
                    csv += "# dominant: object " + std::to_string(j) + " features";
                    for (std::size_t f : rep.flagged()) csv += " " + std::to_string(f);
                    csv += "\n";
                }
            }
        }
        bfpm::write_output(opt.output_path(), csv);
    }

    std::string line = "cluster: iterations=" + std::to_string(res.iterations) +
                       " converged=" + (res.converged ? "true" : "false") +
                       " objective=" + bfpm::format_double(res.objective);
    if (accuracy) line += " accuracy=" + bfpm::format_double(*accuracy);
    emit_summary(opt, line);
    return 0;
}

int cmd_sweep(const Options& opt) {
    if (opt.label_column.empty())
        throw bfpm::ConfigError("sweep needs --label-column to score accuracy");
    bfpm::Dataset ds = bfpm::normalize_min_max(
        bfpm::load_csv(opt.dataset_path, opt.label()));

    const std::vector<std::string> m_tokens = split_list(opt.m_values);
    const std::vector<std::string> weight_tokens = split_list(opt.weight_specs);
    if (m_tokens.empty() || weight_tokens.empty())
        throw bfpm::ConfigError("sweep grid is empty");

    std::string table = "weights";
    for (const std::string& mt : m_tokens) table += ",m=" + mt;
    table += "\n";

    for (const std::string& wt : weight_tokens) {
        table += wt;
        for (const std::string& mt : m_tokens) {
            try {
                Options cell = opt;
                cell.m = parse_value_token(mt, ds.d());
                if (wt == "euclidean") {
                    cell.algo = "bfpm";
                    cell.weights_given = false;
                    cell.distance_family = "lp";
                    cell.distance_given = true;
                    cell.p = 2.0;
                } else {
                    cell.algo = "bfpm_wfd";
                    cell.weights = wt;
                    cell.weights_given = true;
                    cell.distance_family = "wfd";
                    cell.distance_given = true;
                }
                bfpm::ClusterConfig cfg = build_cluster_config(cell, ds.d());
                bfpm::ClusterResult res = bfpm::run_clustering(ds, cfg);
                const double acc =
                    bfpm::clustering_accuracy(res.pm, ds.labels, opt.hungarian);
                table += "," + bfpm::format_double(acc);
            } catch (const std::exception&) {
                table += ",ERR";
            }
        }
        table += "\n";
    }
    table += "# reference (published): iris m=2 euclidean 97.33, wfd uniform:1/2 "
             "100.00 (percent accuracy)\n";
    bfpm::write_output(opt.output_path(), table);
    emit_summary(opt, "sweep: " + std::to_string(weight_tokens.size()) + "x" +
                          std::to_string(m_tokens.size()) + " grid done");
    return 0;
}

int cmd_mutation(const Options& opt) {
    if (opt.c < 2) throw bfpm::ConfigError("mutation requires c >= 2");
    bfpm::Dataset ds = bfpm::normalize_min_max(
        bfpm::load_csv(opt.dataset_path, opt.label()));
    bfpm::ClusterConfig cfg = build_cluster_config(opt, ds.d());
    bfpm::ClusterResult res = bfpm::run_clustering(ds, cfg);

    bfpm::PartitionMatrix pm = opt.harden_first ? bfpm::harden(res.pm) : res.pm;

    std::vector<double> thresholds;
    for (const std::string& tok : split_list(opt.thresholds))
        thresholds.push_back(parse_value_token(tok, ds.d()));
    bfpm::MutationReport rep = bfpm::mutation_report(pm, thresholds);

    std::vector<bfpm::CriticalFlag> critical;
    if (opt.critical_given) critical = bfpm::detect_critical(pm, opt.critical_epsilon);

    if (opt.format == "json") {
        json doc = bfpm::to_json(rep);
        doc["config"] = bfpm::to_json(cfg);
        if (opt.critical_given) doc["critical"] = bfpm::to_json(critical);
        bfpm::write_output(opt.output_path(), doc.dump(2) + "\n");
    } else {
        bfpm::write_output(opt.output_path(),
                           bfpm::mutation_csv(rep, opt.critical_given ? &critical
                                                                      : nullptr));
    }

    json counts = json::array();
    for (const auto& [threshold, count] : rep.threshold_counts)
        counts.push_back(json{{"threshold", threshold}, {"count", count}});
    emit_summary(opt, "mutation: threshold_counts=" + counts.dump());
    return 0;
}

int cmd_validate(const Options& opt) {
    bfpm::Dataset ds = bfpm::normalize_min_max(
        bfpm::load_csv(opt.dataset_path, opt.label()));

    bfpm::PartitionMatrix pm;
    bfpm::Matrix centroids;
    bfpm::DistanceSpec spec = build_distance(opt, ds.d());
    if (!opt.result_path.empty()) {
        std::ifstream in(opt.result_path);
        if (!in) throw bfpm::Error("cannot open '" + opt.result_path + "'");
        json doc = json::parse(in, nullptr, true, true);
        bfpm::StoredResult stored = bfpm::stored_result_from_json(doc);
        pm = std::move(stored.pm);
        centroids = std::move(stored.centroids);
    } else {
        bfpm::ClusterConfig cfg = build_cluster_config(opt, ds.d());
        bfpm::ClusterResult res = bfpm::run_clustering(ds, cfg);
        pm = std::move(res.pm);
        centroids = std::move(res.centroids);
    }
    if (pm.n() != ds.n())
        throw bfpm::Error("stored partition does not match the dataset size");
    if (opt.harden_first) pm = bfpm::harden(pm);

    std::vector<std::string> wanted = split_list(opt.indices);
    if (wanted.size() == 1 && wanted[0] == "all")
        wanted = {"pc", "pe", "xb", "db", "cs", "g", "ig"};

    json cells = json::object();
    std::string csv = "index,value\n";
    auto emit = [&](const std::string& name, auto&& compute) {
        try {
            const double v = compute();
            cells["v_" + name] = v;
            csv += "v_" + name + "," + bfpm::format_double(v) + "\n";
        } catch (const std::exception& e) {
            cells["v_" + name] = json{{"error", e.what()}};
            csv += "v_" + name + ",ERR: " + e.what() + "\n";
        }
    };
    for (const std::string& name : wanted) {
        if (name == "pc") emit(name, [&] { return bfpm::v_pc(pm); });
        else if (name == "pe") emit(name, [&] { return bfpm::v_pe(pm); });
        else if (name == "xb") emit(name, [&] { return bfpm::v_xb(pm, ds, centroids); });
        else if (name == "db")
            emit(name, [&] { return bfpm::db_index(pm, ds, centroids); });
        else if (name == "cs")
            emit(name, [&] { return bfpm::cs_index(pm, ds, centroids); });
        else if (name == "g") emit(name, [&] { return bfpm::g_index(pm, ds, spec); });
        else if (name == "ig")
            emit(name, [&] { return bfpm::ig_index(pm, ds, opt.y, spec); });
        else throw bfpm::ConfigError("unknown index '" + name + "'");
    }

    if (opt.format == "json")
        bfpm::write_output(opt.output_path(), cells.dump(2) + "\n");
    else
        bfpm::write_output(opt.output_path(), csv);
    emit_summary(opt, "validate: " + std::to_string(wanted.size()) + " indices");
    return 0;
}

int cmd_split(const Options& opt) {
    bfpm::Dataset ds = bfpm::load_csv(opt.dataset_path, opt.label());
    bfpm::SplitIndices s = bfpm::make_splits(ds.n(), build_split_plan(opt));
    if (opt.format == "json")
        bfpm::write_output(opt.output_path(), bfpm::to_json(s).dump(2) + "\n");
    else
        bfpm::write_output(opt.output_path(), bfpm::split_csv(s));
    emit_summary(opt, "split: rounds=" + std::to_string(s.rounds()));
    return 0;
}

int cmd_classify(const Options& opt) {
    if (opt.label_column.empty())
        throw bfpm::ConfigError("classify requires --label-column");
    bfpm::Dataset ds = bfpm::normalize_min_max(
        bfpm::load_csv(opt.dataset_path, opt.label()));

    std::vector<double> feature_weights;
    if (opt.weights_given) feature_weights = parse_weight_vector(opt.weights, ds.d());

    bfpm::SplitIndices splits = bfpm::make_splits(ds.n(), build_split_plan(opt));

    json rounds = json::array();
    std::string csv = "round,test_index,truth,predicted\n";
    std::vector<double> accuracies;
    for (std::size_t i = 0; i < splits.rounds(); ++i) {
        if (splits.test[i].empty()) {
            rounds.push_back(json{{"round", i}, {"note", "no test objects"}});
            csv += "# round " + std::to_string(i) + ": no test objects\n";
            continue;
        }
        bfpm::ClassifierModel model =
            bfpm::make_classifier(bfpm::subset(ds, splits.train[i]), feature_weights);
        bfpm::Dataset test = bfpm::subset(ds, splits.test[i]);
        bfpm::ClassifyResult cr = bfpm::bfpcm_classify(model, test);

        std::size_t hits = 0;
        std::vector<double> truth_vals, pred_vals;
        for (std::size_t j = 0; j < test.n(); ++j) {
            if (cr.predicted[j] == test.labels[j]) ++hits;
            truth_vals.push_back(static_cast<double>(test.labels[j]));
            pred_vals.push_back(static_cast<double>(cr.predicted[j]));
            csv += std::to_string(i) + "," + std::to_string(splits.test[i][j]) + "," +
                   std::to_string(test.labels[j]) + "," +
                   std::to_string(cr.predicted[j]) + "\n";
        }
        const double acc = static_cast<double>(hits) / static_cast<double>(test.n());
        accuracies.push_back(acc);

        json per_class = json::array();
        for (std::size_t cls = 0; cls < ds.num_classes(); ++cls) {
            bfpm::ConfusionMatrix cm =
                bfpm::confusion(cr.predicted, test.labels, static_cast<int>(cls));
            per_class.push_back(json{{"class", ds.label_names[cls]},
                                     {"confusion", bfpm::to_json(cm)},
                                     {"metrics", bfpm::to_json(bfpm::metrics(cm))}});
        }
        rounds.push_back(json{
            {"round", i},
            {"test_indices", splits.test[i]},
            {"predicted", cr.predicted},
            {"truth", test.labels},
            {"accuracy", acc},
            {"per_class", std::move(per_class)},
            {"error_measures", bfpm::to_json(bfpm::error_measures(truth_vals, pred_vals))}});
    }

    json doc{{"rounds", std::move(rounds)}};
    if (!accuracies.empty()) {
        double mean = 0.0;
        for (double a : accuracies) mean += a;
        mean /= static_cast<double>(accuracies.size());
        doc["mean_accuracy"] = mean;
        csv += "# mean_accuracy " + bfpm::format_double(mean) + "\n";
        emit_summary(opt, "classify: rounds=" + std::to_string(accuracies.size()) +
                              " mean_accuracy=" + bfpm::format_double(mean));
    } else {
        emit_summary(opt, "classify: no test objects in any round");
    }

    if (opt.format == "json")
        bfpm::write_output(opt.output_path(), doc.dump(2) + "\n");
    else
        bfpm::write_output(opt.output_path(), csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"bounded fuzzy-possibilistic clustering and classification"};
    app.fallthrough(true); // subcommand-position flags resolve against these
    app.set_config("--config", "", "flat key=value configuration file");

    app.add_option("dataset", opt.dataset_path, "input CSV (header row required)");
    app.add_option("--algo", opt.algo, "fpm|fpm1|fpm2|bfpm|bfpm_wfd")
        ->check(CLI::IsMember({"fpm", "fpm1", "fpm2", "bfpm", "bfpm_wfd"}));
    app.add_option("--c", opt.c, "number of clusters");
    app.add_option("--m", opt.m, "fuzzification constant (> 1)");
    app.add_option("--epsilon", opt.epsilon, "squared-displacement stop threshold");
    app.add_option("--max-iter", opt.max_iter, "iteration cap");
    auto* seed_opt = app.add_option("--seed", opt.seed, "seed for all randomness");
    auto* dist_opt = app.add_option("--distance", opt.distance_family, "lp|wfd|pwfd")
                         ->check(CLI::IsMember({"lp", "wfd", "pwfd"}));
    app.add_option("--p", opt.p, "norm exponent (>= 1)");
    auto* r_opt = app.add_option("--r", opt.r, "outer root exponent (defaults to p)");
    auto* w_opt = app.add_option("--weights", opt.weights,
                                 "feature weights: list or uniform:VALUE");
    app.add_option("--priority-weights", opt.priority_weights,
                   "pwfd priority divisors: list or uniform:VALUE");
    auto* lambda_opt =
        app.add_option("--lambda", opt.lambda, "dominant-feature sensitivity");
    auto* crit_opt = app.add_option("--critical-epsilon", opt.critical_epsilon,
                                    "closeness bound for critical objects");
    app.add_option("--thresholds", opt.thresholds, "mutation thresholds");
    app.add_option("--label-column", opt.label_column, "class column name");
    app.add_option("--split", opt.split_kind, "holdout|subsampling|kfold|bootstrap")
        ->check(CLI::IsMember({"holdout", "subsampling", "kfold", "bootstrap"}));
    app.add_option("--ratio", opt.ratio, "train fraction for holdout/subsampling");
    app.add_option("--k", opt.k, "fold count");
    app.add_option("--t", opt.t, "subsampling repetitions");
    app.add_option("--format", opt.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", opt.output, "output path (default: stdout)");
    app.add_flag("--harden-first", opt.harden_first,
                 "harden memberships before analysis");
    app.add_flag("--raw-exponent", opt.raw_exponent,
                 "membership sum with +1/m exponent (saturates at 1)");
    app.add_flag("--hungarian", opt.hungarian,
                 "optimal cluster-class assignment instead of majority vote");
    app.add_option("--m-values", opt.m_values, "sweep: comma list of m values");
    app.add_option("--weight-specs", opt.weight_specs,
                   "sweep: comma list of euclidean|uniform:VALUE");
    app.add_option("--indices", opt.indices, "validate: pc,pe,xb,db,cs,g,ig or all");
    app.add_option("--y", opt.y, "exponent for the normalized G index");
    app.add_option("--result", opt.result_path, "validate: stored cluster JSON");

    app.require_subcommand(1);
    CLI::App* sub_cluster = app.add_subcommand("cluster", "soft-cluster a dataset");
    CLI::App* sub_classify = app.add_subcommand("classify", "split, train, predict");
    CLI::App* sub_validate = app.add_subcommand("validate", "validity indices");
    CLI::App* sub_mutation =
        app.add_subcommand("mutation", "membership movement analysis");
    CLI::App* sub_split = app.add_subcommand("split", "emit resampling index sets");
    CLI::App* sub_sweep = app.add_subcommand("sweep", "accuracy grid over m x weights");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the diagnostic
        return 2;
    }

    opt.r_given = r_opt->count() > 0;
    opt.weights_given = w_opt->count() > 0;
    opt.lambda_given = lambda_opt->count() > 0;
    opt.critical_given = crit_opt->count() > 0;
    opt.distance_given = dist_opt->count() > 0;

    // BFPM_SEED replaces the built-in default; explicit --seed/config wins.
    if (seed_opt->count() == 0) {
        if (const char* env = std::getenv("BFPM_SEED")) {
            try {
                opt.seed = std::stoull(env);
            } catch (const std::exception&) {
                std::cerr << "error: BFPM_SEED is not an unsigned integer\n";
                return 2;
            }
        }
    }

    try {
        if (opt.dataset_path.empty())
            throw bfpm::ConfigError("a dataset path is required");
        if (sub_cluster->parsed()) return cmd_cluster(opt);
        if (sub_classify->parsed()) return cmd_classify(opt);
        if (sub_validate->parsed()) return cmd_validate(opt);
        if (sub_mutation->parsed()) return cmd_mutation(opt);
        if (sub_split->parsed()) return cmd_split(opt);
        if (sub_sweep->parsed()) return cmd_sweep(opt);
        throw bfpm::ConfigError("no command selected");
    } catch (const bfpm::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
