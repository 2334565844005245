// Command-line front end: ingest, featurize, train, eval, bench, report.
// Every artifact-producing command writes a <artifact>.manifest.json capturing
// the exact invocation and input hashes, enough to replay the run.

#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wsdbench/baselines.hpp"
#include "wsdbench/corpus.hpp"
#include "wsdbench/dbn.hpp"
#include "wsdbench/error.hpp"
#include "wsdbench/eval.hpp"
#include "wsdbench/features.hpp"
#include "wsdbench/model_io.hpp"
#include "wsdbench/report.hpp"
#include "wsdbench/rng.hpp"
#include "wsdbench/version.hpp"

namespace {

using json = nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw wsd::Error("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string iso_utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Replay record written next to every artifact.
void write_manifest(const std::string& artifact_path, const std::string& command,
                    const std::vector<std::string>& argv, uint64_t seed,
                    const std::vector<std::string>& input_paths) {
    json j;
    j["format"] = "wsdbench-manifest";
    j["version"] = wsd::kFormatVersion;
    j["command"] = command;
    j["argv"] = argv;
    j["seed"] = seed;
    json inputs = json::object();
    for (const std::string& p : input_paths) inputs[p] = wsd::to_hex(wsd::fnv1a64(read_file(p)));
    j["inputs"] = std::move(inputs);
    j["tool_version"] = wsd::kToolVersion;
    j["timestamp"] = iso_utc_timestamp();

    std::string path = artifact_path + ".manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw wsd::Error("cannot open \"" + path + "\" for writing");
    out << j.dump(2) << '\n';
    if (!out) throw wsd::Error("failed writing \"" + path + "\"");
}

std::vector<size_t> parse_layer_list(const std::string& text) {
    std::vector<size_t> sizes;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
            throw wsd::Error("--layers expects comma-separated positive integers, got \"" + text +
                             "\"");
        }
        size_t v = std::stoull(item);
        if (v == 0) throw wsd::Error("--layers entries must be positive");
        sizes.push_back(v);
    }
    if (sizes.empty()) throw wsd::Error("--layers needs at least one entry");
    return sizes;
}

const std::vector<std::string> kFeatureSetNames = {"topical", "local", "pos", "all"};

// ---------------------------------------------------------------------------
// Shared tuning flags (train and bench)
// ---------------------------------------------------------------------------

struct TuningOpts {
    wsd::BenchConfig cfg;
    std::string layers = "100,100,100";
    std::string knn_metric = "euclidean";

    /// Folds string-typed flags into cfg; call once after parsing.
    void resolve() {
        cfg.dbn_layers = parse_layer_list(layers);
        cfg.knn_cosine = knn_metric == "cosine";
    }
};

void add_tuning_flags(CLI::App* cmd, TuningOpts& t) {
    cmd->add_option("--seed", t.cfg.seed, "Global random seed")->capture_default_str();
    cmd->add_option("--window", t.cfg.window, "Local-context half width in tokens")
        ->capture_default_str();
    cmd->add_option("--dim", t.cfg.dim, "Dimensions kept by PCA/KPCA")->capture_default_str();
    cmd->add_option("--epochs", t.cfg.epochs, "Max training epochs for logreg/MLP/SVM")
        ->capture_default_str();
    cmd->add_option("--patience", t.cfg.patience,
                    "Epochs without held-out improvement before stopping")
        ->capture_default_str();
    cmd->add_option("--logreg-lr", t.cfg.logreg_rate, "Logistic regression learning rate")
        ->capture_default_str();
    cmd->add_option("--mlp-lr", t.cfg.mlp_rate, "MLP learning rate")->capture_default_str();
    cmd->add_option("--hidden", t.cfg.hidden, "MLP hidden units")->capture_default_str();
    cmd->add_option("--knn-k", t.cfg.knn_k, "Neighbors for the k-NN family")
        ->capture_default_str();
    cmd->add_option("--knn-metric", t.knn_metric, "k-NN distance")
        ->check(CLI::IsMember({"euclidean", "cosine"}))
        ->capture_default_str();
    cmd->add_option("--c", t.cfg.svm_c, "SVM misclassification cost")->capture_default_str();
    cmd->add_option("--degree", t.cfg.degree, "Polynomial kernel degree")->capture_default_str();
    cmd->add_option("--gamma", t.cfg.gamma, "RBF kernel width")->capture_default_str();
    cmd->add_option("--layers", t.layers, "DBN hidden layer sizes, comma separated")
        ->capture_default_str();
    cmd->add_option("--pretrain-epochs", t.cfg.pretrain_epochs, "CD-1 epochs per RBM layer")
        ->capture_default_str();
    cmd->add_option("--pretrain-lr", t.cfg.pretrain_rate, "CD-1 learning rate")
        ->capture_default_str();
    cmd->add_option("--finetune-lr", t.cfg.finetune_rate, "DBN backpropagation learning rate")
        ->capture_default_str();
    cmd->add_option("--dev-fraction", t.cfg.dev_fraction,
                    "Per-task fraction held out for early stopping")
        ->capture_default_str();
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

struct IngestOpts {
    std::string xml;
    std::string key;
    std::string split = "train";
    std::string out;
};

int run_ingest(const IngestOpts& o, const std::vector<std::string>& argv) {
    wsd::Corpus corpus;
    corpus.instances = wsd::parse_senseval2(read_file(o.xml));
    corpus.split = wsd::split_from_string(o.split);
    if (!o.key.empty()) {
        wsd::apply_answer_key(corpus, wsd::parse_answer_key(read_file(o.key)));
    }
    wsd::validate(corpus);
    wsd::save_jsonl_file(corpus, o.out);

    std::vector<std::string> inputs{o.xml};
    if (!o.key.empty()) inputs.push_back(o.key);
    write_manifest(o.out, "ingest", argv, 0, inputs);

    std::cout << "wrote " << corpus.instances.size() << " instances ("
              << corpus.task_ids().size() << " tasks) to " << o.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// featurize
// ---------------------------------------------------------------------------

struct FeaturizeOpts {
    std::string corpus;
    std::string features = "all";
    size_t window = 7;
    std::string out;
    std::string use_vocab;
    std::string save_vocab;
};

int run_featurize(const FeaturizeOpts& o, const std::vector<std::string>& argv) {
    wsd::Corpus corpus = wsd::load_jsonl_file(o.corpus, wsd::Split::Train);

    wsd::Vocabulary vocab;
    if (!o.use_vocab.empty()) {
        vocab = wsd::load_vocab_file(o.use_vocab);
    } else {
        wsd::FeatureConfig config;
        config.set = wsd::feature_set_from_string(o.features);
        config.window = o.window;
        vocab = wsd::Vocabulary::build(corpus, config);
    }

    wsd::FeatureCache cache = wsd::featurize(corpus, vocab);
    wsd::save_feature_cache_file(cache, o.out);

    std::vector<std::string> inputs{o.corpus};
    if (!o.use_vocab.empty()) inputs.push_back(o.use_vocab);
    write_manifest(o.out, "featurize", argv, 0, inputs);
    if (!o.save_vocab.empty()) {
        wsd::save_vocab_file(vocab, o.save_vocab);
        write_manifest(o.save_vocab, "featurize", argv, 0, inputs);
    }

    std::cout << "wrote " << cache.rows.size() << " rows, vocabulary dimension "
              << vocab.dimension() << ", to " << o.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainOpts {
    std::string cache;
    std::string algo;
    std::string out;
    TuningOpts tuning;
};

bool row_trainable(const wsd::FeaturizedInstance& row) {
    return !row.senses.empty() && row.senses.count("U") == 0;
}

int run_train(TrainOpts& o, const std::vector<std::string>& argv) {
    o.tuning.resolve();
    const wsd::BenchConfig& cfg = o.tuning.cfg;
    wsd::FeatureCache cache = wsd::load_feature_cache_file(o.cache);
    if (cache.rows.empty()) throw wsd::Error("feature cache is empty");

    std::map<std::string, std::vector<size_t>> by_task;
    for (size_t i = 0; i < cache.rows.size(); ++i) {
        if (row_trainable(cache.rows[i])) by_task[cache.rows[i].task_id].push_back(i);
    }
    if (by_task.empty()) throw wsd::Error("feature cache has no trainable rows");

    wsd::ModelBundle bundle;
    bundle.algorithm = o.algo;
    bundle.features = cache.vocab.set();
    bundle.window = cache.vocab.window();
    bundle.seed = cfg.seed;
    bundle.config = wsd::bench_config_snapshot(cfg);

    for (const auto& [task_id, rows] : by_task) {
        std::vector<wsd::SparseBinaryVector> x;
        std::vector<std::string> train_labels;
        x.reserve(rows.size());
        for (size_t i : rows) {
            x.push_back(cache.rows[i].vec);
            // Training label of a multi-sense instance: its smallest sense.
            train_labels.push_back(*cache.rows[i].senses.begin());
        }
        wsd::LabelSpace labels = wsd::LabelSpace::from_labels(train_labels);
        std::vector<size_t> y;
        y.reserve(train_labels.size());
        for (const std::string& l : train_labels) y.push_back(labels.index_of(l));

        // Same held-out selection as the benchmark: rebuild the instance
        // skeleton and split it per task.
        wsd::Corpus skeleton;
        for (size_t i : rows) {
            wsd::WsdInstance inst;
            inst.task_id = cache.rows[i].task_id;
            inst.instance_id = cache.rows[i].instance_id;
            inst.context_text = "x";
            inst.head_end = 1;
            skeleton.instances.push_back(std::move(inst));
        }
        auto [tr, dev] = wsd::heldout_split(skeleton, cfg.dev_fraction, cfg.seed);
        std::map<std::string, size_t> pos;
        for (size_t i = 0; i < skeleton.instances.size(); ++i) {
            pos.emplace(skeleton.instances[i].instance_id, i);
        }
        std::vector<size_t> tr_idx;
        std::vector<size_t> dev_idx;
        for (const wsd::WsdInstance& inst : tr.instances) tr_idx.push_back(pos.at(inst.instance_id));
        for (const wsd::WsdInstance& inst : dev.instances) dev_idx.push_back(pos.at(inst.instance_id));

        uint64_t seed = wsd::task_seed(cfg.seed, task_id);
        wsd::TaskModel model = wsd::train_one_task(o.algo, x, y, tr_idx, dev_idx, labels, cfg, seed);
        bundle.tasks.push_back(wsd::SavedTaskModel{task_id, cache.vocab, std::move(model)});
    }

    wsd::save_bundle_file(bundle, o.out);
    write_manifest(o.out, "train", argv, cfg.seed, {o.cache});

    std::cout << "trained " << bundle.tasks.size() << " task models (" << o.algo << ") to "
              << o.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalOpts {
    std::string models;
    std::string corpus;
    std::string key;
    std::string out;
};

int run_eval(const EvalOpts& o, const std::vector<std::string>& argv) {
    wsd::ModelBundle bundle = wsd::load_bundle_file(o.models);
    wsd::Corpus corpus = wsd::load_jsonl_file(o.corpus, wsd::Split::Test);
    if (!o.key.empty()) {
        wsd::apply_answer_key(corpus, wsd::parse_answer_key(read_file(o.key)));
    }
    wsd::validate(corpus);

    std::unordered_map<std::string, std::string> predictions;
    predictions.reserve(corpus.instances.size());
    for (const wsd::WsdInstance& inst : corpus.instances) {
        const wsd::SavedTaskModel* task = bundle.find(inst.task_id);
        if (task == nullptr) throw wsd::Error("no model for task \"" + inst.task_id + "\"");
        wsd::SparseBinaryVector x = wsd::encode(inst, task->vocab);
        predictions.emplace(inst.instance_id, wsd::predict_label(task->model, x));
    }
    wsd::EvalResult result = wsd::micro_recall(corpus, predictions);

    std::ofstream out(o.out, std::ios::binary);
    if (!out) throw wsd::Error("cannot open \"" + o.out + "\" for writing");
    out << "task\tn_instances\tn_correct\trecall\n";
    for (const wsd::TaskScore& t : result.tasks) {
        out << t.task_id << '\t' << t.n_instances << '\t' << t.n_correct << '\t'
            << wsd::format_score(t.recall) << '\n';
    }
    out << "OVERALL\t" << result.n_instances << '\t' << result.n_correct << '\t'
        << wsd::format_score(result.micro) << '\n';
    if (!out) throw wsd::Error("failed writing \"" + o.out + "\"");
    out.close();

    std::vector<std::string> inputs{o.models, o.corpus};
    if (!o.key.empty()) inputs.push_back(o.key);
    write_manifest(o.out, "eval", argv, bundle.seed, inputs);

    std::cout << "micro recall " << wsd::format_score(result.micro) << " (" << result.n_correct
              << "/" << result.n_instances << ")\n";
    std::cout << "wrote " << o.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchOpts {
    std::string train;
    std::string test;
    std::string tsv;
    std::string json_out;
    std::string markdown;
    std::vector<std::string> algos;
    std::vector<std::string> feature_sets;
    TuningOpts tuning;
};

int run_bench(BenchOpts& o, const std::vector<std::string>& argv) {
    o.tuning.resolve();
    wsd::BenchConfig cfg = o.tuning.cfg;
    cfg.algorithms = o.algos.empty() ? wsd::kAlgorithms : o.algos;
    if (o.feature_sets.empty()) o.feature_sets = kFeatureSetNames;
    cfg.feature_sets.clear();
    for (const std::string& name : o.feature_sets) {
        cfg.feature_sets.push_back(wsd::feature_set_from_string(name));
    }

    wsd::Corpus train = wsd::load_jsonl_file(o.train, wsd::Split::Train);
    wsd::Corpus test = wsd::load_jsonl_file(o.test, wsd::Split::Test);
    wsd::validate(train);
    wsd::validate(test);

    wsd::BenchReport report = wsd::run_benchmark(train, test, cfg);

    const std::vector<std::string> inputs{o.train, o.test};
    wsd::write_report_tsv_file(report, o.tsv);
    write_manifest(o.tsv, "bench", argv, cfg.seed, inputs);
    if (!o.json_out.empty()) {
        wsd::write_report_json_file(report, o.json_out);
        write_manifest(o.json_out, "bench", argv, cfg.seed, inputs);
    }
    if (!o.markdown.empty()) {
        wsd::write_report_markdown_file(report, o.markdown);
        write_manifest(o.markdown, "bench", argv, cfg.seed, inputs);
    }

    for (const wsd::BenchCell& cell : report.cells) {
        std::cout << cell.algorithm << '\t' << wsd::to_string(cell.features) << '\t'
                  << (cell.has_score ? wsd::format_score(cell.micro) : "-") << "\n";
    }
    std::cout << "wrote " << o.tsv << "\n";
    if (report.n_failed > 0) {
        std::cerr << report.n_failed << " task trainings failed\n";
        return 3;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

struct ReportOpts {
    std::string in;
    std::string out;
};

int run_report(const ReportOpts& o, const std::vector<std::string>& argv) {
    wsd::BenchReport report = wsd::load_report_json_file(o.in);
    wsd::write_report_markdown_file(report, o.out);
    write_manifest(o.out, "report", argv, report.seed, {o.in});
    std::cout << "wrote " << o.out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);

    CLI::App app{"Word sense disambiguation benchmark runner"};
    app.require_subcommand(1);
    app.set_version_flag("--version", wsd::kToolVersion);

    IngestOpts ingest;
    CLI::App* ingest_cmd =
        app.add_subcommand("ingest", "Convert lexical-sample XML (plus answer key) to JSONL");
    ingest_cmd->add_option("--xml", ingest.xml, "Lexical-sample XML file")->required();
    ingest_cmd->add_option("--key", ingest.key, "Answer key overriding inline answers");
    ingest_cmd->add_option("--split", ingest.split, "Corpus split tag")
        ->check(CLI::IsMember({"train", "test", "dev"}))
        ->capture_default_str();
    ingest_cmd->add_option("--out", ingest.out, "Output JSONL path")->required();

    FeaturizeOpts featurize;
    CLI::App* featurize_cmd =
        app.add_subcommand("featurize", "Encode a JSONL corpus into cached sparse vectors");
    featurize_cmd->add_option("--corpus", featurize.corpus, "Input JSONL corpus")->required();
    featurize_cmd->add_option("--features", featurize.features, "Feature set")
        ->check(CLI::IsMember(kFeatureSetNames))
        ->capture_default_str();
    featurize_cmd->add_option("--window", featurize.window, "Local-context half width in tokens")
        ->capture_default_str();
    featurize_cmd->add_option("--out", featurize.out, "Output feature cache path")->required();
    featurize_cmd->add_option("--use-vocab", featurize.use_vocab,
                              "Encode against this saved vocabulary instead of building one");
    featurize_cmd->add_option("--save-vocab", featurize.save_vocab,
                              "Also write the vocabulary to this path");

    TrainOpts train;
    CLI::App* train_cmd =
        app.add_subcommand("train", "Train per-task models from a feature cache");
    train_cmd->add_option("--cache", train.cache, "Feature cache from featurize")->required();
    train_cmd->add_option("--algo", train.algo, "Algorithm")
        ->check(CLI::IsMember(wsd::kAlgorithms))
        ->required();
    train_cmd->add_option("--out", train.out, "Output model file")->required();
    add_tuning_flags(train_cmd, train.tuning);

    EvalOpts eval;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Score a model file on a test corpus");
    eval_cmd->add_option("--models", eval.models, "Model file from train")->required();
    eval_cmd->add_option("--corpus", eval.corpus, "Test JSONL corpus")->required();
    eval_cmd->add_option("--key", eval.key, "Answer key overriding inline answers");
    eval_cmd->add_option("--out", eval.out, "Output per-task TSV")->required();

    BenchOpts bench;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Train and score the full algorithm/feature grid");
    bench_cmd->add_option("--train", bench.train, "Training JSONL corpus")->required();
    bench_cmd->add_option("--test", bench.test, "Test JSONL corpus")->required();
    bench_cmd->add_option("--tsv", bench.tsv, "Output TSV report")->required();
    bench_cmd->add_option("--json", bench.json_out, "Also write a JSON report with task detail");
    bench_cmd->add_option("--markdown", bench.markdown, "Also write a Markdown report");
    bench_cmd->add_option("--algo", bench.algos, "Algorithms to run (default: all)")
        ->check(CLI::IsMember(wsd::kAlgorithms));
    bench_cmd->add_option("--features", bench.feature_sets, "Feature sets to run (default: all)")
        ->check(CLI::IsMember(kFeatureSetNames));
    bench_cmd
        ->add_option("--save-models", bench.tuning.cfg.save_models_dir,
                     "Directory for per-task model files")
        ->capture_default_str();
    bench_cmd->add_option("--jobs", bench.tuning.cfg.jobs, "Worker threads (0 = all cores)")
        ->capture_default_str();
    add_tuning_flags(bench_cmd, bench.tuning);

    ReportOpts report;
    CLI::App* report_cmd =
        app.add_subcommand("report", "Render a JSON benchmark report as Markdown");
    report_cmd->add_option("--in", report.in, "JSON report from bench --json")->required();
    report_cmd->add_option("--out", report.out, "Output Markdown path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        std::cout << wsd::kToolVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (app.got_subcommand(ingest_cmd)) return run_ingest(ingest, args);
        if (app.got_subcommand(featurize_cmd)) return run_featurize(featurize, args);
        if (app.got_subcommand(train_cmd)) return run_train(train, args);
        if (app.got_subcommand(eval_cmd)) return run_eval(eval, args);
        if (app.got_subcommand(bench_cmd)) return run_bench(bench, args);
        if (app.got_subcommand(report_cmd)) return run_report(report, args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
