#include "wsdbench/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <map>
#include <thread>

#include "wsdbench/error.hpp"
#include "wsdbench/rng.hpp"
#include "wsdbench/stats.hpp"

namespace wsd {

EvalResult micro_recall(const Corpus& test,
                        const std::unordered_map<std::string, std::string>& predictions) {
    if (test.instances.empty()) throw Error("micro recall: empty corpus");
    EvalResult result;
    std::map<std::string, TaskScore> by_task;
    for (const WsdInstance& inst : test.instances) {
        auto it = predictions.find(inst.instance_id);
        if (it == predictions.end()) {
            throw Error("micro recall: no prediction for instance \"" + inst.instance_id + "\"");
        }
        bool correct = inst.gold_senses.count(it->second) > 0;
        TaskScore& score = by_task[inst.task_id];
        score.task_id = inst.task_id;
        ++score.n_instances;
        ++result.n_instances;
        if (correct) {
            ++score.n_correct;
            ++result.n_correct;
        }
    }
    result.micro = static_cast<double>(result.n_correct) / static_cast<double>(result.n_instances);
    for (auto& [id, score] : by_task) {
        score.recall = static_cast<double>(score.n_correct) / static_cast<double>(score.n_instances);
        result.tasks.push_back(std::move(score));
    }
    return result;
}

size_t select_epochs(std::vector<size_t> grid, size_t dev_size,
                     const std::function<double(size_t)>& dev_score) {
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.empty()) throw Error("select epochs: empty grid");
    if (grid.front() == 0) throw Error("select epochs: epoch counts must be positive");
    if (dev_size == 0) throw Error("select epochs: empty dev set");
    size_t chosen = grid.front();
    double best = dev_score(grid.front());
    for (size_t i = 1; i < grid.size(); ++i) {
        double score = dev_score(grid[i]);
        if (score > best) {
            best = score;
            chosen = grid[i];
        }
    }
    return chosen;
}

const std::vector<std::string> kAlgorithms = {"mfs",    "nb",         "knn",      "pca-knn",
                                              "kpca-poly", "kpca-rbf", "logreg",   "mlp",
                                              "svm-linear", "svm-poly", "svm-rbf", "dbn"};

bool is_algorithm(const std::string& name) {
    return std::find(kAlgorithms.begin(), kAlgorithms.end(), name) != kAlgorithms.end();
}

namespace {

void parallel_for(size_t n, size_t jobs, const std::function<void(size_t)>& fn) {
    if (n == 0) return;
    if (jobs == 0) jobs = std::thread::hardware_concurrency();
    if (jobs == 0) jobs = 1;
    jobs = std::min(jobs, n);
    if (jobs <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (size_t j = 0; j < jobs; ++j) {
        pool.emplace_back([&] {
            for (size_t i; (i = next.fetch_add(1)) < n;) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

struct TaskData {
    std::string task_id;
    bool trainable = false;
    std::string error;
    Corpus train_full; // non-"U" training instances, corpus order
    Corpus test;
    std::vector<size_t> tr_idx;  // into train_full
    std::vector<size_t> dev_idx;
    LabelSpace labels;
    std::vector<size_t> y_full;
};

struct TaskFeatures {
    bool ok = false;
    std::string error;
    Vocabulary vocab;
    std::vector<SparseBinaryVector> full_x;
    std::vector<SparseBinaryVector> test_x;
};

TaskData build_task_data(const std::string& task_id, const Corpus& train, const Corpus& test,
                         double dev_fraction, uint64_t seed) {
    TaskData td;
    td.task_id = task_id;
    td.train_full.split = train.split;
    for (const WsdInstance& inst : train.instances) {
        if (inst.task_id == task_id && !is_unassignable(inst)) {
            td.train_full.instances.push_back(inst);
        }
    }
    td.test.split = test.split;
    for (const WsdInstance& inst : test.instances) {
        if (inst.task_id == task_id) td.test.instances.push_back(inst);
    }
    if (td.train_full.instances.empty()) {
        td.error = "no trainable instances";
        return td;
    }

    std::vector<std::string> train_labels;
    train_labels.reserve(td.train_full.instances.size());
    for (const WsdInstance& inst : td.train_full.instances) {
        // Training label of a multi-sense instance: its smallest gold sense.
        train_labels.push_back(*inst.gold_senses.begin());
    }
    td.labels = LabelSpace::from_labels(train_labels);
    td.y_full.reserve(train_labels.size());
    for (const std::string& l : train_labels) td.y_full.push_back(td.labels.index_of(l));

    auto [tr, dev] = heldout_split(td.train_full, dev_fraction, seed);
    std::unordered_map<std::string, size_t> pos;
    for (size_t i = 0; i < td.train_full.instances.size(); ++i) {
        pos.emplace(td.train_full.instances[i].instance_id, i);
    }
    for (const WsdInstance& inst : tr.instances) td.tr_idx.push_back(pos.at(inst.instance_id));
    for (const WsdInstance& inst : dev.instances) td.dev_idx.push_back(pos.at(inst.instance_id));
    td.trainable = true;
    return td;
}

TaskFeatures build_task_features(const TaskData& td, FeatureSet fs, size_t window) {
    TaskFeatures tf;
    if (!td.trainable) {
        tf.error = td.error;
        return tf;
    }
    try {
        FeatureConfig config;
        config.set = fs;
        config.window = window;
        tf.vocab = Vocabulary::build(td.train_full, config);
        if (tf.vocab.dimension() == 0) {
            tf.error = "empty vocabulary";
            return tf;
        }
        tf.full_x.reserve(td.train_full.instances.size());
        for (const WsdInstance& inst : td.train_full.instances) {
            tf.full_x.push_back(encode(inst, tf.vocab));
        }
        tf.test_x.reserve(td.test.instances.size());
        for (const WsdInstance& inst : td.test.instances) {
            tf.test_x.push_back(encode(inst, tf.vocab));
        }
        tf.ok = true;
    } catch (const std::exception& e) {
        tf.ok = false;
        tf.error = e.what();
    }
    return tf;
}

template <typename T>
std::vector<T> take(const std::vector<T>& src, const std::vector<size_t>& idx) {
    std::vector<T> out;
    out.reserve(idx.size());
    for (size_t i : idx) out.push_back(src[i]);
    return out;
}

TaskModel train_task_model(const std::string& algo, const TaskData& td, const TaskFeatures& tf,
                           const BenchConfig& config, uint64_t cell_seed) {
    return train_one_task(algo, tf.full_x, td.y_full, td.tr_idx, td.dev_idx, td.labels, config,
                          cell_seed);
}

std::string model_file_name(const std::string& algo, FeatureSet fs, const std::string& task_id) {
    return algo + "__" + to_string(fs) + "__" + task_id + ".json";
}

std::string config_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

} // namespace

std::map<std::string, std::string> bench_config_snapshot(const BenchConfig& c) {
    std::map<std::string, std::string> m;
    m["dim"] = std::to_string(c.dim);
    m["knn_k"] = std::to_string(c.knn_k);
    m["knn_metric"] = c.knn_cosine ? "cosine" : "euclidean";
    m["epochs"] = std::to_string(c.epochs);
    m["patience"] = std::to_string(c.patience);
    m["logreg_rate"] = config_num(c.logreg_rate);
    m["mlp_rate"] = config_num(c.mlp_rate);
    m["hidden"] = std::to_string(c.hidden);
    m["svm_c"] = config_num(c.svm_c);
    m["degree"] = std::to_string(c.degree);
    m["gamma"] = config_num(c.gamma);
    std::string layers;
    for (size_t s : c.dbn_layers) {
        if (!layers.empty()) layers += ',';
        layers += std::to_string(s);
    }
    m["dbn_layers"] = layers;
    m["pretrain_epochs"] = std::to_string(c.pretrain_epochs);
    m["pretrain_rate"] = config_num(c.pretrain_rate);
    m["finetune_rate"] = config_num(c.finetune_rate);
    m["dev_fraction"] = config_num(c.dev_fraction);
    return m;
}

TaskModel train_one_task(const std::string& algo, const std::vector<SparseBinaryVector>& x,
                         const std::vector<size_t>& y, const std::vector<size_t>& tr_idx,
                         const std::vector<size_t>& dev_idx, const LabelSpace& labels,
                         const BenchConfig& config, uint64_t seed) {
    TrainConfig tc;
    tc.epochs = config.epochs;
    tc.patience = config.patience;
    tc.logreg_rate = config.logreg_rate;
    tc.mlp_rate = config.mlp_rate;
    tc.hidden = config.hidden;
    tc.svm_c = config.svm_c;
    tc.seed = seed;

    if (algo == "mfs") return train_mfs(y, labels);
    if (algo == "nb") return train_nb(x, y, labels);
    if (algo == "knn") return train_knn(x, y, labels, config.knn_k, config.knn_cosine);
    if (algo == "pca-knn") {
        return train_pca_knn(x, y, labels, config.dim, config.knn_k, config.knn_cosine);
    }
    if (algo == "kpca-poly") {
        return train_kpca_knn(x, y, labels, KernelSpec::polynomial(config.degree, 1.0), config.dim,
                              config.knn_k, config.knn_cosine);
    }
    if (algo == "kpca-rbf") {
        return train_kpca_knn(x, y, labels, KernelSpec::rbf(config.gamma), config.dim,
                              config.knn_k, config.knn_cosine);
    }
    if (algo == "logreg" || algo == "mlp" || algo == "dbn") {
        std::vector<SparseBinaryVector> tr_x = take(x, tr_idx);
        std::vector<size_t> y_tr = take(y, tr_idx);
        std::vector<SparseBinaryVector> dev_x = take(x, dev_idx);
        std::vector<size_t> y_dev = take(y, dev_idx);
        if (algo == "logreg") return train_logreg(tr_x, y_tr, labels, tc, dev_x, y_dev);
        if (algo == "mlp") return train_mlp(tr_x, y_tr, labels, tc, dev_x, y_dev);
        DbnSchedule schedule;
        schedule.layer_sizes = config.dbn_layers;
        schedule.pretrain_epochs = config.pretrain_epochs;
        schedule.pretrain_rate = config.pretrain_rate;
        schedule.finetune_rate = config.finetune_rate;
        schedule.seed = seed;
        return train_dbn(tr_x, y_tr, labels, schedule, dev_x, y_dev);
    }
    if (algo == "svm-linear") return train_linear_svm(x, y, labels, tc);
    if (algo == "svm-poly") {
        return train_kernel_svm(x, y, labels, KernelSpec::polynomial(config.degree, 1.0), tc);
    }
    if (algo == "svm-rbf") {
        return train_kernel_svm(x, y, labels, KernelSpec::rbf(config.gamma), tc);
    }
    throw Error("unknown algorithm \"" + algo + "\"");
}

BenchReport run_benchmark(const Corpus& train, const Corpus& test, const BenchConfig& config) {
    if (config.algorithms.empty()) throw Error("benchmark: no algorithms requested");
    if (config.feature_sets.empty()) throw Error("benchmark: no feature sets requested");
    for (const std::string& a : config.algorithms) {
        if (!is_algorithm(a)) throw Error("benchmark: unknown algorithm \"" + a + "\"");
    }
    {
        std::vector<std::string> dedup = config.algorithms;
        std::sort(dedup.begin(), dedup.end());
        if (std::adjacent_find(dedup.begin(), dedup.end()) != dedup.end()) {
            throw Error("benchmark: duplicate algorithm requested");
        }
        std::vector<FeatureSet> fdedup = config.feature_sets;
        std::sort(fdedup.begin(), fdedup.end(),
                  [](FeatureSet a, FeatureSet b) { return static_cast<int>(a) < static_cast<int>(b); });
        if (std::adjacent_find(fdedup.begin(), fdedup.end()) != fdedup.end()) {
            throw Error("benchmark: duplicate feature set requested");
        }
    }
    if (test.instances.empty()) throw Error("benchmark: empty test corpus");
    if (!config.save_models_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(config.save_models_dir, ec);
        if (ec) {
            throw Error("cannot create model directory \"" + config.save_models_dir +
                        "\": " + ec.message());
        }
    }

    std::vector<std::string> task_ids = test.task_ids();
    std::sort(task_ids.begin(), task_ids.end());
    const size_t n_tasks = task_ids.size();
    const size_t n_fs = config.feature_sets.size();
    const size_t n_algos = config.algorithms.size();

    std::vector<TaskData> tasks(n_tasks);
    parallel_for(n_tasks, config.jobs, [&](size_t t) {
        tasks[t] = build_task_data(task_ids[t], train, test, config.dev_fraction, config.seed);
    });

    std::vector<TaskFeatures> features(n_tasks * n_fs);
    parallel_for(n_tasks * n_fs, config.jobs, [&](size_t i) {
        size_t t = i / n_fs;
        size_t f = i % n_fs;
        features[i] = build_task_features(tasks[t], config.feature_sets[f], config.window);
    });

    BenchReport report;
    report.seed = config.seed;
    report.n_tasks = n_tasks;
    report.cells.resize(n_algos * n_fs);
    for (size_t a = 0; a < n_algos; ++a) {
        for (size_t f = 0; f < n_fs; ++f) {
            BenchCell& cell = report.cells[a * n_fs + f];
            cell.algorithm = config.algorithms[a];
            cell.features = config.feature_sets[f];
            cell.tasks.resize(n_tasks);
        }
    }

    parallel_for(n_algos * n_fs * n_tasks, config.jobs, [&](size_t i) {
        size_t t = i % n_tasks;
        size_t af = i / n_tasks;
        size_t a = af / n_fs;
        size_t f = af % n_fs;
        const TaskData& td = tasks[t];
        const TaskFeatures& tf = features[t * n_fs + f];
        CellTaskOutcome& outcome = report.cells[a * n_fs + f].tasks[t];
        outcome.task_id = td.task_id;
        if (!tf.ok) {
            outcome.error = tf.error;
            return;
        }
        try {
            uint64_t cell_seed = task_seed(config.seed, td.task_id);
            TaskModel model = train_task_model(config.algorithms[a], td, tf, config, cell_seed);
            outcome.n_test = td.test.instances.size();
            for (size_t j = 0; j < td.test.instances.size(); ++j) {
                const WsdInstance& inst = td.test.instances[j];
                std::string label = predict_label(model, tf.test_x[j]);
                if (inst.gold_senses.count(label) > 0) ++outcome.n_correct;
            }
            outcome.recall = outcome.n_test == 0
                                 ? 0.0
                                 : static_cast<double>(outcome.n_correct) /
                                       static_cast<double>(outcome.n_test);
            if (!config.save_models_dir.empty()) {
                ModelBundle bundle;
                bundle.algorithm = config.algorithms[a];
                bundle.features = config.feature_sets[f];
                bundle.window = config.window;
                bundle.seed = config.seed;
                bundle.config = bench_config_snapshot(config);
                bundle.tasks.push_back(SavedTaskModel{td.task_id, tf.vocab, std::move(model)});
                std::filesystem::path path = std::filesystem::path(config.save_models_dir) /
                                             model_file_name(config.algorithms[a],
                                                             config.feature_sets[f], td.task_id);
                save_bundle_file(bundle, path.string());
            }
            outcome.ok = true;
        } catch (const std::exception& e) {
            outcome.ok = false;
            outcome.error = e.what();
        }
    });

    for (BenchCell& cell : report.cells) {
        for (const CellTaskOutcome& outcome : cell.tasks) {
            if (!outcome.ok) {
                ++cell.n_failed;
                continue;
            }
            cell.n_test += outcome.n_test;
            cell.n_correct += outcome.n_correct;
        }
        cell.has_score = cell.n_test > 0;
        if (cell.has_score) {
            cell.micro = static_cast<double>(cell.n_correct) / static_cast<double>(cell.n_test);
        }
        report.n_failed += cell.n_failed;
    }

    for (size_t f = 0; f < n_fs; ++f) {
        const BenchCell* dbn_cell = nullptr;
        for (size_t a = 0; a < n_algos; ++a) {
            if (config.algorithms[a] == "dbn") {
                dbn_cell = &report.cells[a * n_fs + f];
                break;
            }
        }
        if (dbn_cell == nullptr) continue;
        for (size_t a = 0; a < n_algos; ++a) {
            BenchCell& cell = report.cells[a * n_fs + f];
            if (&cell == dbn_cell) continue;
            std::vector<double> dbn_recalls;
            std::vector<double> cell_recalls;
            for (size_t t = 0; t < n_tasks; ++t) {
                const CellTaskOutcome& d = dbn_cell->tasks[t];
                const CellTaskOutcome& c = cell.tasks[t];
                if (d.ok && c.ok && d.n_test > 0 && c.n_test > 0) {
                    dbn_recalls.push_back(d.recall);
                    cell_recalls.push_back(c.recall);
                }
            }
            if (dbn_recalls.size() >= 2) {
                cell.p_vs_dbn = one_sided_t_test(dbn_recalls, cell_recalls).p;
            }
        }
    }
    return report;
}

} // namespace wsd
