#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wsdbench/baselines.hpp"
#include "wsdbench/corpus.hpp"
#include "wsdbench/dbn.hpp"
#include "wsdbench/features.hpp"
#include "wsdbench/model_io.hpp"

namespace wsd {

struct TaskScore {
    std::string task_id;
    size_t n_instances = 0;
    size_t n_correct = 0;
    double recall = 0.0;
};

struct EvalResult {
    size_t n_instances = 0;
    size_t n_correct = 0;
    double micro = 0.0;
    std::vector<TaskScore> tasks; // sorted by task_id
};

/// Pooled recall: correct / total over all instances. A prediction is correct
/// when it appears in the instance's gold sense set. Every instance needs a
/// prediction keyed by its id.
EvalResult micro_recall(const Corpus& test,
                        const std::unordered_map<std::string, std::string>& predictions);

/// Smallest epoch count from the grid maximizing dev_score. The grid must be
/// non-empty and dev_size positive (a selection on no dev data is
/// meaningless).
size_t select_epochs(std::vector<size_t> grid, size_t dev_size,
                     const std::function<double(size_t)>& dev_score);

extern const std::vector<std::string> kAlgorithms;
bool is_algorithm(const std::string& name);

struct BenchConfig {
    std::vector<std::string> algorithms;  // request order defines row order
    std::vector<FeatureSet> feature_sets; // minor order within an algorithm
    size_t window = 7;
    size_t dim = 30;
    size_t knn_k = 1;
    bool knn_cosine = false;
    size_t epochs = 100;
    size_t patience = 10;
    double logreg_rate = 0.13;
    double mlp_rate = 0.01;
    size_t hidden = 1000;
    double svm_c = 1.0;
    int degree = 3;
    double gamma = 3.0;
    std::vector<size_t> dbn_layers{100, 100, 100};
    size_t pretrain_epochs = 25;
    double pretrain_rate = 0.1;
    double finetune_rate = 1.0;
    double dev_fraction = 0.1;
    uint64_t seed = 42;
    size_t jobs = 0; // 0 = hardware concurrency
    std::string save_models_dir; // empty = don't save
};

struct CellTaskOutcome {
    std::string task_id;
    bool ok = false;
    std::string error;
    size_t n_test = 0;
    size_t n_correct = 0;
    double recall = 0.0;
};

struct BenchCell {
    std::string algorithm;
    FeatureSet features = FeatureSet::All;
    std::vector<CellTaskOutcome> tasks; // sorted by task_id
    size_t n_failed = 0;
    size_t n_test = 0;
    size_t n_correct = 0;
    bool has_score = false;
    double micro = 0.0;
    /// One-sided p for "dbn beats this algorithm", over per-task recalls of
    /// tasks both cells solved. Unset for the dbn row or without enough
    /// paired tasks.
    std::optional<double> p_vs_dbn;
};

struct BenchReport {
    std::vector<BenchCell> cells;
    uint64_t seed = 42;
    size_t n_tasks = 0;
    size_t n_failed = 0; // total failed (algorithm, feature set, task) cells
};

/// Training settings as a flat string map, stored in saved model bundles.
/// Excludes fields that do not affect the trained parameters (jobs, paths).
std::map<std::string, std::string> bench_config_snapshot(const BenchConfig& config);

/// Trains one task with one algorithm. tr_idx/dev_idx partition [0, x.size())
/// and feed the learners with early stopping; algorithms without one train on
/// all of x. `seed` should already be task-specific.
TaskModel train_one_task(const std::string& algo, const std::vector<SparseBinaryVector>& x,
                         const std::vector<size_t>& y, const std::vector<size_t>& tr_idx,
                         const std::vector<size_t>& dev_idx, const LabelSpace& labels,
                         const BenchConfig& config, uint64_t seed);

/// Trains and scores every (algorithm, feature set) pair per task. Tasks come
/// from the test corpus; per-task seeds derive from `seed` and the task id,
/// so results do not depend on `jobs`.
BenchReport run_benchmark(const Corpus& train, const Corpus& test, const BenchConfig& config);

} // namespace wsd
