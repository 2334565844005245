#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "wsdbench/baselines.hpp"
#include "wsdbench/dbn.hpp"
#include "wsdbench/features.hpp"

namespace wsd {

/// Any trained per-task predictor. LinearModel covers both logistic
/// regression and the linear SVM; the owning bundle records which.
using TaskModel = std::variant<MfsModel, NbModel, KnnModel, PcaKnnModel, KpcaKnnModel, LinearModel,
                               MlpModel, KernelSvmModel, DbnModel>;

size_t predict_with(const TaskModel& model, const SparseBinaryVector& x);
std::string predict_label(const TaskModel& model, const SparseBinaryVector& x);

struct SavedTaskModel {
    std::string task_id;
    Vocabulary vocab;
    TaskModel model;
};

/// One trained benchmark cell: the same algorithm trained per task.
struct ModelBundle {
    std::string algorithm;
    FeatureSet features = FeatureSet::All;
    size_t window = 7;
    uint64_t seed = 42;
    std::map<std::string, std::string> config; // training settings snapshot
    std::vector<SavedTaskModel> tasks;         // sorted by task_id

    const SavedTaskModel* find(const std::string& task_id) const;
};

/// JSON with sorted keys; identical bundles serialize to identical bytes.
std::string serialize_bundle(const ModelBundle& bundle);
ModelBundle parse_bundle(const std::string& text);

void save_bundle_file(const ModelBundle& bundle, const std::string& path);
ModelBundle load_bundle_file(const std::string& path);

} // namespace wsd
