#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wsdbench/features.hpp"
#include "wsdbench/linalg.hpp"
#include "wsdbench/net.hpp"
#include "wsdbench/reduction.hpp"

namespace wsd {

/// Sorted unique label strings with index lookup. Predictors work in index
/// space; callers map back through this.
class LabelSpace {
  public:
    LabelSpace() = default;
    static LabelSpace from_labels(const std::vector<std::string>& labels);
    static LabelSpace from_sorted_unique(std::vector<std::string> labels);

    size_t size() const { return labels_.size(); }
    const std::string& label(size_t i) const;
    size_t index_of(const std::string& label) const;
    const std::vector<std::string>& labels() const { return labels_; }
    bool operator==(const LabelSpace& other) const { return labels_ == other.labels_; }

  private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, size_t> index_;
};

struct TrainConfig {
    size_t epochs = 100;
    size_t patience = 10;
    double logreg_rate = 0.13;
    double mlp_rate = 0.01;
    size_t hidden = 1000;
    double svm_c = 1.0;
    uint64_t seed = 42;
};

struct MfsModel {
    LabelSpace labels;
    size_t majority = 0;

    size_t predict(const SparseBinaryVector&) const { return majority; }
};

/// Most frequent sense; ties go to the lexicographically smallest label.
MfsModel train_mfs(const std::vector<size_t>& y, const LabelSpace& labels);

struct NbModel {
    LabelSpace labels;
    std::vector<double> log_prior; // log(n_c / n), one per label
    DenseMatrix log_p1;            // labels x dim, log P(feature = 1 | label)
    // Derived caches: base score per label (all features absent) and the
    // per-feature additive delta for an active feature.
    std::vector<double> base;
    DenseMatrix delta;

    void rebuild_cache();
    size_t predict(const SparseBinaryVector& x) const;
    std::vector<double> log_joint(const SparseBinaryVector& x) const;
};

/// Bernoulli model over every vocabulary feature. Likelihoods use add-one
/// style smoothing (count + 1) / (n_c + 2); priors are unsmoothed.
NbModel train_nb(const std::vector<SparseBinaryVector>& x, const std::vector<size_t>& y,
                 const LabelSpace& labels);

struct KnnModel {
    LabelSpace labels;
    std::vector<SparseBinaryVector> train_x;
    std::vector<size_t> train_y;
    size_t k = 1;
    bool cosine = false;

    size_t predict(const SparseBinaryVector& x) const;
};

KnnModel train_knn(std::vector<SparseBinaryVector> x, std::vector<size_t> y,
                   const LabelSpace& labels, size_t k = 1, bool cosine = false);

/// Nearest neighbours over dense vectors (used on reduced representations).
/// Distance ties resolve to the earliest training index; vote ties to the
/// smallest label index.
size_t knn_predict_dense(const DenseMatrix& train_x, const std::vector<size_t>& train_y,
                         std::span<const double> x, size_t k, bool cosine);

struct PcaKnnModel {
    LabelSpace labels;
    PcaModel pca;
    DenseMatrix train_z; // projected training data
    std::vector<size_t> train_y;
    size_t k = 1;
    bool cosine = false;

    size_t predict(const SparseBinaryVector& x) const;
};

PcaKnnModel train_pca_knn(const std::vector<SparseBinaryVector>& x, const std::vector<size_t>& y,
                          const LabelSpace& labels, size_t dim, size_t k = 1, bool cosine = false);

struct KpcaKnnModel {
    LabelSpace labels;
    KpcaModel kpca;
    std::vector<size_t> train_y;
    size_t k = 1;
    bool cosine = false;

    size_t predict(const SparseBinaryVector& x) const;
};

KpcaKnnModel train_kpca_knn(const std::vector<SparseBinaryVector>& x, const std::vector<size_t>& y,
                            const LabelSpace& labels, const KernelSpec& kernel, size_t dim,
                            size_t k = 1, bool cosine = false);

/// Linear scorer w x + b shared by logistic regression and the linear SVM.
struct LinearModel {
    LabelSpace labels;
    DenseMatrix w; // labels x dim
    std::vector<double> b;

    std::vector<double> scores(const SparseBinaryVector& x) const;
    size_t predict(const SparseBinaryVector& x) const;
};

/// Multinomial logistic regression by per-instance SGD with a fixed rate.
/// When dev is non-empty, keeps the parameters from the best dev epoch and
/// stops after `patience` epochs without improvement.
LinearModel train_logreg(const std::vector<SparseBinaryVector>& x, const std::vector<size_t>& y,
                         const LabelSpace& labels, const TrainConfig& cfg,
                         const std::vector<SparseBinaryVector>& dev_x = {},
                         const std::vector<size_t>& dev_y = {});

/// Softmax cross-entropy loss and gradients for one example, for gradient
/// checking.
double logreg_loss_and_grad(const LinearModel& model, std::span<const double> x, size_t target,
                            DenseMatrix& gw, std::vector<double>& gb);

struct MlpModel {
    LabelSpace labels;
    FeedForwardNet net;

    size_t predict(const SparseBinaryVector& x) const { return net.predict(x); }
};

/// One sigmoid hidden layer, softmax output, per-instance SGD. Same dev-based
/// early stopping as train_logreg.
MlpModel train_mlp(const std::vector<SparseBinaryVector>& x, const std::vector<size_t>& y,
                   const LabelSpace& labels, const TrainConfig& cfg,
                   const std::vector<SparseBinaryVector>& dev_x = {},
                   const std::vector<size_t>& dev_y = {});

/// Snapshot of one binary subproblem's state at an epoch boundary. `w_avg`
/// and `b_avg` average all iterates seen so far.
struct SvmEpochState {
    size_t label;
    size_t epoch;
    std::span<const double> w;
    double b;
    std::span<const double> w_avg;
    double b_avg;
};
using SvmObserver = std::function<void(const SvmEpochState&)>;

/// One-vs-rest hinge loss with L2 penalty, subgradient steps at rate
/// 1 / (t + 1), bias unregularized, fixed epoch count.
LinearModel train_linear_svm(const std::vector<SparseBinaryVector>& x, const std::vector<size_t>& y,
                             const LabelSpace& labels, const TrainConfig& cfg,
                             const SvmObserver& observer = nullptr);

/// Value of the regularized hinge objective for one binary subproblem.
double svm_binary_objective(std::span<const double> w, double b,
                            const std::vector<SparseBinaryVector>& x,
                            const std::vector<int>& y_pm, double c);

struct KernelSvmModel {
    LabelSpace labels;
    std::vector<SparseBinaryVector> train_x;
    KernelSpec kernel;
    DenseMatrix beta; // labels x n, dual coefficients (sign folded in)
    std::vector<double> b;

    std::vector<double> scores(const SparseBinaryVector& x) const;
    size_t predict(const SparseBinaryVector& x) const;
};

/// Dual form of train_linear_svm: identical schedule and updates expressed
/// through the Gram matrix, so a linear kernel reproduces its predictions.
KernelSvmModel train_kernel_svm(const std::vector<SparseBinaryVector>& x,
                                const std::vector<size_t>& y, const LabelSpace& labels,
                                const KernelSpec& kernel, const TrainConfig& cfg);

} // namespace wsd
