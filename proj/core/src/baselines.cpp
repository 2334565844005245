#include "wsdbench/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "wsdbench/error.hpp"

namespace wsd {

namespace {

size_t argmax_smallest(const std::vector<double>& v) {
    size_t arg = 0;
    for (size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[arg]) arg = i;
    }
    return arg;
}

void check_training_data(const std::vector<SparseBinaryVector>& x, const std::vector<size_t>& y,
                         const LabelSpace& labels) {
    if (x.empty()) throw Error("train: empty training set");
    if (x.size() != y.size()) throw Error("train: feature/label count mismatch");
    if (labels.size() == 0) throw Error("train: empty label space");
    for (size_t i = 1; i < x.size(); ++i) {
        if (x[i].dim != x[0].dim) throw Error("train: inconsistent feature dimensions");
    }
    for (size_t yi : y) {
        if (yi >= labels.size()) throw Error("train: label index out of range");
    }
}

uint64_t class_seed(uint64_t seed, size_t label) {
    return fnv1a64(static_cast<uint64_t>(label), fnv1a64(seed));
}

} // namespace

LabelSpace LabelSpace::from_labels(const std::vector<std::string>& labels) {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return from_sorted_unique(std::move(sorted));
}

LabelSpace LabelSpace::from_sorted_unique(std::vector<std::string> labels) {
    LabelSpace ls;
    for (size_t i = 1; i < labels.size(); ++i) {
        if (!(labels[i - 1] < labels[i])) throw Error("label space: not sorted unique");
    }
    ls.labels_ = std::move(labels);
    for (size_t i = 0; i < ls.labels_.size(); ++i) ls.index_.emplace(ls.labels_[i], i);
    return ls;
}

const std::string& LabelSpace::label(size_t i) const {
    if (i >= labels_.size()) throw Error("label space: index out of range");
    return labels_[i];
}

size_t LabelSpace::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw Error("label space: unknown label \"" + label + "\"");
    return it->second;
}

MfsModel train_mfs(const std::vector<size_t>& y, const LabelSpace& labels) {
    if (y.empty()) throw Error("train: empty training set");
    std::vector<size_t> counts(labels.size(), 0);
    for (size_t yi : y) {
        if (yi >= labels.size()) throw Error("train: label index out of range");
        ++counts[yi];
    }
    MfsModel model;
    model.labels = labels;
    for (size_t i = 1; i < counts.size(); ++i) {
        if (counts[i] > counts[model.majority]) model.majority = i;
    }
    return model;
}

void NbModel::rebuild_cache() {
    const size_t k = log_p1.rows;
    const size_t d = log_p1.cols;
    base.assign(k, 0.0);
    delta = DenseMatrix(k, d);
    for (size_t c = 0; c < k; ++c) {
        double sum = log_prior[c];
        for (size_t j = 0; j < d; ++j) {
            double lp = log_p1(c, j);
            double lq = std::log1p(-std::exp(lp));
            sum += lq;
            delta(c, j) = lp - lq;
        }
        base[c] = sum;
    }
}

std::vector<double> NbModel::log_joint(const SparseBinaryVector& x) const {
    if (x.dim != log_p1.cols) throw Error("nb: input dimension mismatch");
    std::vector<double> s = base;
    for (size_t c = 0; c < s.size(); ++c) {
        auto row = delta.row(c);
        for (size_t j : x.indices) s[c] += row[j];
    }
    return s;
}

size_t NbModel::predict(const SparseBinaryVector& x) const { return argmax_smallest(log_joint(x)); }

NbModel train_nb(const std::vector<SparseBinaryVector>& x, const std::vector<size_t>& y,
                 const LabelSpace& labels) {
    check_training_data(x, y, labels);
    const size_t k = labels.size();
    const size_t d = x[0].dim;
    const size_t n = x.size();

    std::vector<size_t> class_count(k, 0);
    DenseMatrix on_count(k, d);
    for (size_t i = 0; i < n; ++i) {
        ++class_count[y[i]];
        auto row = on_count.row(y[i]);
        for (size_t j : x[i].indices) row[j] += 1.0;
    }

    NbModel model;
    model.labels = labels;
    model.log_prior.resize(k);
    model.log_p1 = DenseMatrix(k, d);
    for (size_t c = 0; c < k; ++c) {
        if (class_count[c] == 0) throw Error("nb: label \"" + labels.label(c) + "\" has no training instances");
        model.log_prior[c] = std::log(static_cast<double>(class_count[c]) / static_cast<double>(n));
        double denom = static_cast<double>(class_count[c] + 2);
        for (size_t j = 0; j < d; ++j) {
            model.log_p1(c, j) = std::log((on_count(c, j) + 1.0) / denom);
        }
    }
    model.rebuild_cache();
    return model;
}

namespace {

double sparse_sq_dist(const SparseBinaryVector& a, const SparseBinaryVector& b) {
    size_t inter = intersection_size(a, b);
    return static_cast<double>(a.indices.size() + b.indices.size() - 2 * inter);
}

double sparse_cos_dist(const SparseBinaryVector& a, const SparseBinaryVector& b) {
    if (a.indices.empty() || b.indices.empty()) return 1.0;
    double inter = static_cast<double>(intersection_size(a, b));
    double sim = inter / (std::sqrt(static_cast<double>(a.indices.size())) *
                          std::sqrt(static_cast<double>(b.indices.size())));
    return 1.0 - sim;
}

size_t vote(const std::vector<std::pair<double, size_t>>& dist_idx, const std::vector<size_t>& train_y,
            size_t k, size_t n_labels) {
    size_t use = std::min(k, dist_idx.size());
    if (use == 1) {
        size_t best = 0;
        for (size_t i = 1; i < dist_idx.size(); ++i) {
            if (dist_idx[i] < dist_idx[best]) best = i;
        }
        return train_y[dist_idx[best].second];
    }
    std::vector<std::pair<double, size_t>> order = dist_idx;
    std::sort(order.begin(), order.end());
    std::vector<size_t> counts(n_labels, 0);
    for (size_t i = 0; i < use; ++i) ++counts[train_y[order[i].second]];
    size_t arg = 0;
    for (size_t c = 1; c < counts.size(); ++c) {
        if (counts[c] > counts[arg]) arg = c;
    }
    return arg;
}

} // namespace

KnnModel train_knn(std::vector<SparseBinaryVector> x, std::vector<size_t> y,
                   const LabelSpace& labels, size_t k, bool cosine) {
    check_training_data(x, y, labels);
    if (k == 0) throw Error("knn: k must be positive");
    KnnModel model;
    model.labels = labels;
    model.train_x = std::move(x);
    model.train_y = std::move(y);
    model.k = k;
    model.cosine = cosine;
    return model;
}

size_t KnnModel::predict(const SparseBinaryVector& x) const {
    if (x.dim != train_x[0].dim) throw Error("knn: input dimension mismatch");
    std::vector<std::pair<double, size_t>> dist_idx;
    dist_idx.reserve(train_x.size());
    for (size_t i = 0; i < train_x.size(); ++i) {
        double d = cosine ? sparse_cos_dist(x, train_x[i]) : sparse_sq_dist(x, train_x[i]);
        dist_idx.emplace_back(d, i);
    }
    return vote(dist_idx, train_y, k, labels.size());
}

size_t knn_predict_dense(const DenseMatrix& train_x, const std::vector<size_t>& train_y,
                         std::span<const double> x, size_t k, bool cosine) {
    if (train_x.rows == 0) throw Error("knn: empty training set");
    if (x.size() != train_x.cols) throw Error("knn: input dimension mismatch");
    size_t n_labels = *std::max_element(train_y.begin(), train_y.end()) + 1;
    std::vector<std::pair<double, size_t>> dist_idx;
    dist_idx.reserve(train_x.rows);
    double xn = std::sqrt(dot(x, x));
    for (size_t i = 0; i < train_x.rows; ++i) {
        auto row = train_x.row(i);
        double d;
        if (cosine) {
            double rn = std::sqrt(dot(row, row));
            d = (xn == 0.0 || rn == 0.0) ? 1.0 : 1.0 - dot(row, x) / (rn * xn);
        } else {
            d = squared_distance(row, x);
        }
        dist_idx.emplace_back(d, i);
    }
    return vote(dist_idx, train_y, k, n_labels);
}

PcaKnnModel train_pca_knn(const std::vector<SparseBinaryVector>& x, const std::vector<size_t>& y,
                          const LabelSpace& labels, size_t dim, size_t k, bool cosine) {
    check_training_data(x, y, labels);
    DenseMatrix dense(x.size(), x[0].dim);
    for (size_t i = 0; i < x.size(); ++i) {
        for (size_t j : x[i].indices) dense(i, j) = 1.0;
    }
    PcaKnnModel model;
    model.labels = labels;
    model.pca = pca_fit(dense, dim);
    model.train_y = y;
    model.k = k;
    model.cosine = cosine;
    model.train_z = DenseMatrix(x.size(), model.pca.output_dim());
    for (size_t i = 0; i < x.size(); ++i) {
        std::vector<double> z = pca_project(model.pca, dense.row(i));
        for (size_t j = 0; j < z.size(); ++j) model.train_z(i, j) = z[j];
    }
    return model;
}

size_t PcaKnnModel::predict(const SparseBinaryVector& x) const {
    std::vector<double> dense = to_dense(x);
    std::vector<double> z = pca_project(pca, dense);
    return knn_predict_dense(train_z, train_y, z, k, cosine);
}

KpcaKnnModel train_kpca_knn(const std::vector<SparseBinaryVector>& x, const std::vector<size_t>& y,
                            const LabelSpace& labels, const KernelSpec& kernel, size_t dim,
                            size_t k, bool cosine) {
    check_training_data(x, y, labels);
    DenseMatrix dense(x.size(), x[0].dim);
    for (size_t i = 0; i < x.size(); ++i) {
        for (size_t j : x[i].indices) dense(i, j) = 1.0;
    }
    KpcaKnnModel model;
    model.labels = labels;
    model.kpca = kpca_fit(dense, kernel, dim);
    model.train_y = y;
    model.k = k;
    model.cosine = cosine;
    return model;
}

size_t KpcaKnnModel::predict(const SparseBinaryVector& x) const {
    std::vector<double> dense = to_dense(x);
    std::vector<double> z = kpca_project(kpca, dense);
    return knn_predict_dense(kpca.train_projections, train_y, z, k, cosine);
}

std::vector<double> LinearModel::scores(const SparseBinaryVector& x) const {
    if (x.dim != w.cols) throw Error("linear model: input dimension mismatch");
    std::vector<double> s = b;
    for (size_t c = 0; c < s.size(); ++c) {
        auto row = w.row(c);
        for (size_t j : x.indices) s[c] += row[j];
    }
    return s;
}

size_t LinearModel::predict(const SparseBinaryVector& x) const { return argmax_smallest(scores(x)); }

namespace {

template <typename Model>
double label_accuracy(const Model& model, const std::vector<SparseBinaryVector>& x,
                      const std::vector<size_t>& y) {
    size_t correct = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (model.predict(x[i]) == y[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(x.size());
}

bool all_finite(std::span<const double> v) {
    for (double e : v)
        if (!std::isfinite(e)) return false;
    return true;
}

} // namespace

LinearModel train_logreg(const std::vector<SparseBinaryVector>& x, const std::vector<size_t>& y,
                         const LabelSpace& labels, const TrainConfig& cfg,
                         const std::vector<SparseBinaryVector>& dev_x,
                         const std::vector<size_t>& dev_y) {
    check_training_data(x, y, labels);
    const size_t k = labels.size();
    const size_t d = x[0].dim;

    LinearModel model;
    model.labels = labels;
    model.w = DenseMatrix(k, d);
    model.b.assign(k, 0.0);

    Rng rng(cfg.seed);
    std::vector<size_t> order(x.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    LinearModel best = model;
    double best_score = -1.0;
    size_t since_best = 0;
    const bool use_dev = !dev_x.empty();

    for (size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        for (size_t i : order) {
            std::vector<double> p = model.scores(x[i]);
            double z_target = p[y[i]];
            double lse = softmax_in_place(p);
            if (!std::isfinite(lse - z_target)) {
                throw Error("logreg: non-finite loss at epoch " + std::to_string(epoch + 1));
            }
            for (size_t c = 0; c < k; ++c) {
                double g = p[c] - (c == y[i] ? 1.0 : 0.0);
                double step = cfg.logreg_rate * g;
                if (step == 0.0) continue;
                model.b[c] -= step;
                auto row = model.w.row(c);
                for (size_t j : x[i].indices) row[j] -= step;
            }
        }
        if (!all_finite(model.w.data) || !all_finite(model.b))
            throw Error("logreg: training diverged (non-finite parameters)");
        if (use_dev) {
            double score = label_accuracy(model, dev_x, dev_y);
            if (score > best_score) {
                best_score = score;
                best = model;
                since_best = 0;
            } else if (++since_best >= cfg.patience) {
                break;
            }
        }
    }
    return use_dev ? best : model;
}

double logreg_loss_and_grad(const LinearModel& model, std::span<const double> x, size_t target,
                            DenseMatrix& gw, std::vector<double>& gb) {
    if (x.size() != model.w.cols) throw Error("linear model: input dimension mismatch");
    if (target >= model.w.rows) throw Error("linear model: target out of range");
    const size_t k = model.w.rows;
    std::vector<double> z = model.b;
    for (size_t c = 0; c < k; ++c) z[c] += dot(model.w.row(c), x);
    double target_pre = z[target];
    double lse = softmax_in_place(z);
    gw = DenseMatrix(k, model.w.cols);
    gb.assign(k, 0.0);
    for (size_t c = 0; c < k; ++c) {
        double g = z[c] - (c == target ? 1.0 : 0.0);
        gb[c] = g;
        auto row = gw.row(c);
        for (size_t j = 0; j < x.size(); ++j) row[j] = g * x[j];
    }
    return lse - target_pre;
}

MlpModel train_mlp(const std::vector<SparseBinaryVector>& x, const std::vector<size_t>& y,
                   const LabelSpace& labels, const TrainConfig& cfg,
                   const std::vector<SparseBinaryVector>& dev_x, const std::vector<size_t>& dev_y) {
    check_training_data(x, y, labels);
    if (cfg.hidden == 0) throw Error("mlp: hidden size must be positive");

    Rng rng(cfg.seed);
    MlpModel model;
    model.labels = labels;
    model.net = FeedForwardNet::glorot({x[0].dim, cfg.hidden, labels.size()}, rng);

    std::vector<size_t> order(x.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;

    FeedForwardNet best = model.net;
    double best_score = -1.0;
    size_t since_best = 0;
    const bool use_dev = !dev_x.empty();

    for (size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(order);
        for (size_t i : order) {
            double loss = model.net.sgd_step(x[i], y[i], cfg.mlp_rate);
            if (!std::isfinite(loss)) {
                throw Error("mlp: non-finite loss at epoch " + std::to_string(epoch + 1));
            }
        }
        if (!model.net.finite_parameters())
            throw Error("mlp: training diverged (non-finite parameters)");
        if (use_dev) {
            double score = label_accuracy(model, dev_x, dev_y);
            if (score > best_score) {
                best_score = score;
                best = model.net;
                since_best = 0;
            } else if (++since_best >= cfg.patience) {
                break;
            }
        }
    }
    if (use_dev) model.net = std::move(best);
    return model;
}

LinearModel train_linear_svm(const std::vector<SparseBinaryVector>& x, const std::vector<size_t>& y,
                             const LabelSpace& labels, const TrainConfig& cfg,
                             const SvmObserver& observer) {
    check_training_data(x, y, labels);
    const size_t k = labels.size();
    const size_t d = x[0].dim;
    const size_t n = x.size();

    LinearModel model;
    model.labels = labels;
    model.w = DenseMatrix(k, d);
    model.b.assign(k, 0.0);
    if (k == 1) return model;

    for (size_t c = 0; c < k; ++c) {
        std::vector<double> w(d, 0.0);
        double b = 0.0;
        std::vector<double> w_avg;
        double b_avg = 0.0;
        if (observer) w_avg.assign(d, 0.0);

        Rng rng(class_seed(cfg.seed, c));
        std::vector<size_t> order(n);
        for (size_t i = 0; i < n; ++i) order[i] = i;

        size_t t = 0;
        for (size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
            rng.shuffle(order);
            for (size_t i : order) {
                double yi = (y[i] == c) ? 1.0 : -1.0;
                double score = b;
                for (size_t j : x[i].indices) score += w[j];
                double eta = 1.0 / static_cast<double>(t + 1);
                double shrink = 1.0 - eta;
                for (double& v : w) v *= shrink;
                if (yi * score < 1.0) {
                    double step = eta * cfg.svm_c * yi;
                    for (size_t j : x[i].indices) w[j] += step;
                    b += step;
                }
                ++t;
                if (observer) {
                    double mix = 1.0 / static_cast<double>(t);
                    for (size_t j = 0; j < d; ++j) w_avg[j] += (w[j] - w_avg[j]) * mix;
                    b_avg += (b - b_avg) * mix;
                }
            }
            if (observer) {
                observer(SvmEpochState{c, epoch, std::span<const double>(w), b,
                                       std::span<const double>(w_avg), b_avg});
            }
        }
        auto row = model.w.row(c);
        std::copy(w.begin(), w.end(), row.begin());
        model.b[c] = b;
    }
    return model;
}

double svm_binary_objective(std::span<const double> w, double b,
                            const std::vector<SparseBinaryVector>& x, const std::vector<int>& y_pm,
                            double c) {
    double obj = 0.5 * dot(w, w);
    for (size_t i = 0; i < x.size(); ++i) {
        double score = b;
        for (size_t j : x[i].indices) score += w[j];
        double hinge = 1.0 - static_cast<double>(y_pm[i]) * score;
        if (hinge > 0.0) obj += c * hinge;
    }
    return obj;
}

std::vector<double> KernelSvmModel::scores(const SparseBinaryVector& x) const {
    if (x.dim != train_x[0].dim) throw Error("kernel svm: input dimension mismatch");
    const size_t n = train_x.size();
    std::vector<double> kv(n);
    for (size_t j = 0; j < n; ++j) kv[j] = kernel_eval(kernel, train_x[j], x);
    std::vector<double> s = b;
    for (size_t c = 0; c < s.size(); ++c) {
        auto row = beta.row(c);
        double acc = 0.0;
        for (size_t j = 0; j < n; ++j) acc += row[j] * kv[j];
        s[c] += acc;
    }
    return s;
}

size_t KernelSvmModel::predict(const SparseBinaryVector& x) const {
    return argmax_smallest(scores(x));
}

KernelSvmModel train_kernel_svm(const std::vector<SparseBinaryVector>& x,
                                const std::vector<size_t>& y, const LabelSpace& labels,
                                const KernelSpec& kernel, const TrainConfig& cfg) {
    check_training_data(x, y, labels);
    const size_t k = labels.size();
    const size_t n = x.size();

    KernelSvmModel model;
    model.labels = labels;
    model.train_x = x;
    model.kernel = kernel;
    model.beta = DenseMatrix(k, n);
    model.b.assign(k, 0.0);
    if (k == 1) return model;

    DenseMatrix gm = gram(x, kernel);

    for (size_t c = 0; c < k; ++c) {
        std::vector<double> beta(n, 0.0);
        double b = 0.0;

        Rng rng(class_seed(cfg.seed, c));
        std::vector<size_t> order(n);
        for (size_t i = 0; i < n; ++i) order[i] = i;

        size_t t = 0;
        for (size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
            rng.shuffle(order);
            for (size_t i : order) {
                double yi = (y[i] == c) ? 1.0 : -1.0;
                double score = b;
                auto grow = gm.row(i);
                for (size_t j = 0; j < n; ++j) score += beta[j] * grow[j];
                double eta = 1.0 / static_cast<double>(t + 1);
                double shrink = 1.0 - eta;
                for (double& v : beta) v *= shrink;
                if (yi * score < 1.0) {
                    double step = eta * cfg.svm_c * yi;
                    beta[i] += step;
                    b += step;
                }
                ++t;
            }
        }
        auto row = model.beta.row(c);
        std::copy(beta.begin(), beta.end(), row.begin());
        model.b[c] = b;
    }
    return model;
}

} // namespace wsd
