#include "wsdbench/dbn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wsdbench/error.hpp"

namespace wsd {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

std::vector<double> visible_pre(const RbmLayer& rbm, std::span<const double> h) {
    std::vector<double> z = rbm.b_v;
    for (size_t i = 0; i < rbm.hidden(); ++i) {
        double hi = h[i];
        if (hi == 0.0) continue;
        auto row = rbm.w.row(i);
        for (size_t j = 0; j < rbm.visible(); ++j) z[j] += hi * row[j];
    }
    return z;
}

// Cross-entropy of v0 against sigmoid(z1), computed from the preactivation:
// -sum_j v0_j log s(z_j) + (1 - v0_j) log(1 - s(z_j))
//  = sum_j softplus(z_j) - v0_j z_j  (for v0 in [0, 1]).
double recon_ce(std::span<const double> v0, const std::vector<double>& z1) {
    double ce = 0.0;
    for (size_t j = 0; j < z1.size(); ++j) ce += softplus(z1[j]) - v0[j] * z1[j];
    return ce;
}

struct Cd1Pass {
    std::vector<double> ph0; // P(h | v0)
    std::vector<double> h0;  // samples from ph0
    std::vector<double> v1;  // P(v | h0)
    std::vector<double> h1;  // P(h | v1)
    double ce = 0.0;
};

Cd1Pass cd1_pass(const RbmLayer& rbm, std::span<const double> v0, Rng& rng) {
    Cd1Pass pass;
    pass.ph0 = hidden_probs(rbm, v0);
    pass.h0.resize(pass.ph0.size());
    for (size_t i = 0; i < pass.h0.size(); ++i) pass.h0[i] = rng.bernoulli(pass.ph0[i]) ? 1.0 : 0.0;
    std::vector<double> z1 = visible_pre(rbm, pass.h0);
    pass.ce = recon_ce(v0, z1);
    pass.v1.resize(z1.size());
    for (size_t j = 0; j < z1.size(); ++j) pass.v1[j] = sigmoid(z1[j]);
    pass.h1 = hidden_probs(rbm, pass.v1);
    return pass;
}

void check_visible(const RbmLayer& rbm, std::span<const double> v) {
    if (v.size() != rbm.visible()) {
        throw Error("rbm: visible vector has dimension " + std::to_string(v.size()) +
                    ", expected " + std::to_string(rbm.visible()));
    }
}

} // namespace

RbmLayer rbm_init(size_t visible, size_t hidden, Rng& rng) {
    if (visible == 0 || hidden == 0) throw Error("rbm: zero-width layer");
    RbmLayer rbm;
    rbm.w = DenseMatrix(hidden, visible);
    double limit = 0.01 * std::sqrt(1.0 / static_cast<double>(visible));
    for (size_t i = 0; i < hidden; ++i) {
        for (size_t j = 0; j < visible; ++j) rbm.w(i, j) = rng.uniform(-limit, limit);
    }
    rbm.b_v.assign(visible, 0.0);
    rbm.b_h.assign(hidden, 0.0);
    return rbm;
}

std::vector<double> hidden_probs(const RbmLayer& rbm, std::span<const double> v) {
    check_visible(rbm, v);
    std::vector<double> p(rbm.hidden());
    for (size_t i = 0; i < rbm.hidden(); ++i) {
        p[i] = sigmoid(rbm.b_h[i] + dot(rbm.w.row(i), v));
    }
    return p;
}

std::vector<double> visible_probs(const RbmLayer& rbm, std::span<const double> h) {
    if (h.size() != rbm.hidden()) {
        throw Error("rbm: hidden vector has dimension " + std::to_string(h.size()) +
                    ", expected " + std::to_string(rbm.hidden()));
    }
    std::vector<double> z = visible_pre(rbm, h);
    for (double& v : z) v = sigmoid(v);
    return z;
}

double rbm_energy(const RbmLayer& rbm, std::span<const double> v, std::span<const double> h) {
    check_visible(rbm, v);
    if (h.size() != rbm.hidden()) throw Error("rbm: hidden vector dimension mismatch");
    double e = 0.0;
    for (size_t i = 0; i < rbm.hidden(); ++i) {
        if (h[i] == 0.0) continue;
        e -= h[i] * dot(rbm.w.row(i), v);
    }
    for (size_t j = 0; j < rbm.visible(); ++j) e -= rbm.b_v[j] * v[j];
    for (size_t i = 0; i < rbm.hidden(); ++i) e -= rbm.b_h[i] * h[i];
    return e;
}

double cd1_update(RbmLayer& rbm, std::span<const double> v0, double rate, Rng& rng) {
    check_visible(rbm, v0);
    Cd1Pass pass = cd1_pass(rbm, v0, rng);
    for (size_t i = 0; i < rbm.hidden(); ++i) {
        double pos = pass.h0[i];
        double neg = pass.h1[i];
        auto row = rbm.w.row(i);
        if (pos != 0.0) {
            for (size_t j = 0; j < rbm.visible(); ++j) {
                row[j] += rate * (pos * v0[j] - neg * pass.v1[j]);
            }
        } else {
            for (size_t j = 0; j < rbm.visible(); ++j) row[j] -= rate * neg * pass.v1[j];
        }
        rbm.b_h[i] += rate * (pass.ph0[i] - pass.h1[i]);
    }
    for (size_t j = 0; j < rbm.visible(); ++j) rbm.b_v[j] += rate * (v0[j] - pass.v1[j]);
    return pass.ce;
}

double cd1_update(RbmLayer& rbm, const std::vector<std::vector<double>>& batch, double rate,
                  Rng& rng) {
    if (batch.empty()) throw Error("rbm: empty batch");
    if (batch.size() == 1) return cd1_update(rbm, batch[0], rate, rng);

    DenseMatrix dw(rbm.hidden(), rbm.visible());
    std::vector<double> dbv(rbm.visible(), 0.0);
    std::vector<double> dbh(rbm.hidden(), 0.0);
    double ce = 0.0;
    for (const std::vector<double>& v0 : batch) {
        check_visible(rbm, v0);
        Cd1Pass pass = cd1_pass(rbm, v0, rng);
        ce += pass.ce;
        for (size_t i = 0; i < rbm.hidden(); ++i) {
            double pos = pass.h0[i];
            double neg = pass.h1[i];
            auto row = dw.row(i);
            if (pos != 0.0) {
                for (size_t j = 0; j < rbm.visible(); ++j) row[j] += pos * v0[j] - neg * pass.v1[j];
            } else {
                for (size_t j = 0; j < rbm.visible(); ++j) row[j] -= neg * pass.v1[j];
            }
            dbh[i] += pass.ph0[i] - pass.h1[i];
        }
        for (size_t j = 0; j < rbm.visible(); ++j) dbv[j] += v0[j] - pass.v1[j];
    }
    double scale = rate / static_cast<double>(batch.size());
    for (size_t i = 0; i < rbm.hidden(); ++i) {
        auto src = dw.row(i);
        auto dst = rbm.w.row(i);
        for (size_t j = 0; j < rbm.visible(); ++j) dst[j] += scale * src[j];
        rbm.b_h[i] += scale * dbh[i];
    }
    for (size_t j = 0; j < rbm.visible(); ++j) rbm.b_v[j] += scale * dbv[j];
    return ce / static_cast<double>(batch.size());
}

PretrainResult pretrain(const std::vector<std::vector<double>>& x, const DbnSchedule& schedule) {
    if (x.empty()) throw Error("pretrain: empty training set");
    if (schedule.layer_sizes.empty()) throw Error("pretrain: no layers requested");
    for (size_t s : schedule.layer_sizes) {
        if (s == 0) throw Error("pretrain: zero-width layer");
    }
    const size_t d = x[0].size();
    if (d == 0) throw Error("pretrain: zero-dimensional input");
    for (const std::vector<double>& v : x) {
        if (v.size() != d) throw Error("pretrain: inconsistent input dimensions");
        for (double u : v) {
            if (!(u >= 0.0 && u <= 1.0)) throw Error("pretrain: inputs must lie in [0, 1]");
        }
    }

    Rng rng(schedule.seed);
    PretrainResult result;
    std::vector<std::vector<double>> inputs = x;
    std::vector<size_t> order(x.size());

    size_t visible = d;
    for (size_t hidden : schedule.layer_sizes) {
        RbmLayer rbm = rbm_init(visible, hidden, rng);
        std::vector<double> ce_log;
        ce_log.reserve(schedule.pretrain_epochs);
        for (size_t epoch = 0; epoch < schedule.pretrain_epochs; ++epoch) {
            for (size_t i = 0; i < order.size(); ++i) order[i] = i;
            rng.shuffle(order);
            double ce = 0.0;
            for (size_t i : order) ce += cd1_update(rbm, inputs[i], schedule.pretrain_rate, rng);
            ce_log.push_back(ce / static_cast<double>(inputs.size()));
        }
        for (std::vector<double>& v : inputs) v = hidden_probs(rbm, v);
        visible = hidden;
        result.layers.push_back(std::move(rbm));
        result.epoch_ce.push_back(std::move(ce_log));
    }
    return result;
}

namespace {

FeedForwardNet stack_with_head(const std::vector<RbmLayer>& layers, size_t n_labels) {
    std::vector<DenseMatrix> w;
    std::vector<std::vector<double>> b;
    for (const RbmLayer& rbm : layers) {
        w.push_back(rbm.w);
        b.push_back(rbm.b_h);
    }
    w.emplace_back(n_labels, layers.back().hidden());
    b.emplace_back(n_labels, 0.0);
    return FeedForwardNet(std::move(w), std::move(b));
}

void run_epochs(FeedForwardNet& net, const std::vector<SparseBinaryVector>& x,
                const std::vector<size_t>& y, size_t epochs, double rate, Rng& rng) {
    std::vector<size_t> order(x.size());
    for (size_t epoch = 0; epoch < epochs; ++epoch) {
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        rng.shuffle(order);
        for (size_t i : order) {
            double loss = net.sgd_step(x[i], y[i], rate);
            if (!std::isfinite(loss)) {
                throw Error("dbn: non-finite finetuning loss at epoch " + std::to_string(epoch + 1));
            }
        }
        if (!net.finite_parameters())
            throw Error("dbn: finetuning diverged (non-finite parameters)");
    }
}

double dev_accuracy(const FeedForwardNet& net, const std::vector<SparseBinaryVector>& x,
                    const std::vector<size_t>& y) {
    size_t correct = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (net.predict(x[i]) == y[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(x.size());
}

constexpr size_t kDefaultFinetuneEpochs = 25;

} // namespace

DbnModel finetune(const std::vector<RbmLayer>& layers, const std::vector<SparseBinaryVector>& x,
                  const std::vector<size_t>& y, const LabelSpace& labels,
                  const DbnSchedule& schedule, const std::vector<SparseBinaryVector>& dev_x,
                  const std::vector<size_t>& dev_y) {
    if (layers.empty()) throw Error("finetune: no pretrained layers");
    if (x.empty()) throw Error("finetune: empty training set");
    if (x.size() != y.size() || dev_x.size() != dev_y.size()) {
        throw Error("finetune: feature/label count mismatch");
    }
    if (labels.size() == 0) throw Error("finetune: empty label space");
    if (x[0].dim != layers[0].visible()) {
        throw Error("finetune: input dimension " + std::to_string(x[0].dim) +
                    " does not match first layer (" + std::to_string(layers[0].visible()) + ")");
    }

    const uint64_t ft_seed = fnv1a64("finetune", fnv1a64(schedule.seed));
    DbnModel model;
    model.labels = labels;

    if (schedule.finetune_epochs > 0) {
        model.finetune_epochs = schedule.finetune_epochs;
        model.net = stack_with_head(layers, labels.size());
        Rng rng(ft_seed);
        run_epochs(model.net, x, y, model.finetune_epochs, schedule.finetune_rate, rng);
        return model;
    }

    size_t chosen = kDefaultFinetuneEpochs;
    if (!dev_x.empty()) {
        std::vector<size_t> grid = schedule.finetune_grid;
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
        if (grid.empty()) throw Error("finetune: empty epoch grid");
        if (grid.front() == 0) throw Error("finetune: epoch grid must be positive");
        double best = -1.0;
        bool have = false;
        for (size_t g : grid) {
            FeedForwardNet net = stack_with_head(layers, labels.size());
            Rng rng(ft_seed);
            run_epochs(net, x, y, g, schedule.finetune_rate, rng);
            double score = dev_accuracy(net, dev_x, dev_y);
            if (!have || score > best) {
                best = score;
                chosen = g;
                have = true;
            }
        }
    }

    std::vector<SparseBinaryVector> full_x = x;
    std::vector<size_t> full_y = y;
    full_x.insert(full_x.end(), dev_x.begin(), dev_x.end());
    full_y.insert(full_y.end(), dev_y.begin(), dev_y.end());

    model.finetune_epochs = chosen;
    model.net = stack_with_head(layers, labels.size());
    Rng rng(ft_seed);
    run_epochs(model.net, full_x, full_y, chosen, schedule.finetune_rate, rng);
    return model;
}

DbnModel train_dbn(const std::vector<SparseBinaryVector>& x, const std::vector<size_t>& y,
                   const LabelSpace& labels, const DbnSchedule& schedule,
                   const std::vector<SparseBinaryVector>& dev_x,
                   const std::vector<size_t>& dev_y) {
    if (x.empty()) throw Error("train: empty training set");
    std::vector<std::vector<double>> dense;
    dense.reserve(x.size() + dev_x.size());
    for (const SparseBinaryVector& v : x) dense.push_back(to_dense(v));
    for (const SparseBinaryVector& v : dev_x) dense.push_back(to_dense(v));
    PretrainResult pre = pretrain(dense, schedule);
    return finetune(pre.layers, x, y, labels, schedule, dev_x, dev_y);
}

} // namespace wsd
