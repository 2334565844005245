#include "wsdbench/net.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "wsdbench/error.hpp"

namespace wsd {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

double softmax_in_place(std::vector<double>& z) {
    double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double& v : z) {
        v = std::exp(v - zmax);
        sum += v;
    }
    for (double& v : z) v /= sum;
    return std::log(sum) + zmax;
}

namespace {

struct ForwardTrace {
    std::vector<std::vector<double>> activations;
    std::vector<double> output_pre;
    double logsumexp = 0.0;
};

} // namespace

FeedForwardNet::FeedForwardNet(std::vector<DenseMatrix> w, std::vector<std::vector<double>> b)
    : w_(std::move(w)), b_(std::move(b)) {
    if (w_.empty() || w_.size() != b_.size()) throw Error("net: mismatched layer lists");
    for (size_t l = 0; l < w_.size(); ++l) {
        if (w_[l].rows == 0 || w_[l].cols == 0) throw Error("net: empty layer " + std::to_string(l));
        if (b_[l].size() != w_[l].rows) throw Error("net: bias shape mismatch at layer " + std::to_string(l));
        if (l + 1 < w_.size() && w_[l + 1].cols != w_[l].rows) {
            throw Error("net: layer " + std::to_string(l + 1) + " expects " +
                        std::to_string(w_[l + 1].cols) + " inputs, got " + std::to_string(w_[l].rows));
        }
    }
}

FeedForwardNet FeedForwardNet::glorot(const std::vector<size_t>& sizes, Rng& rng) {
    if (sizes.size() < 2) throw Error("net: need at least input and output sizes");
    std::vector<DenseMatrix> w;
    std::vector<std::vector<double>> b;
    for (size_t l = 0; l + 1 < sizes.size(); ++l) {
        size_t fan_in = sizes[l];
        size_t fan_out = sizes[l + 1];
        if (fan_in == 0 || fan_out == 0) throw Error("net: zero-width layer");
        double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        DenseMatrix m(fan_out, fan_in);
        for (size_t i = 0; i < fan_out; ++i) {
            for (size_t j = 0; j < fan_in; ++j) m(i, j) = rng.uniform(-limit, limit);
        }
        w.push_back(std::move(m));
        b.emplace_back(fan_out, 0.0);
    }
    return FeedForwardNet(std::move(w), std::move(b));
}

size_t FeedForwardNet::input_dim() const { return w_.front().cols; }
size_t FeedForwardNet::output_dim() const { return w_.back().rows; }

std::vector<double> FeedForwardNet::first_preactivation(std::span<const double> x) const {
    const DenseMatrix& w = w_.front();
    if (x.size() != w.cols) {
        throw Error("net: input has dimension " + std::to_string(x.size()) + ", expected " +
                    std::to_string(w.cols));
    }
    std::vector<double> z = b_.front();
    for (size_t i = 0; i < w.rows; ++i) z[i] += dot(w.row(i), x);
    return z;
}

std::vector<double> FeedForwardNet::first_preactivation(const SparseBinaryVector& x) const {
    const DenseMatrix& w = w_.front();
    if (x.dim != w.cols) {
        throw Error("net: input has dimension " + std::to_string(x.dim) + ", expected " +
                    std::to_string(w.cols));
    }
    std::vector<double> z = b_.front();
    for (size_t i = 0; i < w.rows; ++i) {
        auto row = w.row(i);
        double s = 0.0;
        for (size_t j : x.indices) s += row[j];
        z[i] += s;
    }
    return z;
}

namespace {

ForwardTrace run_forward(const std::vector<DenseMatrix>& w, const std::vector<std::vector<double>>& b,
                         std::vector<double> z) {
    ForwardTrace trace;
    trace.activations.reserve(w.size());
    for (size_t l = 0;; ++l) {
        if (l + 1 == w.size()) {
            trace.output_pre = z;
            trace.logsumexp = softmax_in_place(z);
            trace.activations.push_back(std::move(z));
            break;
        }
        for (double& v : z) v = sigmoid(v);
        trace.activations.push_back(z);
        const DenseMatrix& wn = w[l + 1];
        std::vector<double> next = b[l + 1];
        for (size_t i = 0; i < wn.rows; ++i) next[i] += dot(wn.row(i), trace.activations.back());
        z = std::move(next);
    }
    return trace;
}

size_t argmax_smallest(const std::vector<double>& p) {
    size_t arg = 0;
    for (size_t i = 1; i < p.size(); ++i) {
        if (p[i] > p[arg]) arg = i;
    }
    return arg;
}

} // namespace

std::vector<std::vector<double>> FeedForwardNet::forward(std::span<const double> x) const {
    return run_forward(w_, b_, first_preactivation(x)).activations;
}

std::vector<std::vector<double>> FeedForwardNet::forward(const SparseBinaryVector& x) const {
    return run_forward(w_, b_, first_preactivation(x)).activations;
}

std::vector<double> FeedForwardNet::probabilities(std::span<const double> x) const {
    return run_forward(w_, b_, first_preactivation(x)).activations.back();
}

std::vector<double> FeedForwardNet::probabilities(const SparseBinaryVector& x) const {
    return run_forward(w_, b_, first_preactivation(x)).activations.back();
}

size_t FeedForwardNet::predict(std::span<const double> x) const {
    return argmax_smallest(probabilities(x));
}

size_t FeedForwardNet::predict(const SparseBinaryVector& x) const {
    return argmax_smallest(probabilities(x));
}

double FeedForwardNet::loss(std::span<const double> x, size_t target) const {
    if (target >= output_dim()) throw Error("net: target out of range");
    ForwardTrace trace = run_forward(w_, b_, first_preactivation(x));
    return trace.logsumexp - trace.output_pre[target];
}

double FeedForwardNet::loss(const SparseBinaryVector& x, size_t target) const {
    if (target >= output_dim()) throw Error("net: target out of range");
    ForwardTrace trace = run_forward(w_, b_, first_preactivation(x));
    return trace.logsumexp - trace.output_pre[target];
}

NetGradients FeedForwardNet::zero_gradients() const {
    NetGradients g;
    for (size_t l = 0; l < w_.size(); ++l) {
        g.w.emplace_back(w_[l].rows, w_[l].cols);
        g.b.emplace_back(w_[l].rows, 0.0);
    }
    return g;
}

bool FeedForwardNet::finite_parameters() const {
    for (const DenseMatrix& m : w_)
        for (double e : m.data)
            if (!std::isfinite(e)) return false;
    for (const std::vector<double>& v : b_)
        for (double e : v)
            if (!std::isfinite(e)) return false;
    return true;
}

double FeedForwardNet::loss_and_gradients(std::span<const double> x, size_t target,
                                          NetGradients& g) const {
    if (target >= output_dim()) throw Error("net: target out of range");
    if (g.w.size() != w_.size()) g = zero_gradients();
    ForwardTrace trace = run_forward(w_, b_, first_preactivation(x));
    const size_t last = w_.size() - 1;

    std::vector<double> delta = trace.activations[last];
    delta[target] -= 1.0;

    for (size_t l = last + 1; l-- > 0;) {
        DenseMatrix& gw = g.w[l];
        std::vector<double>& gb = g.b[l];
        if (l == 0) {
            for (size_t i = 0; i < gw.rows; ++i) {
                double d = delta[i];
                gb[i] = d;
                auto row = gw.row(i);
                for (size_t j = 0; j < gw.cols; ++j) row[j] = d * x[j];
            }
            break;
        }
        const std::vector<double>& prev = trace.activations[l - 1];
        for (size_t i = 0; i < gw.rows; ++i) {
            double d = delta[i];
            gb[i] = d;
            auto row = gw.row(i);
            for (size_t j = 0; j < gw.cols; ++j) row[j] = d * prev[j];
        }
        std::vector<double> next(w_[l].cols, 0.0);
        for (size_t i = 0; i < w_[l].rows; ++i) {
            double d = delta[i];
            if (d == 0.0) continue;
            auto row = w_[l].row(i);
            for (size_t j = 0; j < w_[l].cols; ++j) next[j] += d * row[j];
        }
        for (size_t j = 0; j < next.size(); ++j) next[j] *= prev[j] * (1.0 - prev[j]);
        delta = std::move(next);
    }
    return trace.logsumexp - trace.output_pre[target];
}

template <typename Input>
double FeedForwardNet::sgd_step_impl(const Input& x, size_t target, double rate) {
    if (target >= output_dim()) throw Error("net: target out of range");
    ForwardTrace trace = run_forward(w_, b_, first_preactivation(x));
    double loss = trace.logsumexp - trace.output_pre[target];
    const size_t last = w_.size() - 1;

    std::vector<double> delta = trace.activations[last];
    delta[target] -= 1.0;

    for (size_t l = last + 1; l-- > 0;) {
        std::vector<double> next;
        if (l > 0) {
            const std::vector<double>& prev = trace.activations[l - 1];
            next.assign(w_[l].cols, 0.0);
            for (size_t i = 0; i < w_[l].rows; ++i) {
                double d = delta[i];
                if (d == 0.0) continue;
                auto row = w_[l].row(i);
                for (size_t j = 0; j < w_[l].cols; ++j) next[j] += d * row[j];
            }
            for (size_t j = 0; j < next.size(); ++j) next[j] *= prev[j] * (1.0 - prev[j]);
            for (size_t i = 0; i < w_[l].rows; ++i) {
                double step = rate * delta[i];
                b_[l][i] -= step;
                if (step == 0.0) continue;
                auto row = w_[l].row(i);
                for (size_t j = 0; j < w_[l].cols; ++j) row[j] -= step * prev[j];
            }
        } else {
            for (size_t i = 0; i < w_[0].rows; ++i) {
                double step = rate * delta[i];
                b_[0][i] -= step;
                if (step == 0.0) continue;
                auto row = w_[0].row(i);
                if constexpr (std::is_same_v<Input, SparseBinaryVector>) {
                    for (size_t j : x.indices) row[j] -= step;
                } else {
                    for (size_t j = 0; j < w_[0].cols; ++j) row[j] -= step * x[j];
                }
            }
            break;
        }
        delta = std::move(next);
    }
    return loss;
}

double FeedForwardNet::sgd_step(std::span<const double> x, size_t target, double rate) {
    return sgd_step_impl(x, target, rate);
}

double FeedForwardNet::sgd_step(const SparseBinaryVector& x, size_t target, double rate) {
    return sgd_step_impl(x, target, rate);
}

} // namespace wsd
