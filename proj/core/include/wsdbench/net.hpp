#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wsdbench/features.hpp"
#include "wsdbench/linalg.hpp"
#include "wsdbench/rng.hpp"

namespace wsd {

/// Per-parameter gradients in the same shapes as FeedForwardNet's weights.
struct NetGradients {
    std::vector<DenseMatrix> w;
    std::vector<std::vector<double>> b;
};

/// Fully connected net: sigmoid hidden layers, softmax output, cross-entropy
/// loss. Layer l maps sizes[l] -> sizes[l+1] with w[l] of shape
/// (sizes[l+1] x sizes[l]).
class FeedForwardNet {
  public:
    FeedForwardNet() = default;
    FeedForwardNet(std::vector<DenseMatrix> w, std::vector<std::vector<double>> b);

    /// Weights uniform in +-sqrt(6 / (fan_in + fan_out)), biases zero.
    static FeedForwardNet glorot(const std::vector<size_t>& sizes, Rng& rng);

    size_t input_dim() const;
    size_t output_dim() const;
    size_t layer_count() const { return w_.size(); }
    const std::vector<DenseMatrix>& weights() const { return w_; }
    const std::vector<std::vector<double>>& biases() const { return b_; }
    std::vector<DenseMatrix>& weights() { return w_; }
    std::vector<std::vector<double>>& biases() { return b_; }

    /// Activations of every layer, output last. activations[l] has sizes[l+1]
    /// entries; the final entry is the softmax distribution.
    std::vector<std::vector<double>> forward(std::span<const double> x) const;
    std::vector<std::vector<double>> forward(const SparseBinaryVector& x) const;

    std::vector<double> probabilities(std::span<const double> x) const;
    std::vector<double> probabilities(const SparseBinaryVector& x) const;

    /// Argmax of the output distribution; ties go to the smallest index.
    size_t predict(std::span<const double> x) const;
    size_t predict(const SparseBinaryVector& x) const;

    double loss(std::span<const double> x, size_t target) const;
    double loss(const SparseBinaryVector& x, size_t target) const;

    /// Fills g with d(loss)/d(parameter) for one example and returns the loss.
    double loss_and_gradients(std::span<const double> x, size_t target, NetGradients& g) const;

    /// One stochastic gradient step on one example; returns the example's
    /// loss at the pre-step parameters.
    double sgd_step(std::span<const double> x, size_t target, double rate);
    double sgd_step(const SparseBinaryVector& x, size_t target, double rate);

    NetGradients zero_gradients() const;

    /// False once any weight or bias is NaN or infinite.
    bool finite_parameters() const;

  private:
    std::vector<std::vector<double>> forward_from_first(std::vector<double> first) const;
    std::vector<double> first_preactivation(std::span<const double> x) const;
    std::vector<double> first_preactivation(const SparseBinaryVector& x) const;
    template <typename Input>
    double sgd_step_impl(const Input& x, size_t target, double rate);

    std::vector<DenseMatrix> w_;
    std::vector<std::vector<double>> b_;
};

double sigmoid(double z);

/// In-place softmax with max subtraction; returns log(sum(exp(z - max))) + max
/// so callers can form exact cross-entropy as logsumexp - z[target].
double softmax_in_place(std::vector<double>& z);

} // namespace wsd
