#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wsdbench/baselines.hpp"
#include "wsdbench/features.hpp"
#include "wsdbench/linalg.hpp"
#include "wsdbench/net.hpp"
#include "wsdbench/rng.hpp"

namespace wsd {

/// Restricted Boltzmann machine with binary units. w is hidden x visible.
struct RbmLayer {
    DenseMatrix w;
    std::vector<double> b_v;
    std::vector<double> b_h;

    size_t visible() const { return w.cols; }
    size_t hidden() const { return w.rows; }
};

/// Weights uniform in +-0.01 * sqrt(1 / visible), biases zero.
RbmLayer rbm_init(size_t visible, size_t hidden, Rng& rng);

/// P(h_i = 1 | v) = sigmoid(b_h_i + sum_j w_ij v_j), and the visible-side
/// mirror.
std::vector<double> hidden_probs(const RbmLayer& rbm, std::span<const double> v);
std::vector<double> visible_probs(const RbmLayer& rbm, std::span<const double> h);

/// E(v, h) = -sum_i sum_j h_i w_ij v_j - b_v . v - b_h . h
double rbm_energy(const RbmLayer& rbm, std::span<const double> v, std::span<const double> h);

/// One contrastive divergence step over a batch: h0 is sampled from
/// P(h | v0); v1 and h1 stay probabilities. The positive statistics use the
/// h0 samples, the negative ones the (h1, v1) probabilities, and updates are
/// averaged over the batch. Returns the mean reconstruction cross-entropy
/// between v0 and v1.
double cd1_update(RbmLayer& rbm, const std::vector<std::vector<double>>& batch, double rate,
                  Rng& rng);

/// Single-instance form (a batch of one, without the scratch buffers).
double cd1_update(RbmLayer& rbm, std::span<const double> v0, double rate, Rng& rng);

struct DbnSchedule {
    std::vector<size_t> layer_sizes{100, 100, 100};
    size_t pretrain_epochs = 25;
    double pretrain_rate = 0.1;
    double finetune_rate = 1.0;
    /// 0 selects the count from finetune_grid on a dev split; a positive
    /// value is used directly.
    size_t finetune_epochs = 0;
    std::vector<size_t> finetune_grid{10, 25, 50, 100, 200};
    uint64_t seed = 42;
};

struct PretrainResult {
    std::vector<RbmLayer> layers;
    /// epoch_ce[layer][epoch] = mean reconstruction cross-entropy.
    std::vector<std::vector<double>> epoch_ce;
};

/// Greedy layerwise training. Each RBM sees one instance per update in a
/// shuffled order; layer k + 1 trains on layer k's hidden probabilities.
PretrainResult pretrain(const std::vector<std::vector<double>>& x, const DbnSchedule& schedule);

struct DbnModel {
    LabelSpace labels;
    FeedForwardNet net;
    size_t finetune_epochs = 0;

    size_t predict(const SparseBinaryVector& x) const { return net.predict(x); }
    size_t predict(std::span<const double> x) const { return net.predict(x); }
};

/// Stacks the pretrained layers under a zero-initialized softmax head and
/// trains the whole net by per-instance backprop. With finetune_epochs == 0
/// the epoch count comes from the grid by dev micro recall (ties to the
/// smallest; 25 when dev is empty), retraining from the pretrained weights on
/// train plus dev at the chosen count.
DbnModel finetune(const std::vector<RbmLayer>& layers, const std::vector<SparseBinaryVector>& x,
                  const std::vector<size_t>& y, const LabelSpace& labels,
                  const DbnSchedule& schedule, const std::vector<SparseBinaryVector>& dev_x = {},
                  const std::vector<size_t>& dev_y = {});

/// pretrain + finetune on sparse inputs (densified for the RBMs).
DbnModel train_dbn(const std::vector<SparseBinaryVector>& x, const std::vector<size_t>& y,
                   const LabelSpace& labels, const DbnSchedule& schedule,
                   const std::vector<SparseBinaryVector>& dev_x = {},
                   const std::vector<size_t>& dev_y = {});

} // namespace wsd
