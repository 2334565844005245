#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "wsdbench/features.hpp"
#include "wsdbench/net.hpp"
#include "wsdbench/rng.hpp"

using namespace wsd;

TEST_CASE("sigmoid") {
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(sigmoid(2.0) == doctest::Approx(1.0 / (1.0 + std::exp(-2.0))));
    CHECK(sigmoid(-3.0) == doctest::Approx(1.0 - sigmoid(3.0)));
    CHECK(sigmoid(1000.0) == doctest::Approx(1.0));
    CHECK(sigmoid(-1000.0) == doctest::Approx(0.0));
    CHECK(std::isfinite(sigmoid(-1e6)));
    CHECK(std::isfinite(sigmoid(1e6)));
}

TEST_CASE("softmax with max subtraction") {
    SUBCASE("uniform") {
        std::vector<double> z{0.0, 0.0};
        double lse = softmax_in_place(z);
        CHECK(z[0] == doctest::Approx(0.5));
        CHECK(z[1] == doctest::Approx(0.5));
        CHECK(lse == doctest::Approx(std::log(2.0)));
    }
    SUBCASE("large inputs do not overflow") {
        std::vector<double> z{1000.0, 1000.0};
        double lse = softmax_in_place(z);
        CHECK(z[0] == doctest::Approx(0.5));
        CHECK(lse == doctest::Approx(1000.0 + std::log(2.0)));
    }
    SUBCASE("shift invariance") {
        std::vector<double> a{0.3, -1.2, 2.0};
        std::vector<double> b{0.3 + 7.0, -1.2 + 7.0, 2.0 + 7.0};
        softmax_in_place(a);
        softmax_in_place(b);
        for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]));
        double sum = a[0] + a[1] + a[2];
        CHECK(sum == doctest::Approx(1.0));
    }
}

TEST_CASE("glorot initialization") {
    Rng rng(5);
    FeedForwardNet net = FeedForwardNet::glorot({3, 4, 2}, rng);
    CHECK(net.input_dim() == 3);
    CHECK(net.output_dim() == 2);
    CHECK(net.layer_count() == 2);
    REQUIRE(net.weights().size() == 2);
    CHECK(net.weights()[0].rows == 4);
    CHECK(net.weights()[0].cols == 3);
    CHECK(net.weights()[1].rows == 2);
    CHECK(net.weights()[1].cols == 4);

    double bound0 = std::sqrt(6.0 / (3 + 4));
    for (double v : net.weights()[0].data) CHECK(std::abs(v) <= bound0);
    double bound1 = std::sqrt(6.0 / (4 + 2));
    for (double v : net.weights()[1].data) CHECK(std::abs(v) <= bound1);
    for (const auto& b : net.biases()) {
        for (double v : b) CHECK(v == 0.0);
    }

    Rng rng2(5);
    FeedForwardNet again = FeedForwardNet::glorot({3, 4, 2}, rng2);
    CHECK(again.weights()[0].data == net.weights()[0].data);
    CHECK(again.weights()[1].data == net.weights()[1].data);
}

TEST_CASE("forward pass matches the layer formulas") {
    // 2 -> 2 -> 2, parameters chosen by hand.
    DenseMatrix w0(2, 2);
    w0(0, 0) = 1.0;
    w0(0, 1) = -1.0;
    w0(1, 0) = 0.5;
    w0(1, 1) = 0.5;
    DenseMatrix w1(2, 2);
    w1(0, 0) = 2.0;
    w1(1, 1) = 2.0;
    FeedForwardNet net({w0, w1}, {{0.0, -0.5}, {0.1, -0.1}});

    std::vector<double> x{1.0, 0.5};
    double h0 = sigmoid(1.0 * 1.0 - 1.0 * 0.5 + 0.0);
    double h1 = sigmoid(0.5 * 1.0 + 0.5 * 0.5 - 0.5);
    double z0 = 2.0 * h0 + 0.1;
    double z1 = 2.0 * h1 - 0.1;
    double p0 = std::exp(z0) / (std::exp(z0) + std::exp(z1));

    auto acts = net.forward(x);
    REQUIRE(acts.size() == 2);
    CHECK(acts[0][0] == doctest::Approx(h0));
    CHECK(acts[0][1] == doctest::Approx(h1));
    CHECK(acts[1][0] == doctest::Approx(p0));
    CHECK(acts[1][1] == doctest::Approx(1.0 - p0));

    auto probs = net.probabilities(x);
    CHECK(probs == acts.back());
    CHECK(net.predict(x) == (p0 >= 0.5 ? 0u : 1u));
    CHECK(net.loss(x, 0) == doctest::Approx(-std::log(p0)));
}

TEST_CASE("sparse and dense inputs agree") {
    Rng rng(11);
    FeedForwardNet net = FeedForwardNet::glorot({5, 3, 2}, rng);
    SparseBinaryVector sx{{0, 3}, 5};
    std::vector<double> dx = to_dense(sx);
    CHECK(net.forward(sx) == net.forward(dx));
    CHECK(net.probabilities(sx) == net.probabilities(dx));
    CHECK(net.predict(sx) == net.predict(dx));
    CHECK(net.loss(sx, 1) == net.loss(dx, 1));
}

TEST_CASE("prediction ties go to the smallest index") {
    DenseMatrix w0(3, 2); // all zero
    FeedForwardNet net({w0}, {{0.0, 0.0, 0.0}});
    CHECK(net.predict(std::vector<double>{0.4, -0.2}) == 0);
}

TEST_CASE("backpropagation matches numeric gradients") {
    Rng rng(23);
    FeedForwardNet net = FeedForwardNet::glorot({3, 4, 2}, rng);
    std::vector<double> x{0.8, -0.3, 0.5};
    const size_t target = 1;

    NetGradients g = net.zero_gradients();
    double loss = net.loss_and_gradients(x, target, g);
    CHECK(loss == doctest::Approx(net.loss(x, target)));

    const double eps = 1e-6;
    for (size_t l = 0; l < net.layer_count(); ++l) {
        for (size_t i = 0; i < net.weights()[l].data.size(); ++i) {
            double saved = net.weights()[l].data[i];
            net.weights()[l].data[i] = saved + eps;
            double up = net.loss(x, target);
            net.weights()[l].data[i] = saved - eps;
            double down = net.loss(x, target);
            net.weights()[l].data[i] = saved;
            double numeric = (up - down) / (2 * eps);
            CHECK(g.w[l].data[i] == doctest::Approx(numeric).epsilon(1e-5));
        }
        for (size_t i = 0; i < net.biases()[l].size(); ++i) {
            double saved = net.biases()[l][i];
            net.biases()[l][i] = saved + eps;
            double up = net.loss(x, target);
            net.biases()[l][i] = saved - eps;
            double down = net.loss(x, target);
            net.biases()[l][i] = saved;
            double numeric = (up - down) / (2 * eps);
            CHECK(g.b[l][i] == doctest::Approx(numeric).epsilon(1e-5));
        }
    }
}

TEST_CASE("sgd step applies rate times gradient") {
    Rng rng(29);
    FeedForwardNet a = FeedForwardNet::glorot({3, 3, 2}, rng);
    FeedForwardNet b = a;
    std::vector<double> x{0.2, 0.9, -0.4};
    const size_t target = 0;
    const double rate = 0.1;

    double before = a.loss(x, target);
    a.sgd_step(x, target, rate);
    double after = a.loss(x, target);
    CHECK(after < before);

    NetGradients g = b.zero_gradients();
    b.loss_and_gradients(x, target, g);
    for (size_t l = 0; l < b.layer_count(); ++l) {
        for (size_t i = 0; i < b.weights()[l].data.size(); ++i) {
            b.weights()[l].data[i] -= rate * g.w[l].data[i];
        }
        for (size_t i = 0; i < b.biases()[l].size(); ++i) {
            b.biases()[l][i] -= rate * g.b[l][i];
        }
    }
    for (size_t l = 0; l < a.layer_count(); ++l) {
        for (size_t i = 0; i < a.weights()[l].data.size(); ++i) {
            CHECK(a.weights()[l].data[i] == doctest::Approx(b.weights()[l].data[i]).epsilon(1e-12));
        }
        for (size_t i = 0; i < a.biases()[l].size(); ++i) {
            CHECK(a.biases()[l][i] == doctest::Approx(b.biases()[l][i]).epsilon(1e-12));
        }
    }

    SUBCASE("sparse step matches dense step") {
        Rng r2(31);
        FeedForwardNet c = FeedForwardNet::glorot({4, 2}, r2);
        FeedForwardNet d = c;
        SparseBinaryVector sx{{1, 2}, 4};
        c.sgd_step(sx, 1, 0.05);
        d.sgd_step(to_dense(sx), 1, 0.05);
        CHECK(c.weights()[0].data == d.weights()[0].data);
        CHECK(c.biases()[0] == d.biases()[0]);
    }
}

TEST_CASE("finite parameter detection") {
    Rng rng(3);
    FeedForwardNet net = FeedForwardNet::glorot({2, 2}, rng);
    CHECK(net.finite_parameters());
    FeedForwardNet bad_w = net;
    bad_w.weights()[0](0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(bad_w.finite_parameters());
    FeedForwardNet bad_b = net;
    bad_b.biases()[0][1] = std::numeric_limits<double>::infinity();
    CHECK_FALSE(bad_b.finite_parameters());
}
