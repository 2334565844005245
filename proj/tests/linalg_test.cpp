#include <doctest.h>

#include <cmath>
#include <vector>

#include "wsdbench/error.hpp"
#include "wsdbench/linalg.hpp"
#include "wsdbench/rng.hpp"

using namespace wsd;

namespace {

DenseMatrix random_symmetric(size_t n, uint64_t seed) {
    Rng rng(seed);
    DenseMatrix a(n, n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j <= i; ++j) {
            double v = rng.uniform() * 2.0 - 1.0;
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    return a;
}

} // namespace

TEST_CASE("dense matrix basics") {
    DenseMatrix a(2, 3, 1.5);
    CHECK(a.data.size() == 6);
    a(1, 2) = 4.0;
    CHECK(a(1, 2) == 4.0);
    CHECK(a.row(1)[2] == 4.0);

    DenseMatrix t = a.transposed();
    CHECK(t.rows == 3);
    CHECK(t.cols == 2);
    CHECK(t(2, 1) == 4.0);

    DenseMatrix id = DenseMatrix::identity(3);
    CHECK(id(0, 0) == 1.0);
    CHECK(id(0, 1) == 0.0);
    CHECK(frobenius_norm(id) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("vector helpers") {
    std::vector<double> a{1, 2, 3};
    std::vector<double> b{4, -1, 0.5};
    CHECK(dot(a, b) == doctest::Approx(4 - 2 + 1.5));
    CHECK(squared_distance(a, b) == doctest::Approx(9 + 9 + 6.25));
}

TEST_CASE("kernels") {
    std::vector<double> a{1, 0, 2};
    std::vector<double> b{0.5, 1, 1};

    CHECK(KernelSpec::linear().eval(a, b) == doctest::Approx(2.5));
    CHECK(KernelSpec::polynomial(2, 1.0).eval(a, b) == doctest::Approx(3.5 * 3.5));
    CHECK(KernelSpec::polynomial(3, 0.0).eval(a, b) == doctest::Approx(2.5 * 2.5 * 2.5));
    double d2 = squared_distance(a, b);
    CHECK(KernelSpec::rbf(0.25).eval(a, b) == doctest::Approx(std::exp(-0.25 * d2)));

    CHECK_THROWS_AS(KernelSpec::polynomial(0, 1.0), Error);
    CHECK_THROWS_AS(KernelSpec::rbf(0.0), Error);
    CHECK_THROWS_AS(KernelSpec::rbf(-1.0), Error);
}

TEST_CASE("covariance uses 1/n") {
    DenseMatrix x(2, 2);
    x(0, 0) = 0;
    x(0, 1) = 0;
    x(1, 0) = 2;
    x(1, 1) = 2;
    DenseMatrix c = covariance(x);
    REQUIRE(c.rows == 2);
    REQUIRE(c.cols == 2);
    for (double v : c.data) CHECK(v == doctest::Approx(1.0));

    SUBCASE("constant column gives zero row and column") {
        DenseMatrix y(3, 2);
        y(0, 0) = 1;
        y(1, 0) = 2;
        y(2, 0) = 3;
        y(0, 1) = 5;
        y(1, 1) = 5;
        y(2, 1) = 5;
        DenseMatrix cy = covariance(y);
        CHECK(cy(0, 0) == doctest::Approx(2.0 / 3.0));
        CHECK(cy(0, 1) == doctest::Approx(0.0));
        CHECK(cy(1, 1) == doctest::Approx(0.0));
    }
    SUBCASE("single row rejected") {
        DenseMatrix one(1, 2);
        CHECK_THROWS_AS(covariance(one), Error);
    }
}

TEST_CASE("symmetric eigendecomposition") {
    SUBCASE("2x2 with known spectrum") {
        DenseMatrix a(2, 2);
        a(0, 0) = 2;
        a(0, 1) = 1;
        a(1, 0) = 1;
        a(1, 1) = 2;
        EigenDecomposition e = sym_eig(a);
        REQUIRE(e.values.size() == 2);
        CHECK(e.values[0] == doctest::Approx(3.0));
        CHECK(e.values[1] == doctest::Approx(1.0));
        auto v0 = e.column(0);
        CHECK(std::abs(v0[0]) == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(v0[0] == doctest::Approx(v0[1])); // (1,1) direction
    }
    SUBCASE("diagonal matrix sorted descending") {
        DenseMatrix d(3, 3);
        d(0, 0) = -1;
        d(1, 1) = 5;
        d(2, 2) = 2;
        EigenDecomposition e = sym_eig(d);
        CHECK(e.values == std::vector<double>{5, 2, -1});
    }
    SUBCASE("random matrix satisfies A v = lambda v with orthonormal v") {
        const size_t n = 12;
        DenseMatrix a = random_symmetric(n, 99);
        EigenDecomposition e = sym_eig(a);

        double trace = 0;
        for (size_t i = 0; i < n; ++i) trace += a(i, i);
        double sum = 0;
        for (double v : e.values) sum += v;
        CHECK(sum == doctest::Approx(trace));

        for (size_t k = 0; k + 1 < n; ++k) CHECK(e.values[k] >= e.values[k + 1]);

        for (size_t k = 0; k < n; ++k) {
            auto v = e.column(k);
            for (size_t i = 0; i < n; ++i) {
                double av = 0;
                for (size_t j = 0; j < n; ++j) av += a(i, j) * v[j];
                CHECK(av == doctest::Approx(e.values[k] * v[i]).epsilon(1e-8));
            }
            for (size_t l = 0; l <= k; ++l) {
                double d = dot(v, e.column(l));
                CHECK(d == doctest::Approx(l == k ? 1.0 : 0.0).epsilon(1e-9));
            }
        }
    }
    SUBCASE("asymmetric input rejected") {
        DenseMatrix a(2, 2);
        a(0, 1) = 1.0;
        CHECK_THROWS_AS(sym_eig(a), Error);
        DenseMatrix r(2, 3);
        CHECK_THROWS_AS(sym_eig(r), Error);
    }
}

TEST_CASE("gram matrix over rows") {
    DenseMatrix x(2, 2);
    x(0, 0) = 1;
    x(1, 1) = 2;
    DenseMatrix k = gram(x, KernelSpec::polynomial(2, 1.0));
    CHECK(k(0, 0) == doctest::Approx(4.0));
    CHECK(k(0, 1) == doctest::Approx(1.0));
    CHECK(k(1, 0) == doctest::Approx(1.0));
    CHECK(k(1, 1) == doctest::Approx(25.0));
}

TEST_CASE("double centering") {
    DenseMatrix k(2, 2);
    k(0, 0) = 1;
    k(0, 1) = 2;
    k(1, 0) = 3;
    k(1, 1) = 5;
    DenseMatrix c = double_center(k);
    // Row and column means of the result vanish.
    CHECK(c(0, 0) + c(0, 1) == doctest::Approx(0.0));
    CHECK(c(1, 0) + c(1, 1) == doctest::Approx(0.0));
    CHECK(c(0, 0) + c(1, 0) == doctest::Approx(0.0));
    CHECK(c(0, 0) == doctest::Approx(0.25));

    DenseMatrix rect(2, 3);
    CHECK_THROWS_AS(double_center(rect), Error);
}
