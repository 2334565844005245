#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wsdbench/error.hpp"

namespace wsd {

/// Row-major dense matrix of doubles. Small by design: the decompositions in
/// this project run on per-task matrices (at most a few hundred rows).
struct DenseMatrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(size_t r, size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(size_t r, size_t c) { return data[r * cols + c]; }
    double operator()(size_t r, size_t c) const { return data[r * cols + c]; }

    std::span<const double> row(size_t r) const { return {data.data() + r * cols, cols}; }
    std::span<double> row(size_t r) { return {data.data() + r * cols, cols}; }

    static DenseMatrix identity(size_t n);
    DenseMatrix transposed() const;
};

/// Eigenvalues in descending order; eigenvectors as matching orthonormal columns.
struct EigenDecomposition {
    std::vector<double> values;
    DenseMatrix vectors; // d x d, column k pairs with values[k]

    std::vector<double> column(size_t k) const;
};

/// Kernel function selector: linear, polynomial(degree, coef), or rbf(gamma).
struct KernelSpec {
    enum class Kind { Linear, Polynomial, Rbf };

    Kind kind = Kind::Linear;
    int degree = 3;
    double coef = 1.0;
    double gamma = 3.0;

    static KernelSpec linear() { return {Kind::Linear, 1, 0.0, 0.0}; }
    static KernelSpec polynomial(int degree, double coef);
    static KernelSpec rbf(double gamma);

    double eval(std::span<const double> a, std::span<const double> b) const;
};

double dot(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);
double frobenius_norm(const DenseMatrix& a);

/// Zero-mean covariance of X (rows = instances) with 1/n normalization.
/// Requires n >= 2.
DenseMatrix covariance(const DenseMatrix& x);

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
/// Input must satisfy max|A - A^T| <= 1e-9. Converges when the off-diagonal
/// Frobenius norm drops below 1e-12 * ||A||_F, capped at 100 sweeps.
EigenDecomposition sym_eig(const DenseMatrix& a);

/// Gram matrix K_ij = kernel(x_i, x_j) over the rows of X.
DenseMatrix gram(const DenseMatrix& x, const KernelSpec& kernel);

/// K'_ij = K_ij - rowmean_i - colmean_j + grandmean. Square input only.
DenseMatrix double_center(const DenseMatrix& k);

} // namespace wsd
