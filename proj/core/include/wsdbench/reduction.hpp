#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wsdbench/linalg.hpp"

namespace wsd {

/// Linear projection onto the top eigenvectors of the data covariance.
/// Components with eigenvalue <= 1e-10 are dropped; `truncated` records that
/// fewer than the requested components were kept.
struct PcaModel {
    std::vector<double> mean;
    DenseMatrix basis; // d x m, orthonormal columns, eigenvalue-descending
    std::vector<double> eigenvalues;
    bool truncated = false;

    size_t input_dim() const { return mean.size(); }
    size_t output_dim() const { return basis.cols; }
};

/// Rows of x are instances. Requires 2 <= m' where m' = min(n, d) >= m.
/// Uses the covariance eigenproblem when d <= n and the Gram-side dual
/// formulation otherwise; both give the same subspace.
PcaModel pca_fit(const DenseMatrix& x, size_t m = 30);

std::vector<double> pca_project(const PcaModel& model, std::span<const double> x);

/// Kernel PCA state: everything needed to center and project unseen points
/// against the training sample.
struct KpcaModel {
    DenseMatrix train; // n x d training inputs
    KernelSpec kernel;
    DenseMatrix alpha; // n x m, column k = eigenvector_k / sqrt(lambda_k)
    std::vector<double> train_row_mean; // row means of the uncentered Gram
    double grand_mean = 0.0;
    std::vector<double> eigenvalues; // of the centered Gram, descending
    DenseMatrix train_projections; // n x m
    bool truncated = false;

    size_t input_dim() const { return train.cols; }
    size_t output_dim() const { return alpha.cols; }
};

KpcaModel kpca_fit(const DenseMatrix& x, const KernelSpec& kernel, size_t m = 30);

std::vector<double> kpca_project(const KpcaModel& model, std::span<const double> x);

} // namespace wsd
