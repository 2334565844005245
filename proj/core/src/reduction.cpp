#include "wsdbench/reduction.hpp"

#include <cmath>
#include <string>

#include "wsdbench/error.hpp"

namespace wsd {

namespace {

constexpr double kEigenvalueFloor = 1e-10;

// Flips column k of m so that its largest-magnitude entry is positive.
// Ties on magnitude resolve to the earliest row.
void fix_column_sign(DenseMatrix& m, size_t k) {
    size_t arg = 0;
    double best = -1.0;
    for (size_t i = 0; i < m.rows; ++i) {
        double a = std::fabs(m(i, k));
        if (a > best) {
            best = a;
            arg = i;
        }
    }
    if (m(arg, k) < 0.0) {
        for (size_t i = 0; i < m.rows; ++i) m(i, k) = -m(i, k);
    }
}

std::vector<double> column_means(const DenseMatrix& x) {
    std::vector<double> mean(x.cols, 0.0);
    for (size_t i = 0; i < x.rows; ++i) {
        auto row = x.row(i);
        for (size_t j = 0; j < x.cols; ++j) mean[j] += row[j];
    }
    for (double& v : mean) v /= static_cast<double>(x.rows);
    return mean;
}

DenseMatrix center_rows(const DenseMatrix& x, const std::vector<double>& mean) {
    DenseMatrix c(x.rows, x.cols);
    for (size_t i = 0; i < x.rows; ++i) {
        for (size_t j = 0; j < x.cols; ++j) c(i, j) = x(i, j) - mean[j];
    }
    return c;
}

} // namespace

PcaModel pca_fit(const DenseMatrix& x, size_t m) {
    const size_t n = x.rows;
    const size_t d = x.cols;
    if (n < 2) throw Error("pca_fit: need at least 2 instances, got " + std::to_string(n));
    if (m == 0) throw Error("pca_fit: requested 0 components");
    if (m > std::min(n, d)) {
        throw Error("pca_fit: " + std::to_string(m) + " components exceed min(n, d) = " +
                    std::to_string(std::min(n, d)));
    }

    PcaModel model;
    model.mean = column_means(x);

    if (d <= n) {
        EigenDecomposition eig = sym_eig(covariance(x));
        size_t keep = 0;
        while (keep < m && eig.values[keep] > kEigenvalueFloor) ++keep;
        model.basis = DenseMatrix(d, keep);
        model.eigenvalues.assign(eig.values.begin(), eig.values.begin() + keep);
        for (size_t k = 0; k < keep; ++k) {
            for (size_t i = 0; i < d; ++i) model.basis(i, k) = eig.vectors(i, k);
        }
        model.truncated = keep < m;
    } else {
        // Dual route: eigenvectors u of the centered Gram G = Xc Xc^T map to
        // covariance eigenvectors Xc^T u / sqrt(nu) with eigenvalue nu / n.
        DenseMatrix xc = center_rows(x, model.mean);
        DenseMatrix g(n, n);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i; j < n; ++j) {
                double v = dot(xc.row(i), xc.row(j));
                g(i, j) = v;
                g(j, i) = v;
            }
        }
        EigenDecomposition eig = sym_eig(g);
        size_t keep = 0;
        while (keep < m && eig.values[keep] / static_cast<double>(n) > kEigenvalueFloor) ++keep;
        model.basis = DenseMatrix(d, keep);
        model.eigenvalues.resize(keep);
        for (size_t k = 0; k < keep; ++k) {
            double nu = eig.values[k];
            model.eigenvalues[k] = nu / static_cast<double>(n);
            double scale = 1.0 / std::sqrt(nu);
            for (size_t i = 0; i < n; ++i) {
                double u = eig.vectors(i, k) * scale;
                if (u == 0.0) continue;
                auto row = xc.row(i);
                for (size_t j = 0; j < d; ++j) model.basis(j, k) += u * row[j];
            }
        }
        model.truncated = keep < m;
    }

    for (size_t k = 0; k < model.basis.cols; ++k) fix_column_sign(model.basis, k);
    return model;
}

std::vector<double> pca_project(const PcaModel& model, std::span<const double> x) {
    if (x.size() != model.mean.size()) {
        throw Error("pca_project: input has dimension " + std::to_string(x.size()) +
                    ", model expects " + std::to_string(model.mean.size()));
    }
    std::vector<double> out(model.basis.cols, 0.0);
    for (size_t j = 0; j < x.size(); ++j) {
        double c = x[j] - model.mean[j];
        if (c == 0.0) continue;
        for (size_t k = 0; k < out.size(); ++k) out[k] += c * model.basis(j, k);
    }
    return out;
}

KpcaModel kpca_fit(const DenseMatrix& x, const KernelSpec& kernel, size_t m) {
    const size_t n = x.rows;
    if (n < 2) throw Error("kpca_fit: need at least 2 instances, got " + std::to_string(n));
    if (m == 0) throw Error("kpca_fit: requested 0 components");
    if (m > n) {
        throw Error("kpca_fit: " + std::to_string(m) + " components exceed sample size " +
                    std::to_string(n));
    }

    KpcaModel model;
    model.train = x;
    model.kernel = kernel;

    DenseMatrix k = gram(x, kernel);
    model.train_row_mean.resize(n);
    double grand = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (size_t j = 0; j < n; ++j) s += k(i, j);
        model.train_row_mean[i] = s / static_cast<double>(n);
        grand += s;
    }
    model.grand_mean = grand / static_cast<double>(n * n);

    DenseMatrix kc = double_center(k);
    EigenDecomposition eig = sym_eig(kc);
    size_t keep = 0;
    while (keep < m && eig.values[keep] > kEigenvalueFloor) ++keep;
    model.truncated = keep < m;
    model.eigenvalues.assign(eig.values.begin(), eig.values.begin() + keep);

    DenseMatrix vecs(n, keep);
    for (size_t k2 = 0; k2 < keep; ++k2) {
        for (size_t i = 0; i < n; ++i) vecs(i, k2) = eig.vectors(i, k2);
    }
    for (size_t k2 = 0; k2 < keep; ++k2) fix_column_sign(vecs, k2);

    model.alpha = DenseMatrix(n, keep);
    for (size_t k2 = 0; k2 < keep; ++k2) {
        double scale = 1.0 / std::sqrt(model.eigenvalues[k2]);
        for (size_t i = 0; i < n; ++i) model.alpha(i, k2) = vecs(i, k2) * scale;
    }

    model.train_projections = DenseMatrix(n, keep);
    for (size_t i = 0; i < n; ++i) {
        for (size_t k2 = 0; k2 < keep; ++k2) {
            double s = 0.0;
            for (size_t j = 0; j < n; ++j) s += kc(i, j) * model.alpha(j, k2);
            model.train_projections(i, k2) = s;
        }
    }
    return model;
}

std::vector<double> kpca_project(const KpcaModel& model, std::span<const double> x) {
    if (x.size() != model.train.cols) {
        throw Error("kpca_project: input has dimension " + std::to_string(x.size()) +
                    ", model expects " + std::to_string(model.train.cols));
    }
    const size_t n = model.train.rows;
    std::vector<double> k(n);
    double mean = 0.0;
    for (size_t i = 0; i < n; ++i) {
        k[i] = model.kernel.eval(model.train.row(i), x);
        mean += k[i];
    }
    mean /= static_cast<double>(n);

    std::vector<double> out(model.alpha.cols, 0.0);
    for (size_t i = 0; i < n; ++i) {
        double kc = k[i] - mean - model.train_row_mean[i] + model.grand_mean;
        if (kc == 0.0) continue;
        for (size_t c = 0; c < out.size(); ++c) out[c] += kc * model.alpha(i, c);
    }
    return out;
}

} // namespace wsd
