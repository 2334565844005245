#include "wsdbench/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace wsd {

DenseMatrix DenseMatrix::identity(size_t n) {
    DenseMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols, rows);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) t(c, r) = (*this)(r, c);
    return t;
}

std::vector<double> EigenDecomposition::column(size_t k) const {
    std::vector<double> v(vectors.rows);
    for (size_t i = 0; i < vectors.rows; ++i) v[i] = vectors(i, k);
    return v;
}

KernelSpec KernelSpec::polynomial(int degree, double coef) {
    if (degree < 1) throw Error("polynomial kernel requires degree >= 1, got " + std::to_string(degree));
    return {Kind::Polynomial, degree, coef, 0.0};
}

KernelSpec KernelSpec::rbf(double gamma) {
    if (!(gamma > 0.0)) throw Error("rbf kernel requires gamma > 0, got " + std::to_string(gamma));
    return {Kind::Rbf, 1, 0.0, gamma};
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double KernelSpec::eval(std::span<const double> a, std::span<const double> b) const {
    switch (kind) {
        case Kind::Linear:
            return dot(a, b);
        case Kind::Polynomial: {
            double base = dot(a, b) + coef;
            double out = 1.0;
            for (int i = 0; i < degree; ++i) out *= base;
            return out;
        }
        case Kind::Rbf:
            return std::exp(-gamma * squared_distance(a, b));
    }
    return 0.0;
}

double frobenius_norm(const DenseMatrix& a) {
    double s = 0.0;
    for (double v : a.data) s += v * v;
    return std::sqrt(s);
}

DenseMatrix covariance(const DenseMatrix& x) {
    size_t n = x.rows, d = x.cols;
    if (n < 2) throw Error("covariance requires at least 2 rows, got " + std::to_string(n));
    std::vector<double> mean(d, 0.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < d; ++j) mean[j] += x(i, j);
    for (double& m : mean) m /= static_cast<double>(n);

    DenseMatrix c(d, d);
    std::vector<double> centered(d);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < d; ++j) centered[j] = x(i, j) - mean[j];
        for (size_t p = 0; p < d; ++p) {
            double cp = centered[p];
            if (cp == 0.0) continue;
            double* row = c.data.data() + p * d;
            for (size_t q = 0; q < d; ++q) row[q] += cp * centered[q];
        }
    }
    double inv_n = 1.0 / static_cast<double>(n);
    for (double& v : c.data) v *= inv_n;
    return c;
}

namespace {

double offdiag_norm(const DenseMatrix& a) {
    double s = 0.0;
    for (size_t p = 0; p < a.rows; ++p)
        for (size_t q = 0; q < a.cols; ++q)
            if (p != q) s += a(p, q) * a(p, q);
    return std::sqrt(s);
}

} // namespace

EigenDecomposition sym_eig(const DenseMatrix& input) {
    if (input.rows != input.cols) throw Error("sym_eig: matrix is not square");
    size_t n = input.rows;
    for (size_t p = 0; p < n; ++p)
        for (size_t q = p + 1; q < n; ++q)
            if (std::abs(input(p, q) - input(q, p)) > 1e-9)
                throw Error("sym_eig: input asymmetric at (" + std::to_string(p) + "," +
                            std::to_string(q) + "), |a_pq - a_qp| = " +
                            std::to_string(std::abs(input(p, q) - input(q, p))));

    DenseMatrix a = input;
    DenseMatrix v = DenseMatrix::identity(n);
    const double tol = 1e-12 * frobenius_norm(input);
    const int max_sweeps = 100;

    double off = offdiag_norm(a);
    int sweep = 0;
    while (off > tol && sweep < max_sweeps) {
        for (size_t p = 0; p + 1 < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (apq == 0.0) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                // Rotate rows/columns p and q of A, keeping symmetry.
                for (size_t i = 0; i < n; ++i) {
                    double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (size_t i = 0; i < n; ++i) {
                    double api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                for (size_t i = 0; i < n; ++i) {
                    double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
        off = offdiag_norm(a);
        ++sweep;
    }
    if (off > tol)
        throw Error("sym_eig: Jacobi did not converge in " + std::to_string(max_sweeps) +
                    " sweeps, off-diagonal residual " + std::to_string(off));

    // Sort eigenpairs by descending eigenvalue (stable for ties).
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t i, size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

DenseMatrix gram(const DenseMatrix& x, const KernelSpec& kernel) {
    size_t n = x.rows;
    DenseMatrix k(n, n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i; j < n; ++j) {
            double v = kernel.eval(x.row(i), x.row(j));
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

DenseMatrix double_center(const DenseMatrix& k) {
    if (k.rows != k.cols) throw Error("double_center: matrix is not square");
    size_t n = k.rows;
    std::vector<double> row_mean(n, 0.0), col_mean(n, 0.0);
    double grand = 0.0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            row_mean[i] += k(i, j);
            col_mean[j] += k(i, j);
            grand += k(i, j);
        }
    }
    for (double& v : row_mean) v /= static_cast<double>(n);
    for (double& v : col_mean) v /= static_cast<double>(n);
    grand /= static_cast<double>(n) * static_cast<double>(n);

    DenseMatrix out(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            out(i, j) = k(i, j) - row_mean[i] - col_mean[j] + grand;
    return out;
}

} // namespace wsd
