#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracsl/errors.hpp"

namespace fracsl::linalg {

// Dense square matrix, row-major.
class Matrix {
public:
    explicit Matrix(int order)
        : order_(order), data_(static_cast<std::size_t>(order) * static_cast<std::size_t>(order), 0.0) {
        if (order < 1) throw std::invalid_argument("Matrix: order must be positive");
    }

    int order() const noexcept { return order_; }

    double& operator()(int i, int j) { return data_[index(i, j)]; }
    double operator()(int i, int j) const { return data_[index(i, j)]; }

    std::span<const double> data() const noexcept { return data_; }

    std::vector<double> apply(std::span<const double> x) const {
        if (x.size() != static_cast<std::size_t>(order_))
            throw std::invalid_argument("Matrix::apply: size mismatch");
        std::vector<double> y(static_cast<std::size_t>(order_), 0.0);
        for (int i = 0; i < order_; ++i) {
            double acc = 0.0;
            const double* row = data_.data() + static_cast<std::size_t>(i) * order_;
            for (int j = 0; j < order_; ++j) acc += row[j] * x[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = acc;
        }
        return y;
    }

    double max_abs() const noexcept {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    std::size_t index(int i, int j) const {
        if (i < 0 || i >= order_ || j < 0 || j >= order_)
            throw std::out_of_range("Matrix: index (" + std::to_string(i) + ", " + std::to_string(j) +
                                    ") outside order " + std::to_string(order_));
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(order_) +
               static_cast<std::size_t>(j);
    }

    int order_;
    std::vector<double> data_;
};

inline double max_abs_asymmetry(const Matrix& m) {
    double worst = 0.0;
    for (int i = 0; i < m.order(); ++i)
        for (int j = i + 1; j < m.order(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
    return worst;
}

// Symmetry-validated wrapper; construction rejects matrices farther than
// tol * max|entry| from their transpose.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(Matrix m, double tol = 1e-12) : m_(std::move(m)) {
        const double scale = std::max(m_.max_abs(), 1.0);
        if (max_abs_asymmetry(m_) > tol * scale)
            throw std::invalid_argument("SymmetricMatrix: matrix is not symmetric within tolerance");
    }

    int order() const noexcept { return m_.order(); }
    double operator()(int i, int j) const { return m_(i, j); }
    const Matrix& matrix() const noexcept { return m_; }

private:
    Matrix m_;
};

struct EigenDecomposition {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // vectors[i] belongs to values[i]; orthonormal
    int sweeps = 0;
};

namespace detail {

inline double off_diagonal_frobenius(const std::vector<double>& a, int m) {
    double acc = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double v = a[static_cast<std::size_t>(i) * m + j];
            acc += 2.0 * v * v;
        }
    return std::sqrt(acc);
}

}  // namespace detail

// Cyclic-by-row Jacobi rotations on a working copy.  Converged when the
// off-diagonal Frobenius norm drops below tol (default 1e-13 * ||A||_F).
inline EigenDecomposition jacobi_eigen(const SymmetricMatrix& sym, double tol = 0.0,
                                       int max_sweeps = 100) {
    const int m = sym.order();
    std::vector<double> a(sym.matrix().data().begin(), sym.matrix().data().end());
    // force exact symmetry of the working copy so rotations stay consistent
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double v = 0.5 * (a[static_cast<std::size_t>(i) * m + j] +
                                    a[static_cast<std::size_t>(j) * m + i]);
            a[static_cast<std::size_t>(i) * m + j] = v;
            a[static_cast<std::size_t>(j) * m + i] = v;
        }

    std::vector<double> v(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i) * m + i] = 1.0;

    double frob = 0.0;
    for (double x : a) frob += x * x;
    frob = std::sqrt(frob);
    if (tol <= 0.0) tol = 1e-13 * std::max(frob, 1e-300);
    const double rotation_threshold = tol / (static_cast<double>(m) * m);

    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * m + j]; };

    int sweep = 0;
    bool converged = false;
    for (; sweep < max_sweeps; ++sweep) {
        if (detail::off_diagonal_frobenius(a, m) <= tol) {
            converged = true;
            break;
        }
        for (int p = 0; p < m - 1; ++p) {
            for (int q = p + 1; q < m; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) <= rotation_threshold) continue;
                const double tau = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double app = at(p, p);
                const double aqq = at(q, q);
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (int k = 0; k < m; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(p, k) = at(k, p);
                    at(k, q) = s * akp + c * akq;
                    at(q, k) = at(k, q);
                }
                for (int k = 0; k < m; ++k) {
                    const double vkp = v[static_cast<std::size_t>(k) * m + p];
                    const double vkq = v[static_cast<std::size_t>(k) * m + q];
                    v[static_cast<std::size_t>(k) * m + p] = c * vkp - s * vkq;
                    v[static_cast<std::size_t>(k) * m + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged && detail::off_diagonal_frobenius(a, m) > tol)
        throw ConvergenceError("jacobi_eigen: off-diagonal norm above tolerance after " +
                                   std::to_string(sweep) + " sweeps",
                               sweep);

    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return at(i, i) < at(j, j); });

    EigenDecomposition out;
    out.values.resize(static_cast<std::size_t>(m));
    out.vectors.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i) {
        const int src = order[static_cast<std::size_t>(i)];
        out.values[static_cast<std::size_t>(i)] = at(src, src);
        for (int k = 0; k < m; ++k)
            out.vectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                v[static_cast<std::size_t>(k) * m + src];
    }
    out.sweeps = sweep;
    return out;
}

}  // namespace fracsl::linalg
