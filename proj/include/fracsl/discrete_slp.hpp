#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracsl/errors.hpp"
#include "fracsl/fractional_diff.hpp"
#include "fracsl/gl_weights.hpp"
#include "fracsl/grid.hpp"
#include "fracsl/linalg.hpp"

namespace fracsl::discrete {

// Problem data of the Sturm-Liouville difference equation: p, q, r sampled on
// every node, fractional order alpha.  p and r must be strictly positive.
class SLCoefficients {
public:
    SLCoefficients(const UniformGrid& grid, std::vector<double> p, std::vector<double> q,
                   std::vector<double> r, double alpha)
        : grid_(grid), p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), alpha_(alpha) {
        const auto nodes = static_cast<std::size_t>(grid_.nodes());
        if (p_.size() != nodes || q_.size() != nodes || r_.size() != nodes)
            throw std::invalid_argument("SLCoefficients: p, q, r must each hold " +
                                        std::to_string(nodes) + " node values");
        if (!(alpha_ > 0.0 && alpha_ <= 1.0))
            throw std::domain_error("SLCoefficients: alpha must lie in (0, 1]");
        for (std::size_t i = 0; i < nodes; ++i) {
            if (!(p_[i] > 0.0))
                throw std::domain_error("SLCoefficients: p must be positive, violated at node " +
                                        std::to_string(i));
            if (!(r_[i] > 0.0))
                throw std::domain_error("SLCoefficients: r must be positive, violated at node " +
                                        std::to_string(i));
        }
    }

    static SLCoefficients unit(const UniformGrid& grid, double alpha) {
        const auto nodes = static_cast<std::size_t>(grid.nodes());
        return SLCoefficients(grid, std::vector<double>(nodes, 1.0),
                              std::vector<double>(nodes, 0.0), std::vector<double>(nodes, 1.0),
                              alpha);
    }

    const UniformGrid& grid() const noexcept { return grid_; }
    std::span<const double> p() const noexcept { return p_; }
    std::span<const double> q() const noexcept { return q_; }
    std::span<const double> r() const noexcept { return r_; }
    double alpha() const noexcept { return alpha_; }
    int interior_size() const noexcept { return grid_.intervals() - 1; }

private:
    UniformGrid grid_;
    std::vector<double> p_, q_, r_;
    double alpha_;
};

enum class Normalization { weighted_unit, plain_unit };

struct Spectrum {
    std::vector<double> eigenvalues;                // ascending
    std::vector<std::vector<double>> eigenvectors;  // eigenvectors[i] over interior nodes
    std::vector<double> weight;                     // inner-product weight at interior nodes
    double residual_norm = 0.0;                     // max over pairs of ||A y - lambda R y||_inf
    Normalization normalization = Normalization::weighted_unit;

    int size() const noexcept { return static_cast<int>(eigenvalues.size()); }
};

struct ExpansionCoefficients {
    std::vector<double> values;  // c_1..c_m
};

struct Assembly {
    linalg::Matrix a;       // (N-1) x (N-1)
    std::vector<double> r;  // diagonal of R, interior nodes
};

namespace detail {

inline double weighted_dot(std::span<const double> w, std::span<const double> x,
                           std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * x[i] * y[i];
    return acc;
}

// First component clearly away from roundoff decides the sign.
inline void fix_sign(std::vector<double>& v) {
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return;
    for (double x : v) {
        if (std::abs(x) > 1e-12 * scale) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

struct GeneralizedEigen {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;  // normalized so sum w_k y_k^2 = 1
    int sweeps = 0;
};

// Solve S y = lambda diag(w) y for symmetric S via the congruence
// S~ = D^{-1} S D^{-1}, D = diag(sqrt(w)); eigenvectors come back
// w-orthonormal.
inline GeneralizedEigen generalized_symmetric_eigen(const linalg::Matrix& s,
                                                    std::span<const double> w) {
    const int m = s.order();
    if (w.size() != static_cast<std::size_t>(m))
        throw std::invalid_argument("generalized_symmetric_eigen: weight size mismatch");
    std::vector<double> d(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        if (!(w[static_cast<std::size_t>(i)] > 0.0))
            throw std::domain_error("generalized_symmetric_eigen: weights must be positive");
        d[static_cast<std::size_t>(i)] = std::sqrt(w[static_cast<std::size_t>(i)]);
    }
    linalg::Matrix st(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            st(i, j) = s(i, j) / (d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(j)]);
    auto eig = linalg::jacobi_eigen(linalg::SymmetricMatrix(std::move(st)));

    GeneralizedEigen out;
    out.values = std::move(eig.values);
    out.vectors.resize(eig.vectors.size());
    for (std::size_t i = 0; i < eig.vectors.size(); ++i) {
        auto& y = out.vectors[i];
        y = std::move(eig.vectors[i]);
        for (int k = 0; k < m; ++k) y[static_cast<std::size_t>(k)] /= d[static_cast<std::size_t>(k)];
    }
    out.sweeps = eig.sweeps;
    return out;
}

}  // namespace detail

// Matrix form of y -> forward_diff(p * backward_diff(y)) + q*y on the interior
// nodes, assembled column by column from unit vectors extended by the zero
// Dirichlet boundary, together with the diagonal weight R = diag(r_1..r_{N-1}).
inline Assembly assemble_discrete(const SLCoefficients& coeffs) {
    const auto& grid = coeffs.grid();
    const int n = grid.intervals();
    const int m = n - 1;
    const auto w = gl_weights(coeffs.alpha(), n);
    const auto p = coeffs.p();
    const auto q = coeffs.q();

    linalg::Matrix a(m);
    for (int j = 1; j <= m; ++j) {
        std::vector<double> unit(static_cast<std::size_t>(grid.nodes()), 0.0);
        unit[static_cast<std::size_t>(j)] = 1.0;
        const GridFunction e(grid, std::move(unit));
        std::vector<double> flux(static_cast<std::size_t>(grid.nodes()));
        for (int k = 0; k < grid.nodes(); ++k)
            flux[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k)] * backward_diff(e, w, k);
        const GridFunction g(grid, std::move(flux));
        for (int i = 1; i <= m; ++i) {
            double entry = forward_diff(g, w, i);
            if (i == j) entry += q[static_cast<std::size_t>(i)];
            a(i - 1, j - 1) = entry;
        }
    }

    std::vector<double> r(coeffs.r().begin() + 1, coeffs.r().end() - 1);
    return {std::move(a), std::move(r)};
}

// Solve A y = lambda R y through the symmetrized problem; eigenvalues come
// back ascending with r-orthogonal, sign-fixed eigenvectors normalized per
// the requested tag.
inline Spectrum solve_discrete(const SLCoefficients& coeffs,
                               Normalization normalization = Normalization::weighted_unit) {
    auto [a, r] = assemble_discrete(coeffs);
    auto gen = detail::generalized_symmetric_eigen(a, r);
    const int m = a.order();

    Spectrum spectrum;
    spectrum.eigenvalues = std::move(gen.values);
    spectrum.eigenvectors = std::move(gen.vectors);
    spectrum.weight = std::move(r);
    spectrum.normalization = normalization;

    for (auto& y : spectrum.eigenvectors) {
        double norm2;
        if (normalization == Normalization::plain_unit) {
            norm2 = 0.0;
            for (double v : y) norm2 += v * v;
        } else {
            norm2 = detail::weighted_dot(spectrum.weight, y, y);
        }
        const double scale = 1.0 / std::sqrt(norm2);
        for (double& v : y) v *= scale;
        detail::fix_sign(y);
    }

    double residual = 0.0;
    for (int i = 0; i < m; ++i) {
        const auto ay = a.apply(spectrum.eigenvectors[static_cast<std::size_t>(i)]);
        for (int k = 0; k < m; ++k) {
            const double rk = ay[static_cast<std::size_t>(k)] -
                              spectrum.eigenvalues[static_cast<std::size_t>(i)] *
                                  spectrum.weight[static_cast<std::size_t>(k)] *
                                  spectrum.eigenvectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            residual = std::max(residual, std::abs(rk));
        }
    }
    spectrum.residual_norm = residual;
    return spectrum;
}

// c_i = <phi, y_i>_w / <y_i, y_i>_w.
inline ExpansionCoefficients expand(std::span<const double> phi, const Spectrum& spectrum) {
    if (phi.size() != spectrum.eigenvectors.size() || spectrum.size() == 0)
        throw std::invalid_argument("expand: vector length must equal spectrum size");
    ExpansionCoefficients out;
    out.values.resize(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const auto& y = spectrum.eigenvectors[i];
        out.values[i] = detail::weighted_dot(spectrum.weight, phi, y) /
                        detail::weighted_dot(spectrum.weight, y, y);
    }
    return out;
}

// sum_i c_i y_i; inverse of expand on the interior space.
inline std::vector<double> reconstruct(const ExpansionCoefficients& coeffs,
                                       const Spectrum& spectrum) {
    if (coeffs.values.size() != spectrum.eigenvectors.size())
        throw std::invalid_argument("reconstruct: coefficient count must equal spectrum size");
    std::vector<double> out(coeffs.values.size(), 0.0);
    for (std::size_t i = 0; i < coeffs.values.size(); ++i)
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] += coeffs.values[i] * spectrum.eigenvectors[i][k];
    return out;
}

namespace detail {

inline void check_boundary_padded(const GridFunction& y, const SLCoefficients& coeffs,
                                  const char* who) {
    if (!(y.grid() == coeffs.grid()))
        throw std::invalid_argument(std::string(who) + ": grid mismatch");
    if (y[0] != 0.0 || y[y.nodes() - 1] != 0.0)
        throw std::invalid_argument(std::string(who) + ": boundary values must vanish");
}

}  // namespace detail

// J[y] = sum_{k=1}^{N} [ p_k (backward_diff y)_k^2 + q_k y_k^2 ].
inline double functional_J(const GridFunction& y, const SLCoefficients& coeffs) {
    detail::check_boundary_padded(y, coeffs, "functional_J");
    const int n = coeffs.grid().intervals();
    const auto w = gl_weights(coeffs.alpha(), n);
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double d = backward_diff(y, w, k);
        acc += coeffs.p()[static_cast<std::size_t>(k)] * d * d +
               coeffs.q()[static_cast<std::size_t>(k)] * y[k] * y[k];
    }
    return acc;
}

// I[y] = sum_{k=1}^{N} r_k y_k^2 (the k = N term vanishes with the boundary).
inline double functional_I(const GridFunction& y, const SLCoefficients& coeffs) {
    detail::check_boundary_padded(y, coeffs, "functional_I");
    const int n = coeffs.grid().intervals();
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) acc += coeffs.r()[static_cast<std::size_t>(k)] * y[k] * y[k];
    return acc;
}

inline double rayleigh(const GridFunction& y, const SLCoefficients& coeffs) {
    const double denom = functional_I(y, coeffs);
    if (denom <= 0.0) throw std::domain_error("rayleigh: I[y] must be positive");
    return functional_J(y, coeffs) / denom;
}

struct RayleighOptions {
    double tol = 1e-10;       // stop when the quotient change falls below tol * max(1, |R|)
    double vec_tol = 1e-8;    // ... and the iterate change falls below vec_tol (inf-norm)
    long max_iterations = 100000;
};

struct RayleighExtremum {
    std::vector<double> vector;  // on the weighted unit sphere, sign-fixed
    double value = 0.0;
    long iterations = 0;
};

namespace detail {

// Projected gradient descent for the quotient (y'Ay)/(y'Wy) on the W-sphere.
// Deterministic sine-profile start, backtracking line search (halving,
// Armijo constant 1e-4).
inline RayleighExtremum sphere_quadratic_min(const linalg::Matrix& a, std::span<const double> w,
                                             const RayleighOptions& opts) {
    const int m = a.order();
    const int n = m + 1;
    constexpr double kPi = 3.141592653589793238462643383279502884;
    constexpr double kArmijo = 1e-4;

    auto wnormalize = [&](std::vector<double>& y) {
        const double norm2 = weighted_dot(w, y, y);
        const double scale = 1.0 / std::sqrt(norm2);
        for (double& v : y) v *= scale;
    };

    std::vector<double> y(static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k) y[static_cast<std::size_t>(k) - 1] = std::sin(kPi * k / n);
    wnormalize(y);
    auto ay = a.apply(y);
    double quot = 0.0;
    for (int k = 0; k < m; ++k) quot += y[static_cast<std::size_t>(k)] * ay[static_cast<std::size_t>(k)];

    double step = 1.0;
    long iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        std::vector<double> grad(static_cast<std::size_t>(m));
        double grad_sq = 0.0;
        for (int k = 0; k < m; ++k) {
            const double g = 2.0 * (ay[static_cast<std::size_t>(k)] -
                                    quot * w[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(k)]);
            grad[static_cast<std::size_t>(k)] = g;
            grad_sq += g * g;
        }
        if (grad_sq <= 1e-28 * std::max(1.0, quot * quot)) break;  // stationary to roundoff

        double trial = std::min(step * 2.0, 1e6);
        std::vector<double> next(static_cast<std::size_t>(m));
        std::vector<double> next_ay;
        double next_quot = quot;
        bool stalled = false;
        while (true) {
            for (int k = 0; k < m; ++k)
                next[static_cast<std::size_t>(k)] =
                    y[static_cast<std::size_t>(k)] - trial * grad[static_cast<std::size_t>(k)];
            wnormalize(next);
            next_ay = a.apply(next);
            next_quot = 0.0;
            for (int k = 0; k < m; ++k)
                next_quot += next[static_cast<std::size_t>(k)] * next_ay[static_cast<std::size_t>(k)];
            if (next_quot <= quot - kArmijo * trial * grad_sq) break;
            trial *= 0.5;
            if (trial < 1e-18) {
                stalled = true;  // no improving step at roundoff scale: converged
                break;
            }
        }
        if (stalled) break;

        double dy = 0.0;
        for (int k = 0; k < m; ++k)
            dy = std::max(dy, std::abs(next[static_cast<std::size_t>(k)] - y[static_cast<std::size_t>(k)]));
        const double dq = quot - next_quot;
        y.swap(next);
        ay.swap(next_ay);
        quot = next_quot;
        step = trial;
        if (dq <= opts.tol * std::max(1.0, std::abs(quot)) && dy <= opts.vec_tol) break;
    }
    if (iter >= opts.max_iterations)
        throw ConvergenceError("rayleigh optimizer: iteration cap reached before tolerance", iter, y);

    fix_sign(y);
    return {std::move(y), quot, iter};
}

}  // namespace detail

// Minimum of the Rayleigh quotient over the r-weighted unit sphere; converges
// to the smallest eigenpair.
inline RayleighExtremum minimize_rayleigh(const SLCoefficients& coeffs,
                                          const RayleighOptions& opts = {}) {
    auto [a, r] = assemble_discrete(coeffs);
    return detail::sphere_quadratic_min(a, r, opts);
}

// Maximum of the Rayleigh quotient (minimizes the negated form); converges to
// the largest eigenpair.
inline RayleighExtremum maximize_rayleigh(const SLCoefficients& coeffs,
                                          const RayleighOptions& opts = {}) {
    auto [a, r] = assemble_discrete(coeffs);
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < a.order(); ++j) a(i, j) = -a(i, j);
    auto ext = detail::sphere_quadratic_min(a, r, opts);
    ext.value = -ext.value;
    return ext;
}

// First-order optimality defect of the constrained problem: the N-1 values
// dJ/dy_k - lambda dI/dy_k followed by the constraint defect sum y_k^2 - 1.
// Gradients are evaluated through the difference operators, independently of
// the assembled matrix.
inline std::vector<double> kkt_residual(std::span<const double> y, double lambda,
                                        const SLCoefficients& coeffs) {
    const int m = coeffs.interior_size();
    if (y.size() != static_cast<std::size_t>(m))
        throw std::invalid_argument("kkt_residual: expected " + std::to_string(m) +
                                    " interior values");
    const auto& grid = coeffs.grid();
    const int n = grid.intervals();
    const auto w = gl_weights(coeffs.alpha(), n);
    const GridFunction yf = pad_with_zero_boundary(grid, y);

    std::vector<double> flux(static_cast<std::size_t>(grid.nodes()));
    for (int k = 0; k < grid.nodes(); ++k)
        flux[static_cast<std::size_t>(k)] = coeffs.p()[static_cast<std::size_t>(k)] * backward_diff(yf, w, k);
    const GridFunction g(grid, std::move(flux));

    std::vector<double> out(static_cast<std::size_t>(m) + 1);
    double constraint = 0.0;
    for (int k = 1; k <= m; ++k) {
        const double grad_j =
            2.0 * (forward_diff(g, w, k) + coeffs.q()[static_cast<std::size_t>(k)] * yf[k]);
        const double grad_i = 2.0 * coeffs.r()[static_cast<std::size_t>(k)] * yf[k];
        out[static_cast<std::size_t>(k) - 1] = grad_j - lambda * grad_i;
        constraint += yf[k] * yf[k];
    }
    out[static_cast<std::size_t>(m)] = constraint - 1.0;
    return out;
}

}  // namespace fracsl::discrete
