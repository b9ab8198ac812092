#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracsl/discrete_slp.hpp"
#include "fracsl/errors.hpp"
#include "fracsl/fractional_diff.hpp"
#include "fracsl/gl_weights.hpp"
#include "fracsl/grid.hpp"
#include "fracsl/linalg.hpp"
#include "fracsl/special_functions.hpp"

namespace fracsl::continuous {

// Continuous Sturm-Liouville problem [D_b^a p D_a^a + q] y = lambda r_a y on
// [a, b] with zero Dirichlet data, carried together with its discretization
// size N.  Coefficient samplers are evaluated once on the nodes at
// construction; p and r_a must be strictly positive there.  alpha = 1 is
// admitted as the classical limit of the scheme.
class ContinuousSLProblem {
public:
    using Sampler = std::function<double(double)>;

    ContinuousSLProblem(double a, double b, double alpha, Sampler p, Sampler q, Sampler r_alpha,
                        int n_intervals)
        : grid_(a, b, n_intervals), alpha_(alpha), r_sampler_(std::move(r_alpha)) {
        if (!(alpha_ > 0.5 && alpha_ <= 1.0))
            throw std::domain_error("ContinuousSLProblem: alpha must lie in (1/2, 1], got " +
                                    std::to_string(alpha));
        if (!p || !q || !r_sampler_)
            throw std::invalid_argument("ContinuousSLProblem: coefficient samplers must be callable");
        const int nodes = grid_.nodes();
        p_.resize(static_cast<std::size_t>(nodes));
        q_.resize(static_cast<std::size_t>(nodes));
        r_.resize(static_cast<std::size_t>(nodes));
        for (int j = 0; j < nodes; ++j) {
            const double x = grid_.node(j);
            p_[static_cast<std::size_t>(j)] = p(x);
            q_[static_cast<std::size_t>(j)] = q(x);
            r_[static_cast<std::size_t>(j)] = r_sampler_(x);
            if (!(p_[static_cast<std::size_t>(j)] > 0.0))
                throw std::domain_error("ContinuousSLProblem: p must be positive on the nodes");
            if (!(r_[static_cast<std::size_t>(j)] > 0.0))
                throw std::domain_error("ContinuousSLProblem: r_alpha must be positive on the nodes");
        }
    }

    // p = 1, q = 0, r = 1 on [0, 1].
    static ContinuousSLProblem unit(double alpha, int n_intervals) {
        return ContinuousSLProblem(
            0.0, 1.0, alpha, [](double) { return 1.0; }, [](double) { return 0.0; },
            [](double) { return 1.0; }, n_intervals);
    }

    const UniformGrid& grid() const noexcept { return grid_; }
    double alpha() const noexcept { return alpha_; }
    std::span<const double> p_nodes() const noexcept { return p_; }
    std::span<const double> q_nodes() const noexcept { return q_; }
    std::span<const double> r_nodes() const noexcept { return r_; }
    const Sampler& r_alpha() const noexcept { return r_sampler_; }

    bool has_unit_profile(double tol = 1e-12) const noexcept {
        if (grid_.a() != 0.0 || grid_.b() != 1.0) return false;
        for (std::size_t i = 0; i < p_.size(); ++i)
            if (std::abs(p_[i] - 1.0) > tol || std::abs(q_[i]) > tol || std::abs(r_[i] - 1.0) > tol)
                return false;
        return true;
    }

private:
    UniformGrid grid_;
    double alpha_;
    Sampler r_sampler_;
    std::vector<double> p_, q_, r_;
};

// Left Caputo derivative approximation at node j: the truncated GL sum minus
// the boundary correction f(a) (x_j - a)^{-alpha} / Gamma(1 - alpha).  The
// correction is singular at j = 0 unless f(a) = 0 (or alpha = 1, where
// 1/Gamma(0) kills it).
inline double caputo_left_approx(const GridFunction& f, double alpha, int j) {
    detail::check_node_index(f, j, "caputo_left_approx");
    const double gl = backward_diff(f, alpha, j);
    const double fa = f[0];
    if (fa == 0.0) return gl;
    const double rg = special::reciprocal_gamma(1.0 - alpha);
    if (rg == 0.0) return gl;
    if (j == 0)
        throw std::domain_error(
            "caputo_left_approx: correction is singular at the left endpoint when f(a) != 0");
    const double offset = j * f.grid().step();  // x_j - a
    return gl - fa * rg * std::pow(offset, -alpha);
}

// Mirror of caputo_left_approx with correction f(b) (b - x_j)^{-alpha} / Gamma(1 - alpha).
inline double caputo_right_approx(const GridFunction& f, double alpha, int j) {
    detail::check_node_index(f, j, "caputo_right_approx");
    const double gl = forward_diff(f, alpha, j);
    const int n = f.grid().intervals();
    const double fb = f[n];
    if (fb == 0.0) return gl;
    const double rg = special::reciprocal_gamma(1.0 - alpha);
    if (rg == 0.0) return gl;
    if (j == n)
        throw std::domain_error(
            "caputo_right_approx: correction is singular at the right endpoint when f(b) != 0");
    const double offset = (n - j) * f.grid().step();  // b - x_j
    return gl - fb * rg * std::pow(offset, -alpha);
}

// Discretized energy on [0, 1]: sum_{k=1}^{N} N^{2 alpha - 1} (sum_{i=0}^{k} w_i y_{k-i})^2
// for interior y with zero boundary padding.
inline double method1_objective(std::span<const double> y_interior, double alpha, int n) {
    if (n < 2) throw std::domain_error("method1_objective: need at least 2 intervals");
    if (y_interior.size() != static_cast<std::size_t>(n - 1))
        throw std::invalid_argument("method1_objective: expected " + std::to_string(n - 1) +
                                    " interior values");
    const auto w = gl_weights(alpha, n);
    std::vector<double> padded(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 1; k < n; ++k) padded[static_cast<std::size_t>(k)] = y_interior[static_cast<std::size_t>(k) - 1];
    const double scale = std::pow(static_cast<double>(n), 2.0 * alpha - 1.0);
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) {
        double conv = 0.0;
        for (int i = 0; i <= k; ++i)
            conv += w[static_cast<std::size_t>(i)] * padded[static_cast<std::size_t>(k - i)];
        acc += scale * conv * conv;
    }
    return acc;
}

struct Method1Result {
    std::vector<double> minimizer;  // interior values, sum y_k^2 = N
    double value = 0.0;             // objective at the minimizer (approximates lambda_1)
    long iterations = 0;
};

// Direct minimization of the discretized functional subject to
// sum y_k^2 / N = 1, by the same projected-gradient scheme used for the
// discrete Rayleigh quotient.
inline Method1Result method1_solve(const ContinuousSLProblem& problem,
                                   const discrete::RayleighOptions& opts = {}) {
    if (!problem.has_unit_profile())
        throw std::domain_error("method1_solve: requires p = 1, q = 0, r = 1 on [0, 1]");
    const auto coeffs = discrete::SLCoefficients::unit(problem.grid(), problem.alpha());
    auto [a, r] = discrete::assemble_discrete(coeffs);
    auto ext = discrete::detail::sphere_quadratic_min(a, r, opts);

    const double radius = std::sqrt(static_cast<double>(problem.grid().intervals()));
    for (double& v : ext.vector) v *= radius;
    const double value =
        method1_objective(ext.vector, problem.alpha(), problem.grid().intervals());
    return {std::move(ext.vector), value, ext.iterations};
}

// KKT matrix of the worked example: y_j -> N^{2 alpha} sum_{k=0}^{N-j} w_k
// sum_{l=0}^{j+k} w_l y_{j+k-l} with zero boundary padding.
inline linalg::Matrix method2_matrix(double alpha, int n) {
    if (n < 2) throw std::domain_error("method2_matrix: need at least 2 intervals");
    const auto w = gl_weights(alpha, n);
    const int m = n - 1;
    const double scale = std::pow(static_cast<double>(n), 2.0 * alpha);
    linalg::Matrix out(m);
    std::vector<double> padded(static_cast<std::size_t>(n) + 1);
    std::vector<double> inner(static_cast<std::size_t>(n) + 1);
    for (int c = 1; c <= m; ++c) {
        std::fill(padded.begin(), padded.end(), 0.0);
        padded[static_cast<std::size_t>(c)] = 1.0;
        for (int mm = 0; mm <= n; ++mm) {
            double acc = 0.0;
            for (int l = 0; l <= mm; ++l)
                acc += w[static_cast<std::size_t>(l)] * padded[static_cast<std::size_t>(mm - l)];
            inner[static_cast<std::size_t>(mm)] = acc;
        }
        for (int j = 1; j <= m; ++j) {
            double acc = 0.0;
            for (int k = 0; k <= n - j; ++k)
                acc += w[static_cast<std::size_t>(k)] * inner[static_cast<std::size_t>(j + k)];
            out(j - 1, c - 1) = scale * acc;
        }
    }
    return out;
}

// All eigenpairs of the KKT system, ascending, scaled so sum y_k^2 / N = 1.
inline discrete::Spectrum method2_solve(double alpha, int n) {
    const auto m = method2_matrix(alpha, n);
    auto eig = linalg::jacobi_eigen(linalg::SymmetricMatrix(m));

    discrete::Spectrum spectrum;
    spectrum.eigenvalues = std::move(eig.values);
    spectrum.eigenvectors = std::move(eig.vectors);
    spectrum.weight.assign(static_cast<std::size_t>(n) - 1, 1.0 / n);
    spectrum.normalization = discrete::Normalization::weighted_unit;

    const double radius = std::sqrt(static_cast<double>(n));
    for (auto& y : spectrum.eigenvectors) {
        for (double& v : y) v *= radius;
        discrete::detail::fix_sign(y);
    }

    double residual = 0.0;
    for (int i = 0; i < spectrum.size(); ++i) {
        const auto my = m.apply(spectrum.eigenvectors[static_cast<std::size_t>(i)]);
        for (int k = 0; k + 1 < n; ++k)
            residual = std::max(residual,
                                std::abs(my[static_cast<std::size_t>(k)] -
                                         spectrum.eigenvalues[static_cast<std::size_t>(i)] *
                                             spectrum.eigenvectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]));
    }
    spectrum.residual_norm = residual;
    return spectrum;
}

namespace detail {

struct Method3Parts {
    linalg::Matrix s;       // symmetric core, (N-1) x (N-1)
    std::vector<double> r;  // r_alpha at interior nodes
};

// Symmetric core S with S_ik = h^{-2 alpha} sum_j w_j w_{j+i-k} p_{i+j}
// (+ q_i on the diagonal); the published matrix is diag(1/r) S.
inline Method3Parts method3_parts(const ContinuousSLProblem& problem) {
    const auto& grid = problem.grid();
    const int n = grid.intervals();
    const int m = n - 1;
    const auto w = gl_weights(problem.alpha(), n);
    const auto p = problem.p_nodes();
    const auto q = problem.q_nodes();
    const double hs = std::pow(grid.step(), -2.0 * problem.alpha());

    linalg::Matrix s(m);
    for (int i = 1; i <= m; ++i) {
        for (int k = 1; k <= m; ++k) {
            const int lo = std::max(0, k - i);
            double acc = 0.0;
            for (int j = lo; j <= n - i; ++j)
                acc += w[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j + i - k)] *
                       p[static_cast<std::size_t>(j + i)];
            double entry = hs * acc;
            if (i == k) entry += q[static_cast<std::size_t>(i)];
            s(i - 1, k - 1) = entry;
        }
    }
    std::vector<double> r(problem.r_nodes().begin() + 1, problem.r_nodes().end() - 1);
    return {std::move(s), std::move(r)};
}

}  // namespace detail

// Matrix of the algebraic eigenproblem A Y = lambda Y with the published
// entries c_ik (three cases split on i = k, i > k, i < k).
inline linalg::Matrix method3_matrix(const ContinuousSLProblem& problem) {
    auto parts = detail::method3_parts(problem);
    const int m = parts.s.order();
    linalg::Matrix a(m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) a(i, k) = parts.s(i, k) / parts.r[static_cast<std::size_t>(i)];
    return a;
}

// Eigenpairs of the method-3 matrix through the r-symmetrization used by the
// discrete solver; ascending, scaled so sum r_alpha(x_k) y_k^2 h = 1.
inline discrete::Spectrum method3_solve(const ContinuousSLProblem& problem) {
    auto parts = detail::method3_parts(problem);
    auto gen = discrete::detail::generalized_symmetric_eigen(parts.s, parts.r);
    const double h = problem.grid().step();

    discrete::Spectrum spectrum;
    spectrum.eigenvalues = std::move(gen.values);
    spectrum.eigenvectors = std::move(gen.vectors);
    spectrum.normalization = discrete::Normalization::weighted_unit;
    spectrum.weight.resize(parts.r.size());
    for (std::size_t i = 0; i < parts.r.size(); ++i) spectrum.weight[i] = parts.r[i] * h;

    const double scale = 1.0 / std::sqrt(h);
    for (auto& y : spectrum.eigenvectors) {
        for (double& v : y) v *= scale;
        discrete::detail::fix_sign(y);
    }

    double residual = 0.0;
    for (int i = 0; i < spectrum.size(); ++i) {
        const auto sy = parts.s.apply(spectrum.eigenvectors[static_cast<std::size_t>(i)]);
        for (std::size_t k = 0; k < parts.r.size(); ++k)
            residual = std::max(residual,
                                std::abs(sy[k] - spectrum.eigenvalues[static_cast<std::size_t>(i)] *
                                                     parts.r[k] *
                                                     spectrum.eigenvectors[static_cast<std::size_t>(i)][k]));
    }
    spectrum.residual_norm = residual;
    return spectrum;
}

// Pointwise defect of [D_b^alpha p D_a^alpha + q - lambda r_alpha] y at the
// interior nodes, evaluated through caputo_left_approx and the forward GL
// sum rather than the assembled matrix.
inline std::vector<double> euler_lagrange_residual(const GridFunction& y, double lambda,
                                                   const ContinuousSLProblem& problem) {
    if (!(y.grid() == problem.grid()))
        throw std::invalid_argument("euler_lagrange_residual: grid mismatch");
    const auto& grid = problem.grid();
    const int n = grid.intervals();
    const auto w = gl_weights(problem.alpha(), n);

    std::vector<double> flux(static_cast<std::size_t>(grid.nodes()));
    for (int j = 0; j < grid.nodes(); ++j)
        flux[static_cast<std::size_t>(j)] =
            problem.p_nodes()[static_cast<std::size_t>(j)] * caputo_left_approx(y, problem.alpha(), j);
    const GridFunction g(grid, std::move(flux));

    std::vector<double> out(static_cast<std::size_t>(n) - 1);
    for (int i = 1; i < n; ++i)
        out[static_cast<std::size_t>(i) - 1] =
            forward_diff(g, w, i) + (problem.q_nodes()[static_cast<std::size_t>(i)] -
                                     lambda * problem.r_nodes()[static_cast<std::size_t>(i)]) *
                                        y[i];
    return out;
}

}  // namespace fracsl::continuous
