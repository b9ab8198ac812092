#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracsl/continuous_slp.hpp"
#include "fracsl/errors.hpp"
#include "fracsl/grid.hpp"
#include "fracsl/special_functions.hpp"

namespace fracsl::diffusion {

namespace detail {

inline constexpr double kSeriesLimit = 5.0;
inline constexpr int kSeriesCap = 1000;
inline constexpr int kAsymptoticTerms = 10;

inline double mittag_leffler_series(double beta, double z) {
    double sum = 0.0, comp = 0.0;  // Kahan accumulation
    double pow_z = 1.0;
    for (int n = 0; n <= kSeriesCap; ++n) {
        const double arg = beta * n + 1.0;
        double term;
        if (arg <= 150.0 && std::isfinite(pow_z)) {
            term = pow_z * special::reciprocal_gamma(arg);
        } else if (z == 0.0) {
            term = 0.0;
        } else {
            const double mag = std::exp(n * std::log(std::abs(z)) - special::log_gamma(arg));
            term = (z < 0.0 && (n % 2 == 1)) ? -mag : mag;
        }
        const double yv = term - comp;
        const double tv = sum + yv;
        comp = (tv - sum) - yv;
        sum = tv;
        if (n >= 1 && std::abs(term) <= 1e-16 * std::abs(sum)) return sum;
        pow_z *= z;
    }
    throw NumericError("mittag_leffler: series did not converge within " +
                       std::to_string(kSeriesCap) + " terms (beta = " + std::to_string(beta) + ")");
}

inline double mittag_leffler_asymptotic(double beta, double z) {
    double sum = 0.0;
    double z_inv_pow = 1.0;
    for (int k = 1; k <= kAsymptoticTerms; ++k) {
        z_inv_pow /= z;
        sum += z_inv_pow * special::reciprocal_gamma(1.0 - beta * k);
    }
    return -sum;
}

}  // namespace detail

// One-parameter Mittag-Leffler function E_beta(z) on the real line: power
// series with compensated summation for |z| <= 5, ten-term algebraic tail for
// z in [-z_max, -5).  Arguments beyond that window are rejected.
inline double mittag_leffler(double beta, double z, double z_max = 50.0) {
    if (!(beta > 0.0 && beta <= 1.0))
        throw std::domain_error("mittag_leffler: beta must lie in (0, 1], got " +
                                std::to_string(beta));
    if (!std::isfinite(z)) throw std::domain_error("mittag_leffler: z must be finite");
    if (std::abs(z) <= detail::kSeriesLimit) return detail::mittag_leffler_series(beta, z);
    if (z < 0.0 && z >= -z_max) return detail::mittag_leffler_asymptotic(beta, z);
    throw std::domain_error("mittag_leffler: z = " + std::to_string(z) +
                            " outside the supported domain [-" + std::to_string(z_max) + ", 5]");
}

// Trapezoidal approximation of the weighted inner product int r_alpha f g dx.
inline double weighted_inner(const GridFunction& f, const GridFunction& g,
                             const std::function<double(double)>& r_alpha) {
    if (!(f.grid() == g.grid())) throw std::invalid_argument("weighted_inner: grids differ");
    const auto& grid = f.grid();
    const int n = grid.intervals();
    double acc = 0.5 * (r_alpha(grid.node(0)) * f[0] * g[0] +
                        r_alpha(grid.node(n)) * f[n] * g[n]);
    for (int j = 1; j < n; ++j) acc += r_alpha(grid.node(j)) * f[j] * g[j];
    return acc * grid.step();
}

// Space-time fractional diffusion problem: time order beta, spatial operator
// from the continuous Sturm-Liouville problem, initial profile f, evaluation
// times, and the series truncation K.
class DiffusionProblem {
public:
    DiffusionProblem(double beta, continuous::ContinuousSLProblem spatial, GridFunction initial,
                     std::vector<double> times, int truncation = 0,
                     double ml_domain_limit = 1e4)
        : beta_(beta),
          spatial_(std::move(spatial)),
          initial_(std::move(initial)),
          times_(std::move(times)),
          truncation_(truncation),
          ml_domain_limit_(ml_domain_limit) {
        if (!(beta_ > 0.0 && beta_ <= 1.0))
            throw std::domain_error("DiffusionProblem: beta must lie in (0, 1]");
        if (!(initial_.grid() == spatial_.grid()))
            throw std::invalid_argument("DiffusionProblem: initial profile grid mismatch");
        if (times_.empty())
            throw std::invalid_argument("DiffusionProblem: need at least one evaluation time");
        for (std::size_t i = 0; i < times_.size(); ++i) {
            if (!(times_[i] >= 0.0))
                throw std::domain_error("DiffusionProblem: times must be nonnegative");
            if (i > 0 && times_[i] < times_[i - 1])
                throw std::invalid_argument("DiffusionProblem: times must ascend");
        }
        const int max_modes = spatial_.grid().intervals() - 1;
        if (truncation_ <= 0) truncation_ = std::min(10, max_modes);
        if (truncation_ > max_modes)
            throw std::invalid_argument("DiffusionProblem: truncation K exceeds N - 1 modes");
    }

    double beta() const noexcept { return beta_; }
    const continuous::ContinuousSLProblem& spatial() const noexcept { return spatial_; }
    const GridFunction& initial() const noexcept { return initial_; }
    const std::vector<double>& times() const noexcept { return times_; }
    int truncation() const noexcept { return truncation_; }
    double ml_domain_limit() const noexcept { return ml_domain_limit_; }

private:
    double beta_;
    continuous::ContinuousSLProblem spatial_;
    GridFunction initial_;
    std::vector<double> times_;
    int truncation_;
    double ml_domain_limit_;
};

// Evaluated solution surface u(t_i, x_j); boundary values are exactly zero.
struct DiffusionField {
    std::vector<double> times;
    UniformGrid grid;
    std::vector<std::vector<double>> values;  // values[i][j] = u(times[i], node j)
};

// Truncated eigenfunction series u(t, x) = sum_k <y_k, f> E_beta(-lambda_k t^beta) y_k(x)
// with eigenpairs from the method-3 discretization and eigenfunctions
// renormalized under the trapezoidal weighted inner product.
inline DiffusionField solve_diffusion(const DiffusionProblem& problem) {
    const auto& spatial = problem.spatial();
    const auto& grid = spatial.grid();
    const auto& f = problem.initial();
    const int n = grid.intervals();
    if (f[0] != 0.0 || f[n] != 0.0)
        throw std::invalid_argument("solve_diffusion: initial profile must vanish at the boundary");

    const auto spectrum = continuous::method3_solve(spatial);
    const int k_modes = problem.truncation();
    const auto& r = spatial.r_alpha();

    std::vector<GridFunction> modes;
    std::vector<double> coeff(static_cast<std::size_t>(k_modes));
    modes.reserve(static_cast<std::size_t>(k_modes));
    for (int k = 0; k < k_modes; ++k) {
        GridFunction y = pad_with_zero_boundary(grid, spectrum.eigenvectors[static_cast<std::size_t>(k)]);
        const double norm = std::sqrt(weighted_inner(y, y, r));
        std::vector<double> scaled(y.values().begin(), y.values().end());
        for (double& v : scaled) v /= norm;
        modes.emplace_back(grid, std::move(scaled));
        coeff[static_cast<std::size_t>(k)] = weighted_inner(modes.back(), f, r);
    }

    const double t_max = problem.times().back();
    const double largest_arg =
        spectrum.eigenvalues[static_cast<std::size_t>(k_modes) - 1] * std::pow(t_max, problem.beta());
    if (largest_arg > problem.ml_domain_limit())
        throw std::domain_error(
            "solve_diffusion: Mittag-Leffler argument -lambda_K t^beta exceeds the supported "
            "domain; reduce the truncation K or the final time");

    DiffusionField field{problem.times(), grid, {}};
    field.values.resize(problem.times().size());
    for (std::size_t ti = 0; ti < problem.times().size(); ++ti) {
        const double t = problem.times()[ti];
        const double t_pow = std::pow(t, problem.beta());
        std::vector<double> row(static_cast<std::size_t>(grid.nodes()), 0.0);
        for (int k = 0; k < k_modes; ++k) {
            const double decay =
                mittag_leffler(problem.beta(),
                               -spectrum.eigenvalues[static_cast<std::size_t>(k)] * t_pow,
                               problem.ml_domain_limit());
            const double amp = coeff[static_cast<std::size_t>(k)] * decay;
            const auto& mode = modes[static_cast<std::size_t>(k)];
            for (int j = 1; j < n; ++j) row[static_cast<std::size_t>(j)] += amp * mode[j];
        }
        row[0] = 0.0;
        row[static_cast<std::size_t>(n)] = 0.0;
        field.values[ti] = std::move(row);
    }
    return field;
}

}  // namespace fracsl::diffusion
