#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracsl {

// Uniform mesh x_j = a + j*h, j = 0..N, with h = (b - a)/N.
class UniformGrid {
public:
    UniformGrid(double a, double b, int n_intervals)
        : a_(a), b_(b), n_(n_intervals), h_((b - a) / n_intervals) {
        if (n_intervals < 2)
            throw std::domain_error("UniformGrid: need at least 2 intervals, got " +
                                    std::to_string(n_intervals));
        if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
            throw std::domain_error("UniformGrid: endpoints must satisfy a < b");
    }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    int intervals() const noexcept { return n_; }
    int nodes() const noexcept { return n_ + 1; }
    double step() const noexcept { return h_; }

    // x_j; (x_j - a) is formed as j*h so the offset from a is exact in j.
    double node(int j) const noexcept { return a_ + j * h_; }

    friend bool operator==(const UniformGrid& lhs, const UniformGrid& rhs) noexcept {
        return lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_ && lhs.n_ == rhs.n_;
    }

private:
    double a_;
    double b_;
    int n_;
    double h_;
};

// Real-valued function sampled on every node of a UniformGrid.
// Values are immutable after construction; instances are safe to share
// across threads.
class GridFunction {
public:
    explicit GridFunction(const UniformGrid& grid)
        : grid_(grid), values_(static_cast<std::size_t>(grid.nodes()), 0.0) {}

    GridFunction(const UniformGrid& grid, std::vector<double> values)
        : grid_(grid), values_(std::move(values)) {
        if (values_.size() != static_cast<std::size_t>(grid_.nodes()))
            throw std::invalid_argument("GridFunction: expected " + std::to_string(grid_.nodes()) +
                                        " values, got " + std::to_string(values_.size()));
    }

    template <typename F>
    static GridFunction sample(const UniformGrid& grid, F&& f) {
        std::vector<double> v(static_cast<std::size_t>(grid.nodes()));
        for (int j = 0; j < grid.nodes(); ++j) v[static_cast<std::size_t>(j)] = f(grid.node(j));
        return GridFunction(grid, std::move(v));
    }

    const UniformGrid& grid() const noexcept { return grid_; }
    int nodes() const noexcept { return grid_.nodes(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](int j) const { return values_[static_cast<std::size_t>(j)]; }

private:
    UniformGrid grid_;
    std::vector<double> values_;
};

// Interior values y_1..y_{N-1} extended by the Dirichlet boundary y_0 = y_N = 0.
inline GridFunction pad_with_zero_boundary(const UniformGrid& grid,
                                           std::span<const double> interior) {
    if (interior.size() != static_cast<std::size_t>(grid.intervals() - 1))
        throw std::invalid_argument("pad_with_zero_boundary: expected " +
                                    std::to_string(grid.intervals() - 1) + " interior values, got " +
                                    std::to_string(interior.size()));
    std::vector<double> v(static_cast<std::size_t>(grid.nodes()), 0.0);
    std::copy(interior.begin(), interior.end(), v.begin() + 1);
    return GridFunction(grid, std::move(v));
}

}  // namespace fracsl
