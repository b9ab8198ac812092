#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracsl/gl_weights.hpp"
#include "fracsl/grid.hpp"

namespace fracsl {

namespace detail {

inline void check_node_index(const GridFunction& f, int k, const char* who) {
    if (k < 0 || k >= f.nodes())
        throw std::out_of_range(std::string(who) + ": node index " + std::to_string(k) +
                                " outside 0.." + std::to_string(f.nodes() - 1));
}

inline void check_weight_length(const GridFunction& f, const GLWeights& w, const char* who) {
    if (w.size() < static_cast<std::size_t>(f.nodes()))
        throw std::invalid_argument(std::string(who) + ": weight sequence shorter than the grid");
}

}  // namespace detail

// Backward fractional difference at node k: h^{-alpha} sum_{i=0}^{k} w_i f(x_{k-i}).
inline double backward_diff(const GridFunction& f, const GLWeights& w, int k) {
    detail::check_node_index(f, k, "backward_diff");
    detail::check_weight_length(f, w, "backward_diff");
    const auto v = f.values();
    double acc = 0.0;
    for (int i = 0; i <= k; ++i)
        acc += w[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(k - i)];
    return acc * std::pow(f.grid().step(), -w.order());
}

inline double backward_diff(const GridFunction& f, double alpha, int k) {
    return backward_diff(f, gl_weights(alpha, f.grid().intervals()), k);
}

// Forward fractional difference at node k: h^{-alpha} sum_{i=0}^{N-k} w_i f(x_{k+i}).
inline double forward_diff(const GridFunction& f, const GLWeights& w, int k) {
    detail::check_node_index(f, k, "forward_diff");
    detail::check_weight_length(f, w, "forward_diff");
    const auto v = f.values();
    const int n = f.grid().intervals();
    double acc = 0.0;
    for (int i = 0; i <= n - k; ++i)
        acc += w[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(k + i)];
    return acc * std::pow(f.grid().step(), -w.order());
}

inline double forward_diff(const GridFunction& f, double alpha, int k) {
    return forward_diff(f, gl_weights(alpha, f.grid().intervals()), k);
}

// Whole-grid application, node by node (O(N^2)).
inline GridFunction backward_diff_all(const GridFunction& f, double alpha) {
    const auto w = gl_weights(alpha, f.grid().intervals());
    std::vector<double> out(static_cast<std::size_t>(f.nodes()));
    for (int k = 0; k < f.nodes(); ++k) out[static_cast<std::size_t>(k)] = backward_diff(f, w, k);
    return GridFunction(f.grid(), std::move(out));
}

inline GridFunction forward_diff_all(const GridFunction& f, double alpha) {
    const auto w = gl_weights(alpha, f.grid().intervals());
    std::vector<double> out(static_cast<std::size_t>(f.nodes()));
    for (int k = 0; k < f.nodes(); ++k) out[static_cast<std::size_t>(k)] = forward_diff(f, w, k);
    return GridFunction(f.grid(), std::move(out));
}

struct SbpResidual {
    double full = 0.0;
    double boundary = 0.0;
};

// Defect of the summation-by-parts exchange between backward and forward
// differences.  `full` pairs the complete node sums and vanishes for any f, g;
// `boundary` drops g_0 on the left and f_N on the right and vanishes when f or
// g is zero at both endpoints.
inline SbpResidual summation_by_parts_residual(const GridFunction& f, const GridFunction& g,
                                               double alpha) {
    if (!(f.grid() == g.grid()))
        throw std::invalid_argument("summation_by_parts_residual: grids differ");
    const int n = f.grid().intervals();
    const auto w = gl_weights(alpha, n);
    double left_full = 0.0, right_full = 0.0, left_bdry = 0.0, right_bdry = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double bd = backward_diff(f, w, k);
        const double fd = forward_diff(g, w, k);
        left_full += g[k] * bd;
        right_full += f[k] * fd;
        if (k >= 1) left_bdry += g[k] * bd;
        if (k <= n - 1) right_bdry += f[k] * fd;
    }
    return {left_full - right_full, left_bdry - right_bdry};
}

}  // namespace fracsl
