#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracsl {

// Grunwald-Letnikov coefficient sequence w_k = (-1)^k binom(alpha, k), k = 0..m.
// For 0 < alpha < 1 every w_k with k >= 1 is negative and |w_k| decreases;
// partial sums stay in (0, 1].
class GLWeights {
public:
    double order() const noexcept { return alpha_; }
    std::size_t size() const noexcept { return w_.size(); }
    double operator[](std::size_t k) const { return w_[k]; }
    std::span<const double> coeffs() const noexcept { return w_; }

    friend GLWeights gl_weights(double alpha, int m);

private:
    GLWeights(double alpha, std::vector<double> w) : alpha_(alpha), w_(std::move(w)) {}

    double alpha_;
    std::vector<double> w_;
};

// w_0 = 1, w_k = w_{k-1} * (k - 1 - alpha) / k.  The multiplicative recurrence
// stays bounded where the factorial form of the binomial would overflow.
inline GLWeights gl_weights(double alpha, int m) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::domain_error("gl_weights: alpha must lie in (0, 1], got " +
                                std::to_string(alpha));
    if (m < 0) throw std::domain_error("gl_weights: m must be nonnegative");
    std::vector<double> w(static_cast<std::size_t>(m) + 1);
    w[0] = 1.0;
    for (int k = 1; k <= m; ++k)
        w[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(k) - 1] * ((k - 1 - alpha) / k);
    return GLWeights(alpha, std::move(w));
}

}  // namespace fracsl
