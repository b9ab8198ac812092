#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fracsl {

// A floating-point computation left its supported regime (lost convergence,
// overflow, non-finite intermediate).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative routine exhausted its budget before reaching tolerance.
// Carries the step count and, where meaningful, the last iterate.
class ConvergenceError : public NumericError {
public:
    ConvergenceError(const std::string& what, long steps, std::vector<double> last_iterate = {})
        : NumericError(what), steps_(steps), last_iterate_(std::move(last_iterate)) {}

    long steps() const noexcept { return steps_; }
    const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

private:
    long steps_;
    std::vector<double> last_iterate_;
};

}  // namespace fracsl
