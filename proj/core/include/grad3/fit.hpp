#ifndef GRAD3_FIT_HPP
#define GRAD3_FIT_HPP

#include <span>

namespace grad3 {

/** Least-squares line fit. reliable is false when r2 < 0.99. */
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    bool reliable = false;
};

/** Ordinary least squares of y against x; requires >= 2 points. */
FitResult linear_fit(std::span<const double> x, std::span<const double> y);

/** Least squares of log(y) against log(x); all inputs must be positive. */
FitResult loglog_fit(std::span<const double> x, std::span<const double> y);

}  // namespace grad3

#endif
