#include "grad3/fit.hpp"

#include <cmath>
#include <vector>

#include "grad3/errors.hpp"

namespace grad3 {

FitResult linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error("linear_fit: need at least two matching samples");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw Error("linear_fit: abscissae are all identical");

    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    // Constant data fitted by a flat line is a perfect fit, not r2 = 0/0.
    fit.r2 = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    if (fit.r2 < 0.0) fit.r2 = 0.0;
    if (fit.r2 > 1.0) fit.r2 = 1.0;
    fit.reliable = fit.r2 >= 0.99;
    return fit;
}

FitResult loglog_fit(std::span<const double> x, std::span<const double> y) {
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw Error("loglog_fit: data must be strictly positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return linear_fit(lx, ly);
}

}  // namespace grad3
