#ifndef GRAD3_PARAMS_HPP
#define GRAD3_PARAMS_HPP

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>

#include "grad3/errors.hpp"

namespace grad3 {

using Complex = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;
using Matrix2c = Eigen::Matrix2cd;
using Vector3c = Eigen::Vector3cd;
using Vector2c = Eigen::Vector2cd;

/**
 * The two scalars that parameterize everything: the Knudsen number eps > 0
 * and the wave number k (any finite real, including 0 and negative values).
 */
struct SystemParams {
    double epsilon;
    double k;

    SystemParams(double epsilon_, double k_) : epsilon(epsilon_), k(k_) {
        if (!(epsilon > 0.0) || !std::isfinite(epsilon))
            throw Error("SystemParams: Knudsen number must be positive and finite");
        if (!std::isfinite(k))
            throw Error("SystemParams: wave number must be finite");
    }
};

/**
 * Frequency-space generator of the three-component Grad system acting on
 * (p_hat, u_hat, sigma_hat):
 *
 *   [ 0        -5/3 i k   0      ]
 *   [ -i k      0        -i k    ]
 *   [ 0        -4/3 i k  -1/eps  ]
 *
 * Its trace is exactly -1/eps.
 */
inline Matrix3c grad_operator(const SystemParams& p) {
    const Complex ik(0.0, p.k);
    Matrix3c L = Matrix3c::Zero();
    L(0, 1) = -5.0 / 3.0 * ik;
    L(1, 0) = -ik;
    L(1, 2) = -ik;
    L(2, 1) = -4.0 / 3.0 * ik;
    L(2, 2) = Complex(-1.0 / p.epsilon, 0.0);
    return L;
}

/**
 * Coefficients of the monic form of the characteristic polynomial,
 * lambda^3 + c2 lambda^2 + c1 lambda + c0, with
 * c2 = 1/eps, c1 = 3 k^2, c0 = (5/3) k^2 / eps.
 */
inline std::array<double, 3> monic_coefficients(const SystemParams& p) {
    return {5.0 / 3.0 * p.k * p.k / p.epsilon,  // c0
            3.0 * p.k * p.k,                    // c1
            1.0 / p.epsilon};                   // c2
}

}  // namespace grad3

#endif
