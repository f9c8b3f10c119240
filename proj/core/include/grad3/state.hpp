#ifndef GRAD3_STATE_HPP
#define GRAD3_STATE_HPP

#include <cmath>

#include "grad3/params.hpp"

namespace grad3 {

/** Complex (p_hat, u_hat, sigma_hat) amplitudes of one Fourier mode. */
struct ModeState {
    Complex p_hat{0.0, 0.0};
    Complex u_hat{0.0, 0.0};
    Complex sigma_hat{0.0, 0.0};
    double k = 0.0;
    double epsilon = 1.0;

    Vector3c vec() const { return Vector3c(p_hat, u_hat, sigma_hat); }

    double norm() const {
        return std::sqrt(std::norm(p_hat) + std::norm(u_hat) + std::norm(sigma_hat));
    }

    static ModeState from_vec(const Vector3c& v, const SystemParams& params) {
        return ModeState{v(0), v(1), v(2), params.k, params.epsilon};
    }

    SystemParams params() const { return SystemParams(epsilon, k); }
};

}  // namespace grad3

#endif
