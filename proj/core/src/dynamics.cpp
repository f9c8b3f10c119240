#include "grad3/dynamics.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "grad3/errors.hpp"

namespace grad3 {

namespace {

// sinh(z)/z with a series for small |z|.
Complex sinch(Complex z) {
    if (std::abs(z) < 1e-4) {
        const Complex z2 = z * z;
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sinh(z) / z;
}

}  // namespace

Matrix3c full_propagator(const SystemParams& params, double t) {
    if (params.k == 0.0) {
        Matrix3c prop = Matrix3c::Identity();
        prop(2, 2) = std::exp(-t / params.epsilon);
        return prop;
    }
    try {
        const EigenBasis basis = build_eigenbasis(params, eigenvalues(params));
        Matrix3c exp_diag = Matrix3c::Zero();
        for (int j = 0; j < 3; ++j)
            exp_diag(j, j) = std::exp(basis.lambda[j] * t);
        return basis.Q * exp_diag * basis.Q_inv;
    } catch (const SingularBasis&) {
        const Matrix3c scaled = grad_operator(params) * t;
        return scaled.exp();  // dense scaling-and-squaring fallback
    }
}

ModeState propagate_full(const ModeState& state, double t) {
    const SystemParams params = state.params();
    return ModeState::from_vec(full_propagator(params, t) * state.vec(), params);
}

ModeState propagate_rk4(const ModeState& state, double t, double dt) {
    if (t < 0.0) throw Error("propagate_rk4: negative time");
    if (!(dt > 0.0)) throw Error("propagate_rk4: step must be positive");
    if (dt >= 2.7 * state.epsilon)
        throw StabilityViolation("RK4 step exceeds the stiff stability bound 2.7 eps");

    const SystemParams params = state.params();
    const Matrix3c L = grad_operator(params);
    Vector3c z = state.vec();

    double remaining = t;
    while (remaining > 0.0) {
        const double h = std::min(dt, remaining);
        const Vector3c k1 = L * z;
        const Vector3c k2 = L * (z + 0.5 * h * k1);
        const Vector3c k3 = L * (z + 0.5 * h * k2);
        const Vector3c k4 = L * (z + h * k3);
        z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        remaining -= h;
    }
    return ModeState::from_vec(z, params);
}

const char* to_string(ReducedKind k) {
    switch (k) {
        case ReducedKind::slow_exact: return "slow_exact";
        case ReducedKind::fast: return "fast";
        case ReducedKind::euler: return "euler";
        case ReducedKind::navier_stokes: return "navier_stokes";
    }
    return "unknown";
}

ReducedModel make_reduced_model(ReducedKind kind, const SystemParams& params) {
    const Complex ik(0.0, params.k);
    const double k2 = params.k * params.k;

    ReducedModel model{kind, params, Matrix2c::Zero(), {}, {}, 0.0};
    model.generator(0, 1) = -5.0 / 3.0 * ik;

    switch (kind) {
        case ReducedKind::slow_exact: {
            const SpectralDecomposition spec = eigenvalues(params);
            model.closure = closure_coefficients(params, spec);
            model.generator(1, 0) = -ik * (1.0 - k2 * model.closure.B);
            model.generator(1, 1) = k2 * model.closure.A;
            break;
        }
        case ReducedKind::fast: {
            const SpectralDecomposition spec = eigenvalues(params);
            model.lambda_diff = spec.lambda_diff;
            model.generator(1, 1) = spec.lambda_diff;
            if (params.k != 0.0)
                model.constants_diff =
                    mode_constants(params, Complex(spec.lambda_diff, 0.0));
            break;
        }
        case ReducedKind::euler:
            model.generator(1, 0) = -ik;
            break;
        case ReducedKind::navier_stokes:
            model.generator(1, 0) = -ik;
            model.generator(1, 1) = -4.0 / 3.0 * params.epsilon * k2;
            break;
    }
    return model;
}

Matrix2c reduced_propagator(const ReducedModel& model, double t) {
    // exp(tG) = e^{tm} [cosh(td) I + sinch(td) t (G - mI)] for a 2x2 G with
    // mean eigenvalue m and half-spread d, smooth through d -> 0.
    const Matrix2c& G = model.generator;
    const Complex mean = 0.5 * (G(0, 0) + G(1, 1));
    const Complex det = G(0, 0) * G(1, 1) - G(0, 1) * G(1, 0);
    const Complex d = std::sqrt(mean * mean - det);
    const Complex td = t * d;

    Matrix2c result = std::cosh(td) * Matrix2c::Identity() +
                      t * sinch(td) * (G - mean * Matrix2c::Identity());
    result *= std::exp(t * mean);
    return result;
}

std::pair<Complex, Complex> propagate_reduced(const ReducedModel& model, Complex p_hat,
                                              Complex u_hat, double t) {
    const Matrix2c prop = reduced_propagator(model, t);
    const Vector2c z = prop * Vector2c(p_hat, u_hat);
    return {z(0), z(1)};
}

Complex reduced_stress(const ReducedModel& model, Complex p_hat, Complex u_hat) {
    switch (model.kind) {
        case ReducedKind::slow_exact:
            return slow_constitutive(model.params, model.closure, p_hat, u_hat);
        case ReducedKind::fast:
            if (model.params.k == 0.0)
                throw Error("reduced_stress: fast law is degenerate at k = 0");
            return fast_constitutive(model.params, model.constants_diff,
                                     FastInput::from_u, u_hat);
        case ReducedKind::euler:
            return Complex(0.0, 0.0);
        case ReducedKind::navier_stokes:
            return -4.0 / 3.0 * model.params.epsilon * Complex(0.0, model.params.k) * u_hat;
    }
    return Complex(0.0, 0.0);
}

}  // namespace grad3
