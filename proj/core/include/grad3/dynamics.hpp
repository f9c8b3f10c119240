#ifndef GRAD3_DYNAMICS_HPP
#define GRAD3_DYNAMICS_HPP

#include <utility>

#include "grad3/manifolds.hpp"
#include "grad3/params.hpp"
#include "grad3/spectral.hpp"
#include "grad3/state.hpp"

namespace grad3 {

/**
 * exp(t L_k) via eigendecomposition Q diag(e^{l t}) Q^-1; exact to rounding
 * for this linear system. k = 0 uses the closed form diag(1, 1, e^{-t/eps});
 * a SingularBasis falls back to a dense scaling-and-squaring exponential.
 */
Matrix3c full_propagator(const SystemParams& params, double t);

ModeState propagate_full(const ModeState& state, double t);

/**
 * Classical RK4 cross-check integrator with fixed step dt (plus one shorter
 * final step to land on t). Throws StabilityViolation when dt >= 2.7 eps,
 * the explicit stability bound against the stiff -1/eps relaxation.
 */
ModeState propagate_rk4(const ModeState& state, double t, double dt);

enum class ReducedKind { slow_exact, fast, euler, navier_stokes };

const char* to_string(ReducedKind k);

/**
 * 2x2 generator acting on (p_hat, u_hat):
 *
 *   slow_exact    [[0, -5/3 i k], [-i k (1 - k^2 B), k^2 A]]
 *   fast          [[0, -5/3 i k], [0, lambda_diff]]
 *   euler         [[0, -5/3 i k], [-i k, 0]]
 *   navier_stokes [[0, -5/3 i k], [-i k, -4/3 eps k^2]]
 *
 * The aux fields carry whatever the constitutive reconstruction of
 * sigma_hat needs for the given kind.
 */
struct ReducedModel {
    ReducedKind kind;
    SystemParams params;
    Matrix2c generator;
    ClosureCoefficients closure;  // slow_exact
    ModeConstants constants_diff; // fast (k != 0)
    double lambda_diff = 0.0;     // fast
};

ReducedModel make_reduced_model(ReducedKind kind, const SystemParams& params);

/** Exact 2x2 matrix exponential exp(t G). */
Matrix2c reduced_propagator(const ReducedModel& model, double t);

std::pair<Complex, Complex> propagate_reduced(const ReducedModel& model, Complex p_hat,
                                              Complex u_hat, double t);

/**
 * Stress reconstruction for the reduced models: the slow closure for
 * slow_exact, the fast law (from_u branch) for fast, zero for euler and the
 * first-order stress -4/3 eps i k u_hat for navier_stokes.
 */
Complex reduced_stress(const ReducedModel& model, Complex p_hat, Complex u_hat);

}  // namespace grad3

#endif
