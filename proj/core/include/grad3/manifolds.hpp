#ifndef GRAD3_MANIFOLDS_HPP
#define GRAD3_MANIFOLDS_HPP

#include <vector>

#include "grad3/params.hpp"
#include "grad3/rng.hpp"
#include "grad3/spectral.hpp"
#include "grad3/state.hpp"

namespace grad3 {

/**
 * Per-mode eigenvector constants a = lambda/k and
 * b = 3 (1 + eps lambda) / (4 eps k); the eigenvector of L_k for eigenvalue
 * lambda is (-1 - a b, i b, 1). Requires k != 0 (b divides by k).
 */
struct ModeConstants {
    Complex a;
    Complex b;
};

ModeConstants mode_constants(const SystemParams& params, Complex lambda);

/** Eigenvector of L_k for the given eigenvalue, sigma-component normalized to 1. */
Vector3c eigenvector(const SystemParams& params, Complex lambda);

/**
 * Eigenvector matrix Q with columns ordered (lambda_ac, lambda_ac*,
 * lambda_diff), its direct 3x3 inverse, and a Frobenius condition estimate.
 * The acoustic columns have conjugate constants (a, b); because the middle
 * entry carries an explicit factor i, their p and sigma components are
 * entrywise conjugate while the u components are negative conjugates.
 */
struct EigenBasis {
    Matrix3c Q;
    Matrix3c Q_inv;
    double condition_estimate = 0.0;
    std::array<Complex, 3> lambda{};  // eigenvalues in column order
    SystemParams params;
};

/**
 * Throws SingularBasis when |det Q| < 1e-12 * ||Q||_max^3. Requires k != 0
 * and a successfully classified decomposition.
 */
EigenBasis build_eigenbasis(const SystemParams& params, const SpectralDecomposition& spec);

/**
 * Real coefficients of the slow-manifold constitutive law
 * sigma_hat = i k A u_hat - k^2 B p_hat:
 *
 *   A = -4 eps (1 + eps (l1 + l2)) / d,   B = -4 eps^2 / d,
 *   d = 3 + 3 eps (l1 + l2) + eps^2 (3 l1 l2 - 4 k^2),
 *
 * with (l1, l2) the acoustic pair. Both are real because l1 + l2 and l1 l2
 * are real by conjugacy; an imaginary part above 1e-10 is an error, not a
 * silent truncation. At k = 0 (degenerate decomposition, l1 = l2 = 0) the
 * values are exactly A = -4 eps / 3, B = -4 eps^2 / 3.
 */
struct ClosureCoefficients {
    double A = 0.0;
    double B = 0.0;
};

ClosureCoefficients closure_coefficients(const SystemParams& params,
                                         const SpectralDecomposition& spec);

/** Slow-manifold stress: sigma_hat = i k A u_hat - k^2 B p_hat. */
Complex slow_constitutive(const SystemParams& params, const ClosureCoefficients& coeffs,
                          Complex p_hat, Complex u_hat);

enum class FastInput { from_u, from_p };

/**
 * Fast-manifold stress: sigma_hat = u_hat / (i b3) or
 * sigma_hat = -p_hat / (1 + a3 b3), with (a3, b3) the diffusion-mode
 * constants. Throws DegenerateDenominator when |b3| or |1 + a3 b3| < 1e-12.
 */
Complex fast_constitutive(const SystemParams& params, const ModeConstants& constants_diff,
                          FastInput which, Complex value);

enum class ManifoldKind { slow, fast };

/**
 * Invariant subspace with its spectral projector Q E Q^-1 (E selects the
 * acoustic or diffusion columns). The projector is idempotent, commutes
 * with L_k, and slow + fast = identity.
 */
struct ManifoldBasis {
    ManifoldKind kind;
    std::vector<Vector3c> basis_vectors;  // 2 slow, 1 fast
    Matrix3c projector;
    SystemParams params;
};

ManifoldBasis make_manifold(ManifoldKind kind, const EigenBasis& basis);

/** Component of the state inside the manifold; slow + fast recovers the state. */
ModeState project(const ManifoldBasis& basis, const ModeState& state);

/** c1 q_ac + c2 q_ac* as a mode state. */
ModeState slow_state(const EigenBasis& basis, Complex c1, Complex c2);

/** c q_diff as a mode state. */
ModeState fast_state(const EigenBasis& basis, Complex c);

/** Random unit-norm slow-manifold state. */
ModeState random_slow_state(const EigenBasis& basis, Rng& rng);

}  // namespace grad3

#endif
