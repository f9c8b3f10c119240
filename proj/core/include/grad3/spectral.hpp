#ifndef GRAD3_SPECTRAL_HPP
#define GRAD3_SPECTRAL_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "grad3/params.hpp"

namespace grad3 {

enum class SpectralMethod { explicit_cardano, numeric_oracle, degenerate_k0 };

const char* to_string(SpectralMethod m);

/** A root counts as real when |Im| <= real_root_tol * (1 + |lambda|). */
inline constexpr double real_root_tol = 1e-8;

/**
 * Spectrum of the Grad operator at one (k, eps): a complex-conjugate
 * acoustic pair and one real diffusion eigenvalue.
 *
 * Invariants: Im(lambda_ac) >= 0, lambda_ac_conj is the exact conjugate,
 * lambda_diff carries exactly zero imaginary part, and the Vieta identities
 *   sum      = -1/eps
 *   pair sum =  3 k^2
 *   product  = -(5/3) k^2 / eps
 * hold to rounding.
 */
struct SpectralDecomposition {
    Complex lambda_ac;
    Complex lambda_ac_conj;
    double lambda_diff;
    std::array<double, 3> residuals;  // |P_k(lambda)| for (ac, ac*, diff)
    SpectralMethod method;

    std::array<Complex, 3> all() const {
        return {lambda_ac, lambda_ac_conj, Complex(lambda_diff, 0.0)};
    }
    double spectral_radius() const {
        return std::max(std::abs(lambda_ac), std::abs(lambda_diff));
    }
    double max_residual() const {
        return std::max({residuals[0], residuals[1], residuals[2]});
    }
};

/** Characteristic polynomial -l^3 - l^2/eps - 3k^2 l - (5/3)k^2/eps. */
Complex char_poly_eval(const SystemParams& params, Complex lambda);

/**
 * Explicit cubic solution: the diffusion root from the two-cube-root
 * formula with branch pairing chosen so the product of the cube-root terms
 * equals the real quantity 1 - 9 k^2 eps^2, the acoustic pair from
 * deflating by (lambda - lambda_diff). Requires k != 0.
 *
 * Throws BranchFailure when no pairing yields a real diffusion root; the
 * caller should fall back to eigenvalues_numeric.
 */
SpectralDecomposition eigenvalues_cardano(const SystemParams& params);

/**
 * Independent oracle: dense eigenvalues of the companion matrix of the
 * characteristic cubic. Shares no root-finding code with the Cardano path.
 * k = 0 routes to eigenvalues_degenerate.
 *
 * Throws ClassificationFailure when the roots cannot be split into one
 * real root plus a conjugate pair.
 */
SpectralDecomposition eigenvalues_numeric(const SystemParams& params);

/** Analytic spectrum {0, 0, -1/eps} at k = 0 (the cubic factors as -l^2 (l + 1/eps)). */
SpectralDecomposition eigenvalues_degenerate(const SystemParams& params);

/** Production dispatch: degenerate at k = 0, else Cardano with numeric fallback. */
SpectralDecomposition eigenvalues(const SystemParams& params);

struct SpectrumPoint {
    double k = 0.0;
    std::optional<SpectralDecomposition> decomposition;
    std::string error;  // empty on success
};

/**
 * One decomposition per grid point, in input order. Per-point failures are
 * tagged in the row instead of aborting the sweep. Parallel over points.
 */
std::vector<SpectrumPoint> spectrum_sweep(double epsilon, const std::vector<double>& k_grid);

}  // namespace grad3

#endif
