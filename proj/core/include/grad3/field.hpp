#ifndef GRAD3_FIELD_HPP
#define GRAD3_FIELD_HPP

#include <vector>

#include "grad3/params.hpp"
#include "grad3/rng.hpp"

namespace grad3 {

/**
 * Real (p, u, sigma) samples at x_m = m L / N on a periodic domain.
 * N must be a power of two.
 */
struct FieldState {
    int grid_size = 0;
    double domain_length = 0.0;
    std::vector<double> p, u, sigma;
};

/**
 * Spectral coefficients under the unnormalized forward / 1/N inverse
 * convention, f_hat_n = sum_m f_m exp(-2 pi i n m / N). Mode m carries wave
 * number 2 pi n / L with n = m for m < N/2 and n = m - N otherwise.
 * Parseval: sum f_m^2 (L/N) = (L/N^2) sum |f_hat_n|^2.
 */
struct FieldSpectrum {
    int grid_size = 0;
    double domain_length = 0.0;
    std::vector<Complex> p, u, sigma;
};

double wave_number(int mode_index, int grid_size, double domain_length);

FieldSpectrum forward_transform(const FieldState& field);

/**
 * Inverse transform with a reality check: throws RealityViolation when the
 * imaginary residue exceeds 1e-8 times the field's max-abs norm. The residue
 * is discarded after the check.
 */
FieldState inverse_transform(const FieldSpectrum& spectrum);

enum class EvolveModel { full, slow_exact, fast, euler, navier_stokes };

const char* to_string(EvolveModel m);

/**
 * Per-mode propagation by the selected model. Reduced models evolve
 * (p_hat, u_hat) and reconstruct sigma_hat from the matching constitutive
 * law (for the fast model at the k = 0 mode, where that law is degenerate,
 * sigma_hat decays by exp(lambda_diff t) exactly as under the full
 * dynamics).
 */
FieldState evolve_field(const FieldState& field, double epsilon, double t, EvolveModel model);

/** p(x) = cos(2 pi x / L), u = sigma = 0. */
FieldState cosine_field(int grid_size, double domain_length);

/** Independent complex-normal coefficients on every non-Nyquist mode. */
FieldState random_field(int grid_size, double domain_length, Rng& rng);

/**
 * Random field whose every mode lies on the slow manifold (k = 0 mode has
 * sigma_hat = 0, Nyquist mode left empty). Conjugate symmetry is imposed so
 * the samples are real.
 */
FieldState random_slow_field(int grid_size, double domain_length, double epsilon, Rng& rng);

}  // namespace grad3

#endif
