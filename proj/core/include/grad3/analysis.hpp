#ifndef GRAD3_ANALYSIS_HPP
#define GRAD3_ANALYSIS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "grad3/field.hpp"
#include "grad3/fit.hpp"
#include "grad3/params.hpp"

namespace grad3 {

struct SweepRow {
    double parameter = 0.0;
    std::map<std::string, double> observables;
    std::string error;  // empty on success
};

/**
 * Table of observables against one swept parameter with log-log slope
 * estimates. Rows keep the input order (sweeps take sorted grids); fits use
 * at least four points and are marked unreliable below r2 = 0.99.
 */
struct SweepResult {
    std::string parameter_name;
    std::vector<SweepRow> rows;
    std::map<std::string, FitResult> fitted_slopes;
};

/**
 * Least-squares slope of log(norm) against t. Requires >= 4 samples with
 * strictly increasing times; throws NonPositiveNorm on a non-positive norm.
 */
double decay_rate_fit(const std::vector<std::pair<double, double>>& trajectory);

/**
 * For each eps: a unit state on the fast manifold is propagated with the
 * fast reduced model and its decay rate r(eps) fitted. Rows report r,
 * eps * r (which tends to -1) and Re(lambda_ac) for contrast; fitted_slopes
 * carries the log-log slope of |r| against eps (expected -1). Trajectories
 * are sampled over [0, min(t_end, 30 eps)] so norms stay representable.
 * Requires k != 0 and >= 4 epsilons sorted descending.
 */
SweepResult divergence_sweep(double k, const std::vector<double>& epsilons, double t_end);

/**
 * Chapman-Enskog residuals on slow-manifold data: the distance of the
 * exact stress from its second-order expansion (slope 3), and the sup over
 * t in [0,1] of the distance of the exact slow trajectory from the Euler
 * (slope 1) and Navier-Stokes (slope 2) trajectories. A single seeded
 * random unit (p, u) pair is shared by all rows; it lifts to the slow
 * manifold through the closure at each eps.
 */
SweepResult ce_residual_sweep(double k, const std::vector<double>& epsilons,
                              std::uint64_t seed);

/**
 * Distances (lambda_diff + 5/(9 eps), Re(lambda_ac) + 2/(9 eps)) to the two
 * large-k accumulation axes. Meaningful in the asymptotic regime
 * k >~ 100/eps.
 */
std::pair<double, double> accumulation_check(double epsilon, double k_large);

/**
 * Numerical rendering of the obstruction to rewriting the fast dynamics in
 * bounded (p_hat, u_hat) form: alpha_cancel = lambda_diff kills the u-term,
 * alpha_bound = 5k/(3 |lambda_diff|) is the largest |alpha| keeping the
 * p-coefficient (3i/5k) alpha lambda_diff bounded by one, and their gap
 * ratio alpha_bound / |alpha_cancel| = 5k/(3 lambda_diff^2) vanishes like
 * (5/3) k eps^2. fitted_slopes carries the gap-ratio slope (expected 2).
 */
SweepResult fast_expansion_obstruction(double k, const std::vector<double>& epsilons);

/**
 * Viscosity-capillarity balance on a slow-manifold field: per sample, the
 * kinetic energy rate (1/2) d/dt sum w (3/5 |p|^2 + |u|^2), the capillarity
 * rate d/dt sum w c_cap k^2 B |p|^2 and the dissipation sum w k^2 A |u|^2,
 * with uniform Parseval weight w = L/N^2. residual = energy_rate +
 * capillarity_rate - dissipation vanishes identically on slow solutions.
 */
struct BalanceReport {
    std::vector<double> t_samples;
    std::vector<double> lhs_energy_rate;
    std::vector<double> lhs_capillarity_rate;
    std::vector<double> rhs_dissipation;
    std::vector<double> residual;
    double max_relative_residual = 0.0;
};

/**
 * Capillarity weight of the balance. The exact per-mode identity from the
 * slow generator is (1/2) d/dt [(3/5)(1 - k^2 B)|p|^2 + |u|^2] = k^2 A |u|^2,
 * i.e. the capillarity density is -(3/10) k^2 B |p|^2.
 */
inline constexpr double capillarity_weight = -3.0 / 10.0;

/**
 * Time derivatives are analytic (slow generator applied to the state);
 * throws NotOnSlowManifold when any mode of field0 has a fast component
 * above 1e-8 times its norm. t_samples must be increasing.
 */
BalanceReport balance_audit(const FieldState& field0, double epsilon,
                            const std::vector<double>& t_samples);

/** Quadratic functionals of one spectral state, for cross-checks. */
struct BalanceSample {
    double energy = 0.0;            // (1/2) sum w (3/5 |p|^2 + |u|^2)
    double capillarity = 0.0;       // sum w c_cap k^2 B |p|^2
    double energy_rate = 0.0;
    double capillarity_rate = 0.0;
    double dissipation = 0.0;       // sum w k^2 A |u|^2
};

BalanceSample balance_sample(const FieldSpectrum& spectrum, double epsilon);

}  // namespace grad3

#endif
