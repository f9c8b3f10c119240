#include "grad3/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "grad3/errors.hpp"
#include "grad3/parallel.hpp"

namespace grad3 {

namespace {

// Monic form m(l) = l^3 + c2 l^2 + c1 l + c0 shared by the polish and
// deflation steps. The public char_poly_eval is -m(l).
Complex monic_eval(const std::array<double, 3>& c, Complex l) {
    return ((l + c[2]) * l + c[1]) * l + c[0];
}

Complex monic_deriv(const std::array<double, 3>& c, Complex l) {
    return (3.0 * l + 2.0 * c[2]) * l + c[1];
}

// Newton polish, kept only while the residual improves. Deflated roots
// inherit the absolute error of the real root, which is orders of magnitude
// above their own ulp at small eps*k; one step restores full precision.
Complex polish_root(const std::array<double, 3>& c, Complex l) {
    double best = std::abs(monic_eval(c, l));
    for (int it = 0; it < 2 && best > 0.0; ++it) {
        const Complex dp = monic_deriv(c, l);
        if (dp == Complex(0.0, 0.0)) break;
        const Complex candidate = l - monic_eval(c, l) / dp;
        const double res = std::abs(monic_eval(c, candidate));
        if (res >= best) break;
        l = candidate;
        best = res;
    }
    return l;
}

// Splits three polished roots into one real root plus a conjugate pair.
// The assignment is chosen by score so that a genuinely real diffusion root
// flanked by a nearly-real acoustic pair (tiny k) still classifies.
SpectralDecomposition classify_roots(std::array<Complex, 3> roots,
                                     const SystemParams& params,
                                     SpectralMethod method) {
    const auto c = monic_coefficients(params);
    for (auto& r : roots) r = polish_root(c, r);

    int best = -1;
    double best_score = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Complex& r1 = roots[(i + 1) % 3];
        const Complex& r2 = roots[(i + 2) % 3];
        const double score = std::abs(roots[i].imag()) + std::abs(r1 - std::conj(r2));
        if (best < 0 || score < best_score) {
            best = i;
            best_score = score;
        }
    }
    const Complex real_cand = roots[best];
    const Complex pair_a = roots[(best + 1) % 3];
    const Complex pair_b = roots[(best + 2) % 3];

    if (std::abs(real_cand.imag()) > real_root_tol * (1.0 + std::abs(real_cand)))
        throw ClassificationFailure("no eigenvalue is real within tolerance");
    const double pair_scale = 1.0 + std::max(std::abs(pair_a), std::abs(pair_b));
    if (std::abs(pair_a - std::conj(pair_b)) > real_root_tol * pair_scale)
        throw ClassificationFailure("remaining eigenvalues are not a conjugate pair");

    SpectralDecomposition d;
    d.method = method;
    d.lambda_diff = real_cand.real();
    d.lambda_ac = (pair_a.imag() >= 0.0) ? pair_a : pair_b;
    d.lambda_ac_conj = std::conj(d.lambda_ac);
    d.residuals = {std::abs(char_poly_eval(params, d.lambda_ac)),
                   std::abs(char_poly_eval(params, d.lambda_ac_conj)),
                   std::abs(char_poly_eval(params, Complex(d.lambda_diff, 0.0)))};
    return d;
}

}  // namespace

const char* to_string(SpectralMethod m) {
    switch (m) {
        case SpectralMethod::explicit_cardano: return "explicit_cardano";
        case SpectralMethod::numeric_oracle: return "numeric_oracle";
        case SpectralMethod::degenerate_k0: return "degenerate_k0";
    }
    return "unknown";
}

Complex char_poly_eval(const SystemParams& params, Complex lambda) {
    const double k2 = params.k * params.k;
    const double inv_eps = 1.0 / params.epsilon;
    return -((lambda + inv_eps) * lambda + 3.0 * k2) * lambda - 5.0 / 3.0 * k2 * inv_eps;
}

SpectralDecomposition eigenvalues_cardano(const SystemParams& params) {
    if (params.k == 0.0)
        throw Error("eigenvalues_cardano: k = 0 must use eigenvalues_degenerate");

    const double eps = params.epsilon;
    const double k2 = params.k * params.k;
    const double s = 9.0 * k2 * eps * eps;

    // Inner radicand 5k^2 - 18 k^4 eps^2 + 81 k^6 eps^4 is positive for every
    // real k != 0 (as a quadratic in k^2 eps^2 it has negative discriminant),
    // so the spectrum is always one real root plus a conjugate pair.
    const double radicand = 5.0 * k2 - 18.0 * k2 * k2 * eps * eps +
                            81.0 * k2 * k2 * k2 * eps * eps * eps * eps;
    const double root_inner = std::sqrt(std::max(radicand, 0.0));

    const Complex u3(-1.0 - s + 3.0 * eps * root_inner, 0.0);
    const Complex v3(-1.0 - s - 3.0 * eps * root_inner, 0.0);
    const Complex u = std::pow(u3, 1.0 / 3.0);
    const Complex v0 = std::pow(v3, 1.0 / 3.0);

    // Pair the principal cube root of u3 with the rotation of the second
    // cube root whose product is the real quantity 1 - 9 k^2 eps^2; the
    // simultaneous rotations (w^j u, w^-j v) then enumerate the three roots.
    const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const Complex target(1.0 - s, 0.0);
    Complex v = v0;
    double best_mismatch = std::abs(u * v0 - target);
    for (int m = 1; m < 3; ++m) {
        const Complex cand = v0 * std::pow(omega, m);
        const double mismatch = std::abs(u * cand - target);
        if (mismatch < best_mismatch) {
            v = cand;
            best_mismatch = mismatch;
        }
    }

    Complex lambda3(0.0, 0.0);
    double min_imag = -1.0;
    for (int j = 0; j < 3; ++j) {
        const Complex rot = std::pow(omega, j);
        const Complex cand = (rot * u + v / rot - 1.0) / (3.0 * eps);
        if (min_imag < 0.0 || std::abs(cand.imag()) < min_imag) {
            lambda3 = cand;
            min_imag = std::abs(cand.imag());
        }
    }
    if (min_imag > 1e-8 * (1.0 + std::abs(lambda3)))
        throw BranchFailure("no cube-root pairing yields a real diffusion eigenvalue");

    const auto c = monic_coefficients(params);
    const Complex polished = polish_root(c, Complex(lambda3.real(), 0.0));
    const double r = polished.real();

    // Synthetic division by (lambda - r) leaves lambda^2 + beta lambda + gamma.
    const double beta = c[2] + r;
    const double gamma = c[1] + r * beta;
    const double disc = beta * beta - 4.0 * gamma;
    if (disc >= 0.0)
        throw ClassificationFailure("deflated quadratic has real roots at k != 0");
    const Complex ac(-beta / 2.0, std::sqrt(-disc) / 2.0);

    return classify_roots({ac, std::conj(ac), Complex(r, 0.0)}, params,
                          SpectralMethod::explicit_cardano);
}

SpectralDecomposition eigenvalues_numeric(const SystemParams& params) {
    if (params.k == 0.0) return eigenvalues_degenerate(params);

    const auto c = monic_coefficients(params);
    Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
    companion(1, 0) = 1.0;
    companion(2, 1) = 1.0;
    companion(0, 2) = -c[0];
    companion(1, 2) = -c[1];
    companion(2, 2) = -c[2];

    const Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
    if (solver.info() != Eigen::Success)
        throw ClassificationFailure("companion eigenvalue iteration failed");
    const Eigen::Vector3cd roots = solver.eigenvalues();
    return classify_roots({roots(0), roots(1), roots(2)}, params,
                          SpectralMethod::numeric_oracle);
}

SpectralDecomposition eigenvalues_degenerate(const SystemParams& params) {
    if (params.k != 0.0)
        throw Error("eigenvalues_degenerate: requires k = 0");
    SpectralDecomposition d;
    d.method = SpectralMethod::degenerate_k0;
    d.lambda_ac = Complex(0.0, 0.0);       // double zero reported as the pair
    d.lambda_ac_conj = Complex(0.0, 0.0);
    d.lambda_diff = -1.0 / params.epsilon;
    d.residuals = {0.0, 0.0, 0.0};         // both roots are exact
    return d;
}

SpectralDecomposition eigenvalues(const SystemParams& params) {
    if (params.k == 0.0) return eigenvalues_degenerate(params);
    try {
        return eigenvalues_cardano(params);
    } catch (const BranchFailure&) {
        return eigenvalues_numeric(params);
    }
}

std::vector<SpectrumPoint> spectrum_sweep(double epsilon, const std::vector<double>& k_grid) {
    if (k_grid.empty()) throw Error("spectrum_sweep: empty wave-number grid");
    std::vector<SpectrumPoint> out(k_grid.size());
    parallel_for(k_grid.size(), [&](std::size_t i) {
        out[i].k = k_grid[i];
        try {
            out[i].decomposition = eigenvalues(SystemParams(epsilon, k_grid[i]));
        } catch (const Error& e) {
            out[i].error = e.what();
        }
    });
    return out;
}

}  // namespace grad3
