#include "grad3/manifolds.hpp"

#include <cmath>

#include "grad3/errors.hpp"

namespace grad3 {

namespace {

// The relaxation defect delta = lambda + 1/eps of the diffusion root loses
// digits to cancellation when lambda is near -1/eps (small eps*k). For a
// root of the characteristic cubic, delta satisfies
//   delta + 3 k^2 eps^2 delta - 2 eps delta^2 + eps^2 delta^3 = (4/3) k^2 eps,
// and Newton steps on that equation restore full relative accuracy.
Complex refine_relaxation_defect(const SystemParams& p, Complex delta) {
    const double eps = p.epsilon;
    const double k2 = p.k * p.k;
    const double c = 4.0 / 3.0 * k2 * eps;
    auto f = [&](Complex d) {
        return d + 3.0 * k2 * eps * eps * d - 2.0 * eps * d * d +
               eps * eps * d * d * d - c;
    };
    auto fprime = [&](Complex d) {
        return 1.0 + 3.0 * k2 * eps * eps - 4.0 * eps * d + 3.0 * eps * eps * d * d;
    };
    double best = std::abs(f(delta));
    for (int it = 0; it < 2 && best > 0.0; ++it) {
        const Complex dp = fprime(delta);
        if (dp == Complex(0.0, 0.0)) break;
        const Complex cand = delta - f(delta) / dp;
        const double res = std::abs(f(cand));
        if (res >= best) break;
        delta = cand;
        best = res;
    }
    return delta;
}

}  // namespace

ModeConstants mode_constants(const SystemParams& params, Complex lambda) {
    if (params.k == 0.0)
        throw Error("mode_constants: undefined at k = 0");
    ModeConstants mc;
    mc.a = lambda / params.k;
    Complex defect = (1.0 + params.epsilon * lambda) / params.epsilon;
    if (std::abs(1.0 + params.epsilon * lambda) < 0.125)
        defect = refine_relaxation_defect(params, defect);
    mc.b = 3.0 * defect / (4.0 * params.k);
    return mc;
}

Vector3c eigenvector(const SystemParams& params, Complex lambda) {
    const ModeConstants mc = mode_constants(params, lambda);
    return Vector3c(-1.0 - mc.a * mc.b, Complex(0.0, 1.0) * mc.b, Complex(1.0, 0.0));
}

EigenBasis build_eigenbasis(const SystemParams& params, const SpectralDecomposition& spec) {
    if (params.k == 0.0)
        throw Error("build_eigenbasis: eigenvectors are undefined at k = 0");

    EigenBasis basis{Matrix3c(), Matrix3c(), 0.0, {}, params};
    basis.lambda = spec.all();
    for (int j = 0; j < 3; ++j)
        basis.Q.col(j) = eigenvector(params, basis.lambda[j]);

    const double max_entry = basis.Q.cwiseAbs().maxCoeff();
    const double det = std::abs(basis.Q.determinant());
    if (det < 1e-12 * max_entry * max_entry * max_entry)
        throw SingularBasis("eigenvector matrix is numerically singular");

    basis.Q_inv = basis.Q.inverse();
    basis.condition_estimate = basis.Q.norm() * basis.Q_inv.norm();
    return basis;
}

ClosureCoefficients closure_coefficients(const SystemParams& params,
                                         const SpectralDecomposition& spec) {
    const Complex l1 = spec.lambda_ac;
    const Complex l2 = spec.lambda_ac_conj;
    const double eps = params.epsilon;
    const double k2 = params.k * params.k;

    const Complex pair_sum = l1 + l2;
    const Complex pair_prod = l1 * l2;
    const Complex den = 3.0 + 3.0 * eps * pair_sum + eps * eps * (3.0 * pair_prod - 4.0 * k2);
    if (std::abs(den) < 1e-12)
        throw DegenerateDenominator("closure denominator below tolerance");

    const Complex a = -4.0 * eps * (1.0 + eps * pair_sum) / den;
    const Complex b = -4.0 * eps * eps / den;
    // Realness is a theorem (conjugate pair); violation means the upstream
    // classification is wrong.
    if (std::abs(a.imag()) > 1e-10 || std::abs(b.imag()) > 1e-10)
        throw ClassificationFailure("closure coefficients have non-real parts");
    return ClosureCoefficients{a.real(), b.real()};
}

Complex slow_constitutive(const SystemParams& params, const ClosureCoefficients& coeffs,
                          Complex p_hat, Complex u_hat) {
    const Complex ik(0.0, params.k);
    return ik * coeffs.A * u_hat - params.k * params.k * coeffs.B * p_hat;
}

Complex fast_constitutive(const SystemParams& params, const ModeConstants& constants_diff,
                          FastInput which, Complex value) {
    (void)params;
    if (which == FastInput::from_u) {
        if (std::abs(constants_diff.b) < 1e-12)
            throw DegenerateDenominator("fast constitutive: |b3| below tolerance");
        return value / (Complex(0.0, 1.0) * constants_diff.b);
    }
    const Complex den = 1.0 + constants_diff.a * constants_diff.b;
    if (std::abs(den) < 1e-12)
        throw DegenerateDenominator("fast constitutive: |1 + a3 b3| below tolerance");
    return -value / den;
}

ManifoldBasis make_manifold(ManifoldKind kind, const EigenBasis& basis) {
    ManifoldBasis m{kind, {}, Matrix3c::Zero(), basis.params};
    Matrix3c selector = Matrix3c::Zero();
    if (kind == ManifoldKind::slow) {
        selector(0, 0) = 1.0;
        selector(1, 1) = 1.0;
        m.basis_vectors = {basis.Q.col(0), basis.Q.col(1)};
    } else {
        selector(2, 2) = 1.0;
        m.basis_vectors = {basis.Q.col(2)};
    }
    m.projector = basis.Q * selector * basis.Q_inv;
    return m;
}

ModeState project(const ManifoldBasis& basis, const ModeState& state) {
    return ModeState::from_vec(basis.projector * state.vec(), basis.params);
}

ModeState slow_state(const EigenBasis& basis, Complex c1, Complex c2) {
    return ModeState::from_vec(c1 * basis.Q.col(0) + c2 * basis.Q.col(1), basis.params);
}

ModeState fast_state(const EigenBasis& basis, Complex c) {
    return ModeState::from_vec(c * basis.Q.col(2), basis.params);
}

ModeState random_slow_state(const EigenBasis& basis, Rng& rng) {
    const Complex c1 = rng.complex_normal();
    const Complex c2 = rng.complex_normal();
    ModeState s = slow_state(basis, c1, c2);
    const double n = s.norm();
    if (n == 0.0) return random_slow_state(basis, rng);
    s.p_hat /= n;
    s.u_hat /= n;
    s.sigma_hat /= n;
    return s;
}

}  // namespace grad3
