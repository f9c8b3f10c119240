#include "grad3/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "grad3/dynamics.hpp"
#include "grad3/errors.hpp"
#include "grad3/manifolds.hpp"

namespace grad3 {

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void check_grid(int n, double length) {
    if (n < 2 || (n & (n - 1)) != 0)
        throw Error("field grid size must be a power of two");
    if (!(length > 0.0))
        throw Error("field domain length must be positive");
}

std::vector<Complex> dft(const std::vector<Complex>& in, int sign) {
    const int n = static_cast<int>(in.size());
    std::vector<Complex> out(in.size());
    fftw_plan plan;
    {
        const std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(
            n,
            reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
            reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        const std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

std::vector<Complex> widen(const std::vector<double>& v) {
    return std::vector<Complex>(v.begin(), v.end());
}

ReducedKind reduced_kind_of(EvolveModel m) {
    switch (m) {
        case EvolveModel::slow_exact: return ReducedKind::slow_exact;
        case EvolveModel::fast: return ReducedKind::fast;
        case EvolveModel::euler: return ReducedKind::euler;
        case EvolveModel::navier_stokes: return ReducedKind::navier_stokes;
        case EvolveModel::full: break;
    }
    throw Error("evolve_field: model has no reduced generator");
}

}  // namespace

double wave_number(int mode_index, int grid_size, double domain_length) {
    const int n = mode_index < grid_size / 2 ? mode_index : mode_index - grid_size;
    return 2.0 * std::numbers::pi * n / domain_length;
}

FieldSpectrum forward_transform(const FieldState& field) {
    check_grid(field.grid_size, field.domain_length);
    FieldSpectrum s;
    s.grid_size = field.grid_size;
    s.domain_length = field.domain_length;
    s.p = dft(widen(field.p), FFTW_FORWARD);
    s.u = dft(widen(field.u), FFTW_FORWARD);
    s.sigma = dft(widen(field.sigma), FFTW_FORWARD);
    return s;
}

FieldState inverse_transform(const FieldSpectrum& spectrum) {
    check_grid(spectrum.grid_size, spectrum.domain_length);
    const int n = spectrum.grid_size;

    const std::vector<Complex> p = dft(spectrum.p, FFTW_BACKWARD);
    const std::vector<Complex> u = dft(spectrum.u, FFTW_BACKWARD);
    const std::vector<Complex> sg = dft(spectrum.sigma, FFTW_BACKWARD);

    double norm = 0.0;
    double imag_residue = 0.0;
    for (const auto* arr : {&p, &u, &sg}) {
        for (const Complex& z : *arr) {
            norm = std::max(norm, std::abs(z.real()) / n);
            imag_residue = std::max(imag_residue, std::abs(z.imag()) / n);
        }
    }
    if (imag_residue > 1e-8 * norm)
        throw RealityViolation("inverse transform left a complex residue");

    FieldState field;
    field.grid_size = n;
    field.domain_length = spectrum.domain_length;
    field.p.resize(n);
    field.u.resize(n);
    field.sigma.resize(n);
    for (int m = 0; m < n; ++m) {
        field.p[m] = p[m].real() / n;
        field.u[m] = u[m].real() / n;
        field.sigma[m] = sg[m].real() / n;
    }
    return field;
}

const char* to_string(EvolveModel m) {
    switch (m) {
        case EvolveModel::full: return "full";
        case EvolveModel::slow_exact: return "slow_exact";
        case EvolveModel::fast: return "fast";
        case EvolveModel::euler: return "euler";
        case EvolveModel::navier_stokes: return "navier_stokes";
    }
    return "unknown";
}

FieldState evolve_field(const FieldState& field, double epsilon, double t, EvolveModel model) {
    if (t < 0.0) throw Error("evolve_field: negative time");
    FieldSpectrum s = forward_transform(field);

    for (int m = 0; m < s.grid_size; ++m) {
        const double k = wave_number(m, s.grid_size, s.domain_length);
        const SystemParams params(epsilon, k);

        if (model == EvolveModel::full) {
            const Vector3c z = full_propagator(params, t) *
                               Vector3c(s.p[m], s.u[m], s.sigma[m]);
            s.p[m] = z(0);
            s.u[m] = z(1);
            s.sigma[m] = z(2);
            continue;
        }

        const ReducedKind kind = reduced_kind_of(model);
        const ReducedModel reduced = make_reduced_model(kind, params);
        const auto [p_t, u_t] = propagate_reduced(reduced, s.p[m], s.u[m], t);
        s.p[m] = p_t;
        s.u[m] = u_t;
        if (kind == ReducedKind::fast && k == 0.0) {
            s.sigma[m] *= std::exp(reduced.lambda_diff * t);
        } else {
            s.sigma[m] = reduced_stress(reduced, p_t, u_t);
        }
    }
    return inverse_transform(s);
}

FieldState cosine_field(int grid_size, double domain_length) {
    check_grid(grid_size, domain_length);
    FieldState f;
    f.grid_size = grid_size;
    f.domain_length = domain_length;
    f.p.resize(grid_size);
    f.u.assign(grid_size, 0.0);
    f.sigma.assign(grid_size, 0.0);
    for (int m = 0; m < grid_size; ++m)
        f.p[m] = std::cos(2.0 * std::numbers::pi * m / grid_size);
    return f;
}

FieldState random_field(int grid_size, double domain_length, Rng& rng) {
    check_grid(grid_size, domain_length);
    FieldSpectrum s;
    s.grid_size = grid_size;
    s.domain_length = domain_length;
    s.p.assign(grid_size, Complex(0.0, 0.0));
    s.u.assign(grid_size, Complex(0.0, 0.0));
    s.sigma.assign(grid_size, Complex(0.0, 0.0));

    // Mean mode must be real; the Nyquist mode is its own conjugate partner
    // and is left empty.
    s.p[0] = rng.normal();
    s.u[0] = rng.normal();
    s.sigma[0] = rng.normal();
    for (int m = 1; m < grid_size / 2; ++m) {
        s.p[m] = rng.complex_normal();
        s.u[m] = rng.complex_normal();
        s.sigma[m] = rng.complex_normal();
        s.p[grid_size - m] = std::conj(s.p[m]);
        s.u[grid_size - m] = std::conj(s.u[m]);
        s.sigma[grid_size - m] = std::conj(s.sigma[m]);
    }
    return inverse_transform(s);
}

FieldState random_slow_field(int grid_size, double domain_length, double epsilon, Rng& rng) {
    check_grid(grid_size, domain_length);
    FieldSpectrum s;
    s.grid_size = grid_size;
    s.domain_length = domain_length;
    s.p.assign(grid_size, Complex(0.0, 0.0));
    s.u.assign(grid_size, Complex(0.0, 0.0));
    s.sigma.assign(grid_size, Complex(0.0, 0.0));

    // Slow subspace at k = 0 is the sigma = 0 plane.
    s.p[0] = rng.normal();
    s.u[0] = rng.normal();
    for (int m = 1; m < grid_size / 2; ++m) {
        const double k = wave_number(m, grid_size, domain_length);
        const SystemParams params(epsilon, k);
        const EigenBasis basis = build_eigenbasis(params, eigenvalues(params));
        const ModeState mode = slow_state(basis, rng.complex_normal(), rng.complex_normal());
        s.p[m] = mode.p_hat;
        s.u[m] = mode.u_hat;
        s.sigma[m] = mode.sigma_hat;
        // Conjugate coefficients populate -k: the slow subspace there is the
        // entrywise conjugate of the one at +k.
        s.p[grid_size - m] = std::conj(mode.p_hat);
        s.u[grid_size - m] = std::conj(mode.u_hat);
        s.sigma[grid_size - m] = std::conj(mode.sigma_hat);
    }
    return inverse_transform(s);
}

}  // namespace grad3
