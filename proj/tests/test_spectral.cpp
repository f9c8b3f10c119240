#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "grad3/errors.hpp"
#include "grad3/fit.hpp"
#include "grad3/spectral.hpp"

using namespace grad3;

namespace {

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return v;
}

// Relative Vieta defects of a classified decomposition.
struct VietaDefect {
    double sum, pair, prod;
};

VietaDefect vieta_defect(const SpectralDecomposition& d, const SystemParams& p) {
    const double k2 = p.k * p.k;
    const double sum = 2.0 * d.lambda_ac.real() + d.lambda_diff;
    const double pair = std::norm(d.lambda_ac) + 2.0 * d.lambda_ac.real() * d.lambda_diff;
    const double prod = std::norm(d.lambda_ac) * d.lambda_diff;
    return {std::abs(sum + 1.0 / p.epsilon) * p.epsilon,
            std::abs(pair - 3.0 * k2) / (3.0 * k2),
            std::abs(prod + 5.0 / 3.0 * k2 / p.epsilon) / (5.0 / 3.0 * k2 / p.epsilon)};
}

}  // namespace

TEST_CASE("SystemParams validation") {
    CHECK_THROWS_AS(SystemParams(0.0, 1.0), Error);
    CHECK_THROWS_AS(SystemParams(-1.0, 1.0), Error);
    CHECK_THROWS_AS(SystemParams(1.0, std::nan("")), Error);
    CHECK_NOTHROW(SystemParams(1e-9, -3.0));
}

TEST_CASE("grad operator entries and trace") {
    const SystemParams p(0.25, 2.0);
    const Matrix3c L = grad_operator(p);
    CHECK(L(0, 1) == Complex(0.0, -10.0 / 3.0));
    CHECK(L(1, 0) == Complex(0.0, -2.0));
    CHECK(L(1, 2) == Complex(0.0, -2.0));
    CHECK(L(2, 1) == Complex(0.0, -8.0 / 3.0));
    CHECK(L(2, 2) == Complex(-4.0, 0.0));
    CHECK(L(0, 0) == Complex(0.0, 0.0));
    CHECK(L(0, 2) == Complex(0.0, 0.0));
    CHECK(L(2, 0) == Complex(0.0, 0.0));
    CHECK(L.trace() == Complex(-4.0, 0.0));
}

TEST_CASE("characteristic polynomial point values") {
    // constant term -(5/3) k^2 / eps at lambda = 0
    CHECK(char_poly_eval(SystemParams(0.1, 1.0), 0.0).real() ==
          doctest::Approx(-50.0 / 3.0).epsilon(1e-15));
    CHECK(char_poly_eval(SystemParams(0.1, 1.0), 0.0).imag() == 0.0);
    // lambda = 0 is a root at k = 0, for any eps
    CHECK(char_poly_eval(SystemParams(0.7, 0.0), 0.0) == Complex(0.0, 0.0));
    CHECK(char_poly_eval(SystemParams(3.0, 0.0), 0.0) == Complex(0.0, 0.0));
}

TEST_CASE("oracle roots are characteristic-polynomial roots") {
    const SystemParams p(0.1, 1.0);
    const SpectralDecomposition d = eigenvalues_numeric(p);
    for (const Complex& l : d.all())
        CHECK(std::abs(char_poly_eval(p, l)) < 1e-10);
}

TEST_CASE("cardano at (0.1, 1): one negative real root plus a conjugate pair") {
    const SystemParams p(0.1, 1.0);
    const SpectralDecomposition d = eigenvalues_cardano(p);
    CHECK(d.method == SpectralMethod::explicit_cardano);
    CHECK(d.lambda_diff < 0.0);
    CHECK(d.lambda_ac.imag() > 0.0);
    CHECK(d.lambda_ac_conj == std::conj(d.lambda_ac));
    for (const Complex& l : d.all())
        CHECK(std::abs(char_poly_eval(p, l)) < 1e-10);

    const SpectralDecomposition n = eigenvalues_numeric(p);
    CHECK(std::abs(d.lambda_ac - n.lambda_ac) < 1e-9);
    CHECK(std::abs(d.lambda_diff - n.lambda_diff) < 1e-9);
}

TEST_CASE("large-k accumulation values at eps = 0.1") {
    const SpectralDecomposition d = eigenvalues_cardano(SystemParams(0.1, 1e4));
    CHECK(std::abs(d.lambda_diff - (-50.0 / 9.0)) < 1e-3);
    CHECK(std::abs(d.lambda_ac.real() - (-20.0 / 9.0)) < 1e-3);
}

TEST_CASE("diffusion root behaves like -1/eps at small eps") {
    const SpectralDecomposition d = eigenvalues_cardano(SystemParams(0.001, 1.0));
    CHECK(std::abs(0.001 * d.lambda_diff + 1.0) < 0.01);
}

TEST_CASE("degenerate spectrum at k = 0") {
    SUBCASE("eps = 0.1") {
        const SpectralDecomposition d = eigenvalues_degenerate(SystemParams(0.1, 0.0));
        CHECK(d.method == SpectralMethod::degenerate_k0);
        CHECK(d.lambda_ac == Complex(0.0, 0.0));
        CHECK(d.lambda_ac_conj == Complex(0.0, 0.0));
        CHECK(d.lambda_diff == -10.0);
        CHECK(d.max_residual() == 0.0);
    }
    SUBCASE("eps = 2") {
        CHECK(eigenvalues_degenerate(SystemParams(2.0, 0.0)).lambda_diff == -0.5);
    }
    SUBCASE("numeric k = 0 routes to the same output") {
        const SpectralDecomposition d = eigenvalues_numeric(SystemParams(0.1, 0.0));
        CHECK(d.method == SpectralMethod::degenerate_k0);
        CHECK(d.lambda_diff == -10.0);
    }
    SUBCASE("continuity near the degeneracy") {
        const SpectralDecomposition d = eigenvalues_numeric(SystemParams(0.1, 1e-12));
        CHECK(std::abs(d.lambda_ac) < 1e-5);
        CHECK(std::abs(d.lambda_diff + 10.0) < 1e-5);
    }
    SUBCASE("cardano refuses k = 0") {
        CHECK_THROWS_AS(eigenvalues_cardano(SystemParams(0.1, 0.0)), Error);
    }
}

TEST_CASE("vieta identities at (1, 0.5)") {
    const SystemParams p(1.0, 0.5);
    const VietaDefect v = vieta_defect(eigenvalues_numeric(p), p);
    CHECK(v.sum < 1e-10);
    CHECK(v.pair < 1e-10);
    CHECK(v.prod < 1e-10);
}

TEST_CASE("grid: residuals, vieta, route agreement, decay, k -> -k") {
    const std::vector<double> eps_grid = {0.01, 0.1, 1.0};
    const std::vector<double> k_grid = logspace(1e-2, 1e4, 60);
    for (double eps : eps_grid) {
        for (double k : k_grid) {
            CAPTURE(eps);
            CAPTURE(k);
            const SystemParams p(eps, k);
            const SpectralDecomposition c = eigenvalues_cardano(p);
            const SpectralDecomposition n = eigenvalues_numeric(p);

            const double scale = std::max(1.0, std::pow(c.spectral_radius(), 3));
            CHECK(c.max_residual() <= 1e-10 * scale);
            CHECK(n.max_residual() <= 1e-10 * scale);

            CHECK(std::abs(c.lambda_ac - n.lambda_ac) < 1e-9);
            CHECK(std::abs(c.lambda_diff - n.lambda_diff) < 1e-9);

            for (const auto& d : {c, n}) {
                const VietaDefect v = vieta_defect(d, p);
                CHECK(v.sum < 1e-10);
                CHECK(v.pair < 1e-10);
                CHECK(v.prod < 1e-10);
                CHECK(d.lambda_ac.real() < 0.0);
                CHECK(d.lambda_diff < 0.0);
            }

            // spectrum depends on k only through k^2
            const SpectralDecomposition m = eigenvalues_cardano(SystemParams(eps, -k));
            CHECK(m.lambda_diff == c.lambda_diff);
            CHECK(m.lambda_ac == c.lambda_ac);
        }
    }
}

TEST_CASE("dispatch survives the cube-root degeneracy 3 eps k = 1") {
    for (double k : {10.0 / 3.0, 10.0 / 3.0 + 1e-9, 10.0 / 3.0 - 1e-7}) {
        const SystemParams p(0.1, k);
        const SpectralDecomposition d = eigenvalues(p);
        const SpectralDecomposition n = eigenvalues_numeric(p);
        CHECK(std::abs(d.lambda_diff - n.lambda_diff) < 1e-9);
        CHECK(std::abs(d.lambda_ac - n.lambda_ac) < 1e-9);
    }
}

TEST_CASE("spectrum sweep") {
    SUBCASE("diffusion branch approaches its accumulation axis") {
        const auto points = spectrum_sweep(0.1, logspace(0.01, 1000.0, 200));
        REQUIRE(points.size() == 200);
        double prev_dist = 1e30;
        for (const auto& pt : points) {
            REQUIRE(pt.error.empty());
            REQUIRE(pt.decomposition.has_value());
            if (pt.k >= 100.0) {
                const double dist = std::abs(pt.decomposition->lambda_diff + 50.0 / 9.0);
                CHECK(dist <= prev_dist * (1.0 + 1e-12));
                prev_dist = dist;
            }
        }
        CHECK(std::abs(points.back().decomposition->lambda_diff + 50.0 / 9.0) < 1e-3);
    }
    SUBCASE("ordered as input, k and -k identical") {
        const auto points = spectrum_sweep(0.1, {2.0, -2.0});
        REQUIRE(points.size() == 2);
        CHECK(points[0].k == 2.0);
        CHECK(points[1].k == -2.0);
        CHECK(points[0].decomposition->lambda_ac == points[1].decomposition->lambda_ac);
    }
    SUBCASE("fast axis scales with 1/eps at fixed large k") {
        const double k = 1e5;
        const double l3_a = eigenvalues(SystemParams(0.1, k)).lambda_diff;
        const double l3_b = eigenvalues(SystemParams(0.01, k)).lambda_diff;
        CHECK(l3_b / l3_a == doctest::Approx(10.0).epsilon(1e-3));
    }
    SUBCASE("k = 0 entries use the degenerate path") {
        const auto points = spectrum_sweep(0.5, {0.0});
        CHECK(points[0].decomposition->method == SpectralMethod::degenerate_k0);
    }
    SUBCASE("empty grid is rejected") {
        CHECK_THROWS_AS(spectrum_sweep(0.1, {}), Error);
    }
}

TEST_CASE("|eps lambda_diff + 1| shrinks quadratically in eps") {
    // lambda_diff = -1/eps + (4/3) k^2 eps + ... so the defect scales as eps^2.
    const std::vector<double> eps = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    std::vector<double> defect;
    for (double e : eps)
        defect.push_back(std::abs(e * eigenvalues_cardano(SystemParams(e, 1.0)).lambda_diff + 1.0));
    const FitResult fit = loglog_fit(eps, defect);
    CHECK(fit.slope >= 1.8);
    CHECK(fit.r2 > 0.99);
}
