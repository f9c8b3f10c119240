#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>

#include <nlohmann/json.hpp>

#include "grad3/analysis.hpp"
#include "grad3/dynamics.hpp"
#include "grad3/errors.hpp"
#include "grad3/field.hpp"
#include "grad3/manifolds.hpp"
#include "grad3/rng.hpp"
#include "grad3/spectral.hpp"
#include "grad3/table.hpp"
#include "grad3/version.hpp"

namespace grad3::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> time_samples(const RunConfig& cfg) {
    if (cfg.sample_count == 1) return {cfg.t_end};
    std::vector<double> t(cfg.sample_count);
    for (int i = 0; i < cfg.sample_count; ++i)
        t[i] = cfg.t_end * i / (cfg.sample_count - 1);
    return t;
}

Table run_spectrum(const RunConfig& cfg, int& warnings) {
    Table table;
    table.columns = {"k", "epsilon", "re_lambda_ac", "im_lambda_ac",
                     "lambda_diff", "residual_max", "method"};
    const double eps = cfg.epsilon();
    for (const SpectrumPoint& pt : spectrum_sweep(eps, cfg.k_grid())) {
        if (pt.decomposition) {
            const SpectralDecomposition& d = *pt.decomposition;
            table.add_row({pt.k, eps, d.lambda_ac.real(), d.lambda_ac.imag(),
                           d.lambda_diff, d.max_residual(),
                           std::string(to_string(d.method))});
        } else {
            ++warnings;
            std::cerr << "warning: k = " << pt.k << ": " << pt.error << "\n";
            table.add_row({pt.k, eps, kNaN, kNaN, kNaN, kNaN, std::string("failed")});
        }
    }
    return table;
}

Table run_closure(const RunConfig& cfg, int& warnings) {
    Table table;
    table.columns = {"k", "epsilon", "eps_k", "A", "B"};
    const double eps = cfg.epsilon();
    for (double k : cfg.k_grid()) {
        try {
            const SystemParams params(eps, k);
            const ClosureCoefficients cc =
                closure_coefficients(params, eigenvalues(params));
            table.add_row({k, eps, eps * k, cc.A, cc.B});
        } catch (const Error& e) {
            ++warnings;
            std::cerr << "warning: k = " << k << ": " << e.what() << "\n";
            table.add_row({k, eps, eps * k, kNaN, kNaN});
        }
    }
    return table;
}

FieldState initial_field(const RunConfig& cfg) {
    Rng rng(cfg.seed);
    if (cfg.init == "cosine") return cosine_field(cfg.grid_n, cfg.domain_length);
    if (cfg.init == "random") return random_field(cfg.grid_n, cfg.domain_length, rng);
    return random_slow_field(cfg.grid_n, cfg.domain_length, cfg.epsilon(), rng);
}

EvolveModel model_of(const std::string& name) {
    if (name == "full") return EvolveModel::full;
    if (name == "slow_exact") return EvolveModel::slow_exact;
    if (name == "fast") return EvolveModel::fast;
    if (name == "euler") return EvolveModel::euler;
    return EvolveModel::navier_stokes;
}

// RK4 oracle run: every mode integrated explicitly instead of the exact
// per-mode exponential.
FieldState evolve_field_rk4(const FieldState& field, double eps, double t, double dt) {
    FieldSpectrum s = forward_transform(field);
    for (int m = 0; m < s.grid_size; ++m) {
        const double k = wave_number(m, s.grid_size, s.domain_length);
        ModeState mode{s.p[m], s.u[m], s.sigma[m], k, eps};
        mode = propagate_rk4(mode, t, dt);
        s.p[m] = mode.p_hat;
        s.u[m] = mode.u_hat;
        s.sigma[m] = mode.sigma_hat;
    }
    return inverse_transform(s);
}

Table run_simulate(const RunConfig& cfg) {
    Table table;
    table.columns = {"t", "x", "p", "u", "sigma"};
    const double eps = cfg.epsilon();
    const FieldState field0 = initial_field(cfg);
    const EvolveModel model = model_of(cfg.model);
    const bool rk4 = cfg.rk4_dt > 0.0 && model == EvolveModel::full;

    for (double t : time_samples(cfg)) {
        const FieldState ft = rk4 ? evolve_field_rk4(field0, eps, t, cfg.rk4_dt)
                                  : evolve_field(field0, eps, t, model);
        for (int m = 0; m < ft.grid_size; ++m) {
            const double x = ft.domain_length * m / ft.grid_size;
            table.add_row({t, x, ft.p[m], ft.u[m], ft.sigma[m]});
        }
    }
    return table;
}

Table run_sweep_divergence(const RunConfig& cfg, int& warnings) {
    Table table;
    table.columns = {"epsilon", "fast_rate", "eps_times_rate", "re_lambda_ac",
                     "slope_estimate"};
    const SweepResult sweep = divergence_sweep(cfg.k_single, cfg.epsilons, cfg.t_end);
    const auto slope_it = sweep.fitted_slopes.find("fast_rate");
    const double slope =
        slope_it != sweep.fitted_slopes.end() ? slope_it->second.slope : kNaN;
    for (const SweepRow& row : sweep.rows) {
        if (!row.error.empty()) {
            ++warnings;
            std::cerr << "warning: epsilon = " << row.parameter << ": " << row.error
                      << "\n";
            table.add_row({row.parameter, kNaN, kNaN, kNaN, slope});
            continue;
        }
        table.add_row({row.parameter, row.observables.at("fast_rate"),
                       row.observables.at("eps_times_rate"),
                       row.observables.at("re_lambda_ac"), slope});
    }
    std::cout << "fitted slope of |rate| vs epsilon: " << format_double(slope) << "\n";
    return table;
}

Table run_sweep_ce(const RunConfig& cfg, int& warnings) {
    Table table;
    table.columns = {"epsilon", "k", "stress_residual", "euler_distance",
                     "ns_distance", "stress_slope", "euler_slope", "ns_slope"};
    const SweepResult sweep = ce_residual_sweep(cfg.k_single, cfg.epsilons, cfg.seed);
    auto slope = [&](const char* key) {
        const auto it = sweep.fitted_slopes.find(key);
        return it != sweep.fitted_slopes.end() ? it->second.slope : kNaN;
    };
    const double s_stress = slope("stress_residual");
    const double s_euler = slope("euler_distance");
    const double s_ns = slope("ns_distance");
    for (const SweepRow& row : sweep.rows) {
        if (!row.error.empty()) {
            ++warnings;
            std::cerr << "warning: epsilon = " << row.parameter << ": " << row.error
                      << "\n";
            table.add_row({row.parameter, cfg.k_single, kNaN, kNaN, kNaN, s_stress,
                           s_euler, s_ns});
            continue;
        }
        table.add_row({row.parameter, cfg.k_single,
                       row.observables.at("stress_residual"),
                       row.observables.at("euler_distance"),
                       row.observables.at("ns_distance"), s_stress, s_euler, s_ns});
    }
    std::cout << "fitted slopes: stress " << format_double(s_stress) << ", euler "
              << format_double(s_euler) << ", navier-stokes " << format_double(s_ns)
              << "\n";
    return table;
}

Table run_balance(const RunConfig& cfg) {
    Table table;
    table.columns = {"t", "energy_rate", "capillarity_rate", "dissipation",
                     "residual", "relative_residual"};
    Rng rng(cfg.seed);
    const FieldState field0 =
        random_slow_field(cfg.grid_n, cfg.domain_length, cfg.epsilon(), rng);
    const BalanceReport report =
        balance_audit(field0, cfg.epsilon(), time_samples(cfg));
    for (std::size_t i = 0; i < report.t_samples.size(); ++i) {
        const double scale = std::max({std::abs(report.lhs_energy_rate[i]),
                                       std::abs(report.lhs_capillarity_rate[i]),
                                       std::abs(report.rhs_dissipation[i])});
        const double rel = scale > 0.0 ? std::abs(report.residual[i]) / scale : 0.0;
        table.add_row({report.t_samples[i], report.lhs_energy_rate[i],
                       report.lhs_capillarity_rate[i], report.rhs_dissipation[i],
                       report.residual[i], rel});
    }
    std::cout << "max relative residual: " << format_double(report.max_relative_residual)
              << "\n";
    return table;
}

Table run_accumulation(const RunConfig& cfg, int& warnings) {
    Table table;
    table.columns = {"k", "epsilon", "lambda_diff", "re_lambda_ac",
                     "dist_fast_axis", "dist_slow_axis"};
    const double eps = cfg.epsilon();
    for (double k : cfg.k_grid()) {
        try {
            const SystemParams params(eps, k);
            const SpectralDecomposition spec = eigenvalues(params);
            const auto [dist_fast, dist_slow] = accumulation_check(eps, k);
            table.add_row({k, eps, spec.lambda_diff, spec.lambda_ac.real(), dist_fast,
                           dist_slow});
        } catch (const Error& e) {
            ++warnings;
            std::cerr << "warning: k = " << k << ": " << e.what() << "\n";
            table.add_row({k, eps, kNaN, kNaN, kNaN, kNaN});
        }
    }
    return table;
}

nlohmann::json config_echo(const RunConfig& cfg) {
    nlohmann::json j;
    j["subcommand"] = cfg.subcommand;
    j["epsilon"] = cfg.epsilons;
    if (cfg.k_is_grid) {
        j["k_min"] = cfg.k_min;
        j["k_max"] = cfg.k_max;
        j["k_count"] = cfg.k_count;
        j["log_k"] = cfg.log_spacing;
    } else {
        j["k"] = cfg.k_single;
    }
    j["t_end"] = cfg.t_end;
    j["samples"] = cfg.sample_count;
    j["rk4_dt"] = cfg.rk4_dt;
    j["grid_n"] = cfg.grid_n;
    j["length"] = cfg.domain_length;
    j["model"] = cfg.model;
    j["init"] = cfg.init;
    j["out"] = cfg.out;
    j["format"] = cfg.format;
    j["seed"] = cfg.seed;
    return j;
}

}  // namespace

int run(const RunConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    int warnings = 0;
    Table table;
    try {
        if (cfg.subcommand == "spectrum")
            table = run_spectrum(cfg, warnings);
        else if (cfg.subcommand == "closure")
            table = run_closure(cfg, warnings);
        else if (cfg.subcommand == "simulate")
            table = run_simulate(cfg);
        else if (cfg.subcommand == "sweep-divergence")
            table = run_sweep_divergence(cfg, warnings);
        else if (cfg.subcommand == "sweep-ce")
            table = run_sweep_ce(cfg, warnings);
        else if (cfg.subcommand == "balance")
            table = run_balance(cfg);
        else if (cfg.subcommand == "accumulation")
            table = run_accumulation(cfg, warnings);
        else
            throw UsageError("unknown subcommand " + cfg.subcommand);
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }

    atomic_write(cfg.out, cfg.format == "csv" ? to_csv(table) : to_json_rows(table));

    const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    nlohmann::json manifest;
    manifest["config"] = config_echo(cfg);
    manifest["version"] = version;
    manifest["wall_ms"] = static_cast<long long>(wall.count());
    manifest["warnings"] = warnings;
    atomic_write(cfg.out + ".manifest.json", manifest.dump(2) + "\n");

    std::cout << "wrote " << table.rows.size() << " rows to " << cfg.out << "\n";
    return 0;
}

}  // namespace grad3::cli
