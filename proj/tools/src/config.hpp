#ifndef GRAD3_TOOLS_CONFIG_HPP
#define GRAD3_TOOLS_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace grad3::cli {

/** Bad flags or flag values; maps to exit code 1. */
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Config-file syntax or vocabulary errors, reported with a line number. */
struct ConfigParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Fully resolved run description: every field has a value from a flag, the
 * config file, the environment or a documented default by the time
 * parse_config returns. Identical configs (and seeds) give byte-identical
 * primary output files.
 */
struct RunConfig {
    std::string subcommand;

    std::vector<double> epsilons;  // one entry except for the sweep subcommands

    // Wave numbers: a single k or a min/max/count grid.
    bool k_is_grid = false;
    double k_single = 1.0;
    double k_min = 0.01;
    double k_max = 1000.0;
    int k_count = 200;
    bool log_spacing = true;

    double t_end = 1.0;
    int sample_count = 11;
    double rk4_dt = 0.0;  // > 0 selects the RK4 oracle integrator (simulate, model=full)

    int grid_n = 256;
    double domain_length = 6.283185307179586476925286766559;  // 2 pi

    std::string model = "full";   // full|slow_exact|fast|euler|navier_stokes
    std::string init = "cosine";  // cosine|random|slow

    std::string out;
    std::string format = "csv";  // csv|json
    std::uint64_t seed = 0;

    std::vector<double> k_grid() const;
    double epsilon() const { return epsilons.at(0); }
};

/**
 * Parses argv into a RunConfig with precedence
 * flags > config file (--config) > environment > defaults.
 * GRAD3_OUT_DIR supplies the directory of the default output path.
 * Throws UsageError / ConfigParseError; --help writes to stdout and returns
 * no config (signalled by the bool).
 */
struct ParseOutcome {
    bool help_shown = false;
    RunConfig config;
};

ParseOutcome parse_config(const std::vector<std::string>& args);

}  // namespace grad3::cli

#endif
