#include "config.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace grad3::cli {

namespace {

const std::vector<std::string> kSubcommands = {
    "spectrum", "closure", "simulate", "sweep-divergence",
    "sweep-ce", "balance", "accumulation"};

// Config-file vocabulary: long flag names without the leading dashes.
const std::set<std::string> kFileKeys = {
    "epsilon", "k", "k-min", "k-max", "k-count", "log-k",
    "t-end", "samples", "rk4-dt", "grid-n", "length",
    "model", "init", "out", "format", "seed"};

struct FileEntry {
    std::string value;
    int line = 0;
};

using FileConfig = std::map<std::string, FileEntry>;

FileConfig read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParseError("cannot open config file " + path);
    FileConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigParseError(path + ":" + std::to_string(lineno) +
                                   ": expected 'key = value'");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!kFileKeys.count(key))
            throw ConfigParseError(path + ":" + std::to_string(lineno) +
                                   ": unknown key '" + key + "'");
        if (value.empty())
            throw ConfigParseError(path + ":" + std::to_string(lineno) +
                                   ": empty value for '" + key + "'");
        cfg[key] = FileEntry{value, lineno};
    }
    return cfg;
}

double parse_double(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigParseError(context + ": not a number: '" + s + "'");
    }
}

long long parse_int(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigParseError(context + ": not an integer: '" + s + "'");
    }
}

std::vector<double> parse_double_list(const std::string& s, const std::string& context) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_double(item, context));
    if (out.empty()) throw ConfigParseError(context + ": empty list");
    return out;
}

bool parse_bool(const std::string& s, const std::string& context) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ConfigParseError(context + ": not a boolean: '" + s + "'");
}

std::string file_context(const std::string& key, const FileEntry& e) {
    return "config line " + std::to_string(e.line) + " (" + key + ")";
}

const std::vector<double> kDefaultEpsSweep = {1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4};

}  // namespace

std::vector<double> RunConfig::k_grid() const {
    if (!k_is_grid) return {k_single};
    std::vector<double> grid(k_count);
    if (k_count == 1) {
        grid[0] = k_min;
        return grid;
    }
    for (int i = 0; i < k_count; ++i) {
        const double f = static_cast<double>(i) / (k_count - 1);
        grid[i] = log_spacing ? k_min * std::pow(k_max / k_min, f)
                              : k_min + f * (k_max - k_min);
    }
    return grid;
}

ParseOutcome parse_config(const std::vector<std::string>& args) {
    CLI::App app{"Spectral analysis and reduced hydrodynamics of the 1-D "
                 "three-component Grad system"};
    app.require_subcommand(1);

    // Flag holders; count() tells whether a flag was given.
    std::vector<double> f_epsilon;
    double f_k = 0, f_k_min = 0, f_k_max = 0, f_t_end = 0, f_length = 0, f_rk4_dt = 0;
    int f_k_count = 0, f_samples = 0, f_grid_n = 0;
    bool f_log_k = false, f_linear_k = false;
    std::string f_model, f_init, f_out, f_format, f_config;
    std::uint64_t f_seed = 0;

    struct OptSet {
        CLI::Option* epsilon;
        CLI::Option* k;
        CLI::Option* k_min;
        CLI::Option* k_max;
        CLI::Option* k_count;
        CLI::Option* log_k;
        CLI::Option* linear_k;
        CLI::Option* t_end;
        CLI::Option* samples;
        CLI::Option* rk4_dt;
        CLI::Option* grid_n;
        CLI::Option* length;
        CLI::Option* model;
        CLI::Option* init;
        CLI::Option* out;
        CLI::Option* format;
        CLI::Option* seed;
        CLI::Option* config;
    };
    std::map<std::string, CLI::App*> subs;
    std::map<std::string, OptSet> opts;

    for (const std::string& name : kSubcommands) {
        CLI::App* sub = app.add_subcommand(name);
        OptSet& o = opts[name];
        o.epsilon = sub->add_option("--epsilon", f_epsilon,
                                    "Knudsen number(s), comma separated for sweeps")
                        ->delimiter(',');
        o.k = sub->add_option("--k", f_k, "single wave number");
        o.k_min = sub->add_option("--k-min", f_k_min, "wave-number grid minimum");
        o.k_max = sub->add_option("--k-max", f_k_max, "wave-number grid maximum");
        o.k_count = sub->add_option("--k-count", f_k_count, "wave-number grid size");
        o.log_k = sub->add_flag("--log-k", f_log_k, "log-spaced wave-number grid");
        o.linear_k = sub->add_flag("--linear-k", f_linear_k, "linearly spaced grid");
        o.t_end = sub->add_option("--t-end", f_t_end, "final time");
        o.samples = sub->add_option("--samples", f_samples, "number of time samples");
        o.rk4_dt = sub->add_option("--rk4-dt", f_rk4_dt,
                                   "RK4 oracle step (simulate, model=full)");
        o.grid_n = sub->add_option("--grid-n", f_grid_n, "spatial grid size (power of two)");
        o.length = sub->add_option("--length", f_length, "domain length");
        o.model = sub->add_option("--model", f_model,
                                  "full|slow_exact|fast|euler|navier_stokes");
        o.init = sub->add_option("--init", f_init, "cosine|random|slow");
        o.out = sub->add_option("--out", f_out, "output path");
        o.format = sub->add_option("--format", f_format, "csv|json");
        o.seed = sub->add_option("--seed", f_seed, "PRNG seed (mt19937_64)");
        o.config = sub->add_option("--config", f_config, "key = value config file");
        subs[name] = sub;
    }

    std::vector<const char*> argv;
    argv.push_back("grad3");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return ParseOutcome{true, {}};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunConfig cfg;
    for (const std::string& name : kSubcommands)
        if (subs[name]->parsed()) cfg.subcommand = name;
    const OptSet& o = opts[cfg.subcommand];

    FileConfig file;
    if (o.config->count() > 0) file = read_config_file(f_config);
    auto has_file = [&](const char* key) { return file.count(key) > 0; };
    auto file_val = [&](const char* key) -> const FileEntry& { return file.at(key); };

    const bool is_sweep =
        cfg.subcommand == "sweep-divergence" || cfg.subcommand == "sweep-ce";
    const bool is_field =
        cfg.subcommand == "simulate" || cfg.subcommand == "balance";

    // epsilon(s)
    if (o.epsilon->count() > 0)
        cfg.epsilons = f_epsilon;
    else if (has_file("epsilon"))
        cfg.epsilons = parse_double_list(file_val("epsilon").value,
                                         file_context("epsilon", file_val("epsilon")));
    else
        cfg.epsilons = is_sweep ? kDefaultEpsSweep : std::vector<double>{0.1};

    for (double e : cfg.epsilons)
        if (!(e > 0.0) || !std::isfinite(e))
            throw UsageError("--epsilon must be positive and finite");
    if (!is_sweep && cfg.epsilons.size() != 1)
        throw UsageError("--epsilon takes a single value for " + cfg.subcommand);
    if (is_sweep) {
        if (cfg.epsilons.size() < 4)
            throw UsageError("sweeps need at least four --epsilon values");
        for (std::size_t i = 0; i + 1 < cfg.epsilons.size(); ++i)
            if (!(cfg.epsilons[i] > cfg.epsilons[i + 1]))
                throw UsageError("sweep --epsilon values must be sorted descending");
    }

    // wave numbers
    const bool flag_single = o.k->count() > 0;
    const bool flag_grid =
        o.k_min->count() || o.k_max->count() || o.k_count->count();
    if (flag_single && flag_grid)
        throw UsageError("--k conflicts with --k-min/--k-max/--k-count");

    const bool file_single = has_file("k");
    const bool file_grid = has_file("k-min") || has_file("k-max") || has_file("k-count");

    // Grid-shaped defaults for the per-k table subcommands; accumulation's
    // default grid lives in the asymptotic regime k >= 100/eps.
    const bool default_grid = cfg.subcommand == "spectrum" ||
                              cfg.subcommand == "closure" ||
                              cfg.subcommand == "accumulation";
    if (cfg.subcommand == "accumulation") {
        cfg.k_min = 1e2 / cfg.epsilon();
        cfg.k_max = 1e4 / cfg.epsilon();
        cfg.k_count = 50;
    }
    if (flag_single)
        cfg.k_is_grid = false;
    else if (flag_grid)
        cfg.k_is_grid = true;
    else if (file_single)
        cfg.k_is_grid = false;
    else if (file_grid)
        cfg.k_is_grid = true;
    else
        cfg.k_is_grid = default_grid;

    if (o.k->count())
        cfg.k_single = f_k;
    else if (file_single)
        cfg.k_single = parse_double(file_val("k").value, file_context("k", file_val("k")));

    if (o.k_min->count())
        cfg.k_min = f_k_min;
    else if (has_file("k-min"))
        cfg.k_min = parse_double(file_val("k-min").value,
                                 file_context("k-min", file_val("k-min")));
    if (o.k_max->count())
        cfg.k_max = f_k_max;
    else if (has_file("k-max"))
        cfg.k_max = parse_double(file_val("k-max").value,
                                 file_context("k-max", file_val("k-max")));
    if (o.k_count->count())
        cfg.k_count = f_k_count;
    else if (has_file("k-count"))
        cfg.k_count = static_cast<int>(parse_int(
            file_val("k-count").value, file_context("k-count", file_val("k-count"))));

    if (o.log_k->count() && o.linear_k->count())
        throw UsageError("--log-k conflicts with --linear-k");
    if (o.log_k->count())
        cfg.log_spacing = true;
    else if (o.linear_k->count())
        cfg.log_spacing = false;
    else if (has_file("log-k"))
        cfg.log_spacing =
            parse_bool(file_val("log-k").value, file_context("log-k", file_val("log-k")));

    if (cfg.k_is_grid) {
        if (cfg.k_count < 1) throw UsageError("--k-count must be at least 1");
        if (!(cfg.k_max >= cfg.k_min)) throw UsageError("--k-max must be >= --k-min");
        if (cfg.log_spacing && !(cfg.k_min > 0.0))
            throw UsageError("--log-k needs --k-min > 0");
    }

    // time
    if (o.t_end->count())
        cfg.t_end = f_t_end;
    else if (has_file("t-end"))
        cfg.t_end = parse_double(file_val("t-end").value,
                                 file_context("t-end", file_val("t-end")));
    else
        cfg.t_end = cfg.subcommand == "balance" ? 5.0 : 1.0;
    if (!(cfg.t_end >= 0.0)) throw UsageError("--t-end must be nonnegative");

    if (o.samples->count())
        cfg.sample_count = f_samples;
    else if (has_file("samples"))
        cfg.sample_count = static_cast<int>(parse_int(
            file_val("samples").value, file_context("samples", file_val("samples"))));
    if (cfg.sample_count < 1) throw UsageError("--samples must be at least 1");

    if (o.rk4_dt->count())
        cfg.rk4_dt = f_rk4_dt;
    else if (has_file("rk4-dt"))
        cfg.rk4_dt = parse_double(file_val("rk4-dt").value,
                                  file_context("rk4-dt", file_val("rk4-dt")));
    if (cfg.rk4_dt < 0.0) throw UsageError("--rk4-dt must be positive");

    // spatial grid
    if (o.grid_n->count())
        cfg.grid_n = f_grid_n;
    else if (has_file("grid-n"))
        cfg.grid_n = static_cast<int>(parse_int(
            file_val("grid-n").value, file_context("grid-n", file_val("grid-n"))));
    if (is_field && (cfg.grid_n < 2 || (cfg.grid_n & (cfg.grid_n - 1)) != 0))
        throw UsageError("--grid-n must be a power of two, at least 2");

    if (o.length->count())
        cfg.domain_length = f_length;
    else if (has_file("length"))
        cfg.domain_length = parse_double(file_val("length").value,
                                         file_context("length", file_val("length")));
    if (!(cfg.domain_length > 0.0)) throw UsageError("--length must be positive");

    // model / init
    if (o.model->count())
        cfg.model = f_model;
    else if (has_file("model"))
        cfg.model = file_val("model").value;
    if (cfg.model != "full" && cfg.model != "slow_exact" && cfg.model != "fast" &&
        cfg.model != "euler" && cfg.model != "navier_stokes")
        throw UsageError("--model must be full|slow_exact|fast|euler|navier_stokes");

    if (o.init->count())
        cfg.init = f_init;
    else if (has_file("init"))
        cfg.init = file_val("init").value;
    else if (cfg.subcommand == "balance")
        cfg.init = "slow";
    if (cfg.init != "cosine" && cfg.init != "random" && cfg.init != "slow")
        throw UsageError("--init must be cosine|random|slow");
    if (cfg.subcommand == "balance" && cfg.init != "slow")
        throw UsageError("balance requires --init slow");

    // output format before path (default filename extension follows it)
    if (o.format->count())
        cfg.format = f_format;
    else if (has_file("format"))
        cfg.format = file_val("format").value;
    if (cfg.format != "csv" && cfg.format != "json")
        throw UsageError("--format must be csv or json");

    if (o.out->count()) {
        cfg.out = f_out;
    } else if (has_file("out")) {
        cfg.out = file_val("out").value;
    } else {
        const std::string name = cfg.subcommand + "." + cfg.format;
        if (const char* dir = std::getenv("GRAD3_OUT_DIR"))
            cfg.out = std::string(dir) + "/" + name;
        else
            cfg.out = name;
    }

    if (o.seed->count())
        cfg.seed = f_seed;
    else if (has_file("seed"))
        cfg.seed = static_cast<std::uint64_t>(parse_int(
            file_val("seed").value, file_context("seed", file_val("seed"))));

    if ((cfg.subcommand == "sweep-divergence" || cfg.subcommand == "sweep-ce") &&
        !cfg.k_is_grid && cfg.k_single == 0.0 && !flag_single && !file_single)
        cfg.k_single = 1.0;
    if (is_sweep && cfg.k_is_grid)
        throw UsageError(cfg.subcommand + " takes a single --k, not a grid");
    if (is_sweep && cfg.k_single == 0.0)
        throw UsageError(cfg.subcommand + " requires --k != 0");

    return ParseOutcome{false, cfg};
}

}  // namespace grad3::cli
