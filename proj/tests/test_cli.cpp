#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "config.hpp"

using namespace grad3::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::path("cli_test_out") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

RunConfig parse(std::initializer_list<std::string> args) {
    const auto outcome = parse_config(std::vector<std::string>(args));
    REQUIRE_FALSE(outcome.help_shown);
    return outcome.config;
}

}  // namespace

TEST_CASE("flag parsing happy path") {
    const RunConfig cfg = parse({"spectrum", "--epsilon", "0.1", "--k-min", "0.01",
                                 "--k-max", "100", "--k-count", "200", "--log-k",
                                 "--out", "s.csv"});
    CHECK(cfg.subcommand == "spectrum");
    CHECK(cfg.epsilons == std::vector<double>{0.1});
    CHECK(cfg.k_is_grid);
    CHECK(cfg.k_min == 0.01);
    CHECK(cfg.k_max == 100.0);
    CHECK(cfg.k_count == 200);
    CHECK(cfg.log_spacing);
    CHECK(cfg.out == "s.csv");
    CHECK(cfg.format == "csv");
    CHECK(cfg.seed == 0);
    const auto grid = cfg.k_grid();
    CHECK(grid.size() == 200);
    CHECK(grid.front() == doctest::Approx(0.01));
    CHECK(grid.back() == doctest::Approx(100.0));
}

TEST_CASE("usage errors") {
    CHECK_THROWS_AS(parse({"spectrum", "--epsilon", "-1"}), UsageError);
    CHECK_THROWS_AS(parse({"spectrum", "--epsilon", "0"}), UsageError);
    CHECK_THROWS_AS(parse({"spectrum", "--no-such-flag"}), UsageError);
    CHECK_THROWS_AS(parse({"frobnicate"}), UsageError);
    CHECK_THROWS_AS(parse({"spectrum", "--format", "xml"}), UsageError);
    CHECK_THROWS_AS(parse({"simulate", "--grid-n", "100"}), UsageError);
    CHECK_THROWS_AS(parse({"simulate", "--model", "bogus"}), UsageError);
    CHECK_THROWS_AS(parse({"sweep-divergence", "--epsilon", "0.1,0.01,0.001"}),
                    UsageError);
    CHECK_THROWS_AS(
        parse({"sweep-divergence", "--epsilon", "1e-4,1e-3,1e-2,1e-1"}), UsageError);
    CHECK_THROWS_AS(parse({"spectrum", "--k", "1", "--k-min", "0.1"}), UsageError);
    CHECK_THROWS_AS(parse({"balance", "--init", "random"}), UsageError);

    // flag names survive into the message
    try {
        parse({"spectrum", "--epsilon", "-1"});
        FAIL("expected UsageError");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()).find("--epsilon") != std::string::npos);
    }
}

TEST_CASE("config file parsing") {
    const fs::path dir = fresh_dir("config");

    SUBCASE("values load and flags win") {
        const fs::path cfg_path = dir / "run.cfg";
        std::ofstream(cfg_path) << "# comment line\n"
                                << "epsilon = 0.2\n"
                                << "k-count = 7\n"
                                << "k-min = 1\n"
                                << "k-max = 10\n"
                                << "seed = 42\n";
        const RunConfig cfg =
            parse({"spectrum", "--config", cfg_path.string(), "--epsilon", "0.5"});
        CHECK(cfg.epsilons == std::vector<double>{0.5});  // flag beats file
        CHECK(cfg.k_count == 7);
        CHECK(cfg.k_min == 1.0);
        CHECK(cfg.seed == 42);
    }
    SUBCASE("unknown keys are rejected with a line number") {
        const fs::path cfg_path = dir / "bad.cfg";
        std::ofstream(cfg_path) << "epsilon = 0.2\nbogus-key = 3\n";
        try {
            parse({"spectrum", "--config", cfg_path.string()});
            FAIL("expected ConfigParseError");
        } catch (const ConfigParseError& e) {
            const std::string msg = e.what();
            CHECK(msg.find(":2") != std::string::npos);
            CHECK(msg.find("bogus-key") != std::string::npos);
        }
    }
    SUBCASE("bad values are rejected with a line number") {
        const fs::path cfg_path = dir / "badval.cfg";
        std::ofstream(cfg_path) << "epsilon = banana\n";
        try {
            parse({"spectrum", "--config", cfg_path.string()});
            FAIL("expected ConfigParseError");
        } catch (const ConfigParseError& e) {
            CHECK(std::string(e.what()).find("line 1") != std::string::npos);
        }
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(parse({"spectrum", "--config", "does-not-exist.cfg"}),
                        ConfigParseError);
    }
}

TEST_CASE("environment supplies the default output directory") {
    const fs::path dir = fresh_dir("envout");
    setenv("GRAD3_OUT_DIR", dir.string().c_str(), 1);
    const RunConfig cfg = parse({"spectrum"});
    unsetenv("GRAD3_OUT_DIR");
    CHECK(cfg.out == dir.string() + "/spectrum.csv");

    const RunConfig cfg2 = parse({"spectrum"});
    CHECK(cfg2.out == "spectrum.csv");
}

TEST_CASE("spectrum run: pinned header, manifest, determinism") {
    const fs::path dir = fresh_dir("spectrum");
    const RunConfig cfg = parse({"spectrum", "--epsilon", "0.1", "--k-min", "0.01",
                                 "--k-max", "100", "--k-count", "20", "--log-k",
                                 "--out", (dir / "a.csv").string()});
    REQUIRE(run(cfg) == 0);

    const std::string a = slurp(dir / "a.csv");
    CHECK(first_line(a) ==
          "k,epsilon,re_lambda_ac,im_lambda_ac,lambda_diff,residual_max,method");

    // 17-significant-digit serialization round-trips exactly
    std::stringstream body(a.substr(a.find('\n') + 1));
    std::string cell;
    std::getline(body, cell, ',');
    CHECK(std::stod(cell) == 0.01);

    RunConfig cfg_b = cfg;
    cfg_b.out = (dir / "b.csv").string();
    REQUIRE(run(cfg_b) == 0);
    CHECK(a == slurp(dir / "b.csv"));  // byte-identical

    const auto manifest = nlohmann::json::parse(slurp(dir / "a.csv.manifest.json"));
    CHECK(manifest.contains("config"));
    CHECK(manifest.contains("version"));
    CHECK(manifest.contains("wall_ms"));
    CHECK(manifest["warnings"] == 0);
    CHECK(manifest["config"]["subcommand"] == "spectrum");
    CHECK(manifest["config"]["k_count"] == 20);
    CHECK(manifest["config"]["seed"] == 0);
}

TEST_CASE("closure run: pinned header") {
    const fs::path dir = fresh_dir("closure");
    const RunConfig cfg = parse({"closure", "--epsilon", "0.1", "--k-min", "0.1",
                                 "--k-max", "10", "--k-count", "5", "--out",
                                 (dir / "c.csv").string()});
    REQUIRE(run(cfg) == 0);
    const std::string text = slurp(dir / "c.csv");
    CHECK(first_line(text) == "k,epsilon,eps_k,A,B");
    // one header plus five rows
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
}

TEST_CASE("sweep-divergence run: pinned header and headline number") {
    const fs::path dir = fresh_dir("divergence");
    const RunConfig cfg =
        parse({"sweep-divergence", "--out", (dir / "d.csv").string()});
    REQUIRE(run(cfg) == 0);
    const std::string text = slurp(dir / "d.csv");
    CHECK(first_line(text) ==
          "epsilon,fast_rate,eps_times_rate,re_lambda_ac,slope_estimate");

    // final row (eps = 1e-4): eps * rate within 2% of -1
    const auto last_start = text.rfind('\n', text.size() - 2);
    std::stringstream last(text.substr(last_start + 1));
    std::string cell;
    std::getline(last, cell, ',');  // epsilon
    CHECK(std::stod(cell) == 1e-4);
    std::getline(last, cell, ',');  // fast_rate
    std::getline(last, cell, ',');  // eps_times_rate
    CHECK(std::abs(std::stod(cell) + 1.0) <= 0.02);
}

TEST_CASE("json format mirrors the csv schema") {
    const fs::path dir = fresh_dir("json");
    const RunConfig cfg = parse({"closure", "--k", "1", "--format", "json", "--out",
                                 (dir / "c.json").string()});
    REQUIRE(run(cfg) == 0);
    const auto rows = nlohmann::json::parse(slurp(dir / "c.json"));
    REQUIRE(rows.is_array());
    REQUIRE(rows.size() == 1);
    for (const char* key : {"k", "epsilon", "eps_k", "A", "B"})
        CHECK(rows[0].contains(key));
    CHECK(rows[0]["k"] == 1.0);
}

TEST_CASE("default output name follows the format") {
    CHECK(parse({"closure", "--format", "json"}).out == "closure.json");
}

TEST_CASE("simulate and balance runs succeed") {
    const fs::path dir = fresh_dir("fieldruns");
    REQUIRE(run(parse({"simulate", "--grid-n", "64", "--samples", "3", "--t-end",
                       "0.5", "--out", (dir / "sim.csv").string()})) == 0);
    CHECK(first_line(slurp(dir / "sim.csv")) == "t,x,p,u,sigma");

    REQUIRE(run(parse({"simulate", "--grid-n", "32", "--init", "slow", "--model",
                       "slow_exact", "--samples", "2", "--out",
                       (dir / "sim2.csv").string()})) == 0);

    REQUIRE(run(parse({"balance", "--grid-n", "64", "--samples", "4", "--out",
                       (dir / "bal.csv").string()})) == 0);
    CHECK(first_line(slurp(dir / "bal.csv")) ==
          "t,energy_rate,capillarity_rate,dissipation,residual,relative_residual");

    REQUIRE(run(parse({"accumulation", "--k-count", "4", "--out",
                       (dir / "acc.csv").string()})) == 0);
    CHECK(first_line(slurp(dir / "acc.csv")) ==
          "k,epsilon,lambda_diff,re_lambda_ac,dist_fast_axis,dist_slow_axis");

    REQUIRE(run(parse({"sweep-ce", "--out", (dir / "ce.csv").string()})) == 0);
    CHECK(first_line(slurp(dir / "ce.csv")) ==
          "epsilon,k,stress_residual,euler_distance,ns_distance,stress_slope,"
          "euler_slope,ns_slope");
}

TEST_CASE("numerical failures exit with code 2") {
    const fs::path dir = fresh_dir("numfail");
    // RK4 oracle step far above the stiff bound 2.7 eps
    const RunConfig cfg = parse({"simulate", "--grid-n", "32", "--epsilon", "0.01",
                                 "--rk4-dt", "0.1", "--samples", "2", "--out",
                                 (dir / "x.csv").string()});
    CHECK(run(cfg) == 2);
}

TEST_CASE("seeded runs differ across seeds but repeat within one") {
    const fs::path dir = fresh_dir("seeds");
    auto cfg = [&](const std::string& name, const std::string& seed) {
        return parse({"balance", "--grid-n", "64", "--samples", "3", "--seed", seed,
                      "--out", (dir / name).string()});
    };
    REQUIRE(run(cfg("s0.csv", "0")) == 0);
    REQUIRE(run(cfg("s0b.csv", "0")) == 0);
    REQUIRE(run(cfg("s1.csv", "1")) == 0);
    CHECK(slurp(dir / "s0.csv") == slurp(dir / "s0b.csv"));
    CHECK(slurp(dir / "s0.csv") != slurp(dir / "s1.csv"));
}
