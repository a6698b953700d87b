#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "maxmart/cli.hpp"

namespace maxmart {
namespace {

std::string message_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

TEST(ParseConfig, Defaults) {
    const RunConfig c = parse_config(R"({"model": {"name": "PoissonUp"}})");
    EXPECT_TRUE(std::holds_alternative<PoissonUp>(c.model));
    EXPECT_EQ(c.n_paths, 10000u);
    EXPECT_EQ(c.master_seed, 42u);
    for (const auto& check : c.checks) {
        EXPECT_NE(check, "rho-identity");
        EXPECT_NE(check, "additive");
    }
}

TEST(ParseConfig, ModelParameters) {
    const RunConfig c = parse_config(
        R"({"model": {"name": "ContinuousExp", "sigma": 0.5, "dt": 0.01, "stop_gap_C": 7, "bridge_max": false}})");
    const auto& m = std::get<ContinuousExp>(c.model);
    EXPECT_EQ(m.sigma, 0.5);
    EXPECT_EQ(m.dt, 0.01);
    EXPECT_EQ(m.stop_gap, 7.0);
    EXPECT_FALSE(m.bridge_max);
}

TEST(ParseConfig, Errors) {
    EXPECT_NE(message_of(R"({"model": {"name": "PoissonDeath"}, "strikes": [0.5]})").find("strikes"),
              std::string::npos);
    EXPECT_NE(message_of(R"({"model": {"name": "PoissonDeath"}, "bogus": 1})").find("bogus"), std::string::npos);
    EXPECT_NE(message_of(R"({"model": {"name": "PoissonDeath", "sigma": 1}})").find("sigma"), std::string::npos);
    EXPECT_NE(message_of(R"({"model": {"name": "Brownian"}})").find("model"), std::string::npos);
    EXPECT_NE(message_of(R"({"model": {"name": "PoissonDeath"}, "checks": ["nope"]})").find("checks"),
              std::string::npos);
    EXPECT_FALSE(message_of(R"({"model": {"name": "PoissonUp"}, "checks": ["rho-identity"]})").empty());
    EXPECT_FALSE(message_of(R"({"model": {"name": "PoissonDeath"}, "checks": ["doob"], "n_paths": 10})").empty());
    EXPECT_FALSE(message_of(R"({"model": {"name": "PoissonDeath"}, "checks": ["azema"], "n_inner": 50})").empty());
    EXPECT_FALSE(message_of(R"({"model": {"name": "PoissonDeath", "lambda": -1}})").empty());
    EXPECT_FALSE(message_of("not json").empty());
}

TEST(Run, SmallPoissonDeathPasses) {
    RunConfig c = parse_config(
        R"({"model": {"name": "PoissonDeath"}, "n_paths": 2000, "checks": ["doob", "rho-identity", "hedge", "kardaras"]})");
    const RunReport r = run(c, 1);
    EXPECT_EQ(exit_status(r), 0) << summary_table(r);
    EXPECT_EQ(summary_json(r), summary_json(run(c, 3)));
}

std::filesystem::path temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("maxmart_cli_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const int status = std::system((std::string(MAXMART_CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliBinary, ExitCodes) {
    const auto dir = temp_dir("exit");
    const auto bad = dir / "bad.json";
    std::ofstream(bad) << R"({"model": {"name": "PoissonDeath"}, "strikes": [0.5]})";
    EXPECT_EQ(run_cli("--config " + bad.string() + " --out " + (dir / "o").string()), 2);
    EXPECT_EQ(run_cli("--config " + (dir / "missing.json").string()), 2);
    EXPECT_EQ(run_cli("--nonsense"), 2);
    const auto good = dir / "good.json";
    std::ofstream(good) << R"({"model": {"name": "PoissonDeath"}, "n_paths": 1000, "checks": ["doob", "kardaras"]})";
    EXPECT_EQ(run_cli("--config " + good.string() + " --out " + (dir / "o").string()), 0);
    EXPECT_TRUE(std::filesystem::exists(dir / "o" / "summary.json"));
    EXPECT_TRUE(std::filesystem::exists(dir / "o" / "doob_records.csv"));
}

}  // namespace
}  // namespace maxmart
