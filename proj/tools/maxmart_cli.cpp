// Experiment runner: maxmart_cli --config run.json [--seed N] [--jobs N] [--out DIR]
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "maxmart/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Run time-of-maximum checks on simulated martingale paths"};
    std::string config_path;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 0;
    std::optional<std::string> out_dir;
    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_option("--seed", seed, "override master_seed");
    app.add_option("--jobs", jobs, "worker threads (default: $MAXMART_JOBS or all cores)");
    app.add_option("--out", out_dir, "override output_dir");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        maxmart::RunConfig config = maxmart::load_config(config_path);
        if (seed) config.master_seed = *seed;
        if (out_dir) config.output_dir = *out_dir;
        const auto start = std::chrono::steady_clock::now();
        const maxmart::RunReport report = maxmart::run(config, jobs);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        maxmart::write_report(report, config.output_dir);
        std::ofstream(std::filesystem::path(config.output_dir) / "timing.json")
            << "{\"wall_time_s\": " << wall << "}\n";
        std::cout << maxmart::summary_table(report) << "wall_time_s " << wall << '\n';
        return maxmart::exit_status(report);
    } catch (const maxmart::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const maxmart::ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 2;
    }
}
