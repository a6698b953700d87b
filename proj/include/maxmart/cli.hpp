#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "maxmart/models.hpp"

namespace maxmart {

/// Invalid configuration or command line; maps to exit status 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Known check names, in the order they run.
const std::vector<std::string>& known_checks();

struct RunConfig {
    ModelSpec model = PoissonDeath{};
    std::size_t n_paths = 10000;
    std::uint64_t master_seed = 42;
    std::vector<std::string> checks;  ///< empty: every check that applies to the model
    std::vector<double> strikes{2.0, 5.0, 10.0};
    std::vector<double> checkpoints{0.5};
    std::size_t n_inner = 10000;
    double alpha = 0.01;
    std::string output_dir = "maxmart_out";
    std::size_t n_states = 10;          ///< random states per checkpoint (azema, additive)
    std::size_t n_outer = 200;          ///< outer states per checkpoint (conditional-doob)
    std::size_t n_path_checks = 0;      ///< paths for the pathwise checks; 0 means n_paths
    std::size_t before_rho_paths = 50;  ///< paths probed by nested estimates before rho
    double eps = 0.01;                  ///< probe offset before rho
    std::size_t max_csv_rows = 10000;   ///< per-path CSV rows written per check
};

/// Parses a JSON config. Unknown keys, models and checks raise ConfigError
/// naming the key; the config is validated before it is returned.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

/// Throws ConfigError for invalid values or checks that do not apply to the model.
void validate_config(const RunConfig& config);

struct CheckEntry {
    std::string name;
    std::string metric;
    double value = 0.0;
    std::string target;
    double tolerance = 0.0;
    bool pass = false;
};

struct RunReport {
    std::string model;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    std::vector<CheckEntry> checks;
    /// Per-check CSV files: (file name, contents).
    std::vector<std::pair<std::string, std::string>> files;
};

/// Runs every requested check on a fresh batch. `jobs` only changes speed.
RunReport run(const RunConfig& config, unsigned jobs = 0);

/// {model, n_paths, seed, checks: [...]}; throws StructuralError if no check ran.
std::string summary_json(const RunReport& report);
std::string summary_table(const RunReport& report);

/// 0 if every entry passes, 1 otherwise.
int exit_status(const RunReport& report);

/// Writes summary.json and the CSV files into `dir` (created if needed).
void write_report(const RunReport& report, const std::string& dir);

}  // namespace maxmart
