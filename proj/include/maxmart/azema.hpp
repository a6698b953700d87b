#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxmart/models.hpp"
#include "maxmart/paths.hpp"
#include "maxmart/rng.hpp"

namespace maxmart {

/// Markov state of a model at time t: (L_t, L*_t) and, for PoissonDeath,
/// whether the death time has passed.
struct MarkovState {
    ModelSpec model;
    double t = 0.0;
    double current = 1.0;
    double runsup = 1.0;
    bool alive = true;
};

/// Throws ParameterError unless current <= runsup, runsup >= 1 and, for
/// PoissonDeath, current == 0 exactly when the state is dead.
void validate_state(const MarkovState& state);

/// State read off a path; past the horizon the terminal value is used.
MarkovState state_at(const ModelSpec& model, const CadlagPath& path, double t);

/// Fresh draw of the state at time t (no stop rule is needed up to a fixed time).
MarkovState sample_state(const ModelSpec& model, double t, Seed seed);

/// current / runsup; 0 when current = 0.
double z_ratio(const MarkovState& state);

/// Outcome of one continuation from a state.
struct Continuation {
    bool reaches = false;  ///< future sup >= runsup
    bool exceeds = false;  ///< future sup > runsup
    double log_gain = 0.0;  ///< log(max(runsup, future sup) / runsup); only with `full`
};

/**
 * Simulates the model forward from `state`. The continuation stops once its
 * value falls to exp(-C) times max(runsup, its own sup). Unless `full` is
 * set it also stops as soon as it exceeds runsup.
 */
Continuation continue_from(const MarkovState& state, Seed seed, bool full);

struct AzemaEstimate {
    MarkovState state;
    double z_hat = 0.0;         ///< frequency of {future sup >= runsup}
    double z_hat_strict = 0.0;  ///< frequency of {future sup > runsup}
    double std_error = 0.0;     ///< sqrt(z_hat (1 - z_hat) / n_inner)
    std::size_t n_inner = 0;
    double z_ratio = 0.0;
};

inline constexpr std::size_t kMinInner = 100;

/// Nested estimate of P[rho > t | state]; inner path i uses a seed derived from (seed, i).
AzemaEstimate nested_z_estimate(const MarkovState& state, std::size_t n_inner, Seed seed);

/// Tolerance for |z_hat - z_ratio|: 3 standard errors (the larger of the
/// plug-in error and the binomial error at z_ratio) plus twice the model's
/// truncation bias.
double azema_tolerance(const AzemaEstimate& estimate);

struct BeforeRhoSummary {
    std::size_t n_paths = 0;
    std::size_t n_used = 0;
    std::size_t n_skipped = 0;  ///< rho - eps < 0, or no maximum after time 0
    double mean_ratio = 0.0;    ///< mean of L/L* at rho - eps
    double mean_z_hat = 0.0;    ///< mean nested estimate at rho - eps (0 if n_inner = 0)
    std::size_t ratio_below_one = 0;  ///< paths with L_{rho-} < L*_{rho-}
};

/// Probes Z just before rho on each path. n_inner = 0 skips the nested estimate.
BeforeRhoSummary z_before_rho(std::span<const CadlagPath> paths, const ModelSpec& model, double eps,
                              std::size_t n_inner, Seed seed, unsigned jobs = 0);

/// L_{rho-} / L*_{rho-} at the time of maximum; nullopt when rho = 0.
std::optional<double> ratio_at_rho_left_limit(const CadlagPath& path);

struct ConditionalDoobRow {
    AzemaEstimate estimate;
    bool violation = false;  ///< z_hat > z_ratio + tolerance
    bool equal = false;      ///< |z_hat - z_ratio| <= tolerance
    bool strict_equal = false;  ///< |z_hat_strict - z_ratio| <= tolerance
};

struct ConditionalDoobReport {
    std::vector<ConditionalDoobRow> rows;
    std::size_t violations = 0;
    std::size_t equalities = 0;
    std::size_t strict_equalities = 0;
};

/// Outer states at time t, each with a nested estimate.
ConditionalDoobReport conditional_doob_check(const ModelSpec& model, double t, std::size_t n_outer,
                                             std::size_t n_inner, Seed seed, unsigned jobs = 0);

std::string conditional_doob_csv(const ConditionalDoobReport& report);

struct AdditiveRow {
    MarkovState state;
    double estimate = 0.0;  ///< E[log L*_inf | state] - log L*_t
    double std_error = 0.0;
    double z_ratio = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// E[log L*_inf | state] - log runsup against z_ratio at one state.
AdditiveRow additive_check_state(const MarkovState& state, std::size_t n, Seed seed);

std::vector<AdditiveRow> additive_check(const ModelSpec& model, double t, std::size_t n_outer,
                                        std::size_t n, Seed seed, unsigned jobs = 0);

}  // namespace maxmart
