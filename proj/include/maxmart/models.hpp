#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include <boost/random/normal_distribution.hpp>

#include "maxmart/parallel.hpp"
#include "maxmart/paths.hpp"
#include "maxmart/rng.hpp"

namespace maxmart {

/// Invalid model or check parameters.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// L = exp(lambda t) until an Exponential(lambda) death time, then 0.
struct PoissonDeath {
    double lambda = 1.0;
};

/// log L_t = sigma W_t - sigma^2 t / 2 on a grid of step dt, stopped once
/// log L falls stop_gap below its running max.
struct ContinuousExp {
    double sigma = 1.0;
    double dt = 1e-3;
    double stop_gap = 9.0;
    bool bridge_max = true;
};

/// S = exp(-lambda t) 2^N_t for a Poisson process N, stopped once
/// S <= exp(-stop_gap) S*.
struct PoissonUp {
    double lambda = 1.0;
    double stop_gap = 9.0;
};

using ModelSpec = std::variant<PoissonDeath, ContinuousExp, PoissonUp>;

inline constexpr double kMinStopGap = 5.0;

void validate(const ModelSpec& spec);
std::string_view model_name(const ModelSpec& spec) noexcept;
/// True for the two generators whose running supremum is continuous.
bool has_continuous_sup(const ModelSpec& spec) noexcept;
/// Upper bound on the probability that truncation hid a new maximum.
double truncation_bias(const ModelSpec& spec) noexcept;

// PoissonDeath ------------------------------------------------------------

/// Deterministic path with a given death time.
CadlagPath poisson_death_path(double lambda, double tau);
CadlagPath simulate_poisson_death(double lambda, Seed seed);

// ContinuousExp -----------------------------------------------------------

/// Maximum of a Brownian bridge (log scale) from a to b with total variance
/// `variance`, driven by a uniform u in (0, 1]:
/// M = (a + b + sqrt((b - a)^2 - 2 variance ln u)) / 2.
double bridge_max(double a, double b, double variance, double u);

/// P[bridge max > level] for level >= max(a, b).
double bridge_exceed_probability(double a, double b, double variance, double level);

/// Exponent beyond which a bridge excursion above the running max is ignored.
inline constexpr double kBridgeSkipExponent = 50.0;
inline constexpr std::size_t kMaxGridSteps = std::size_t{1} << 31;

/// One grid step of log L with an optional within-step maximum.
class LogGridStepper {
public:
    explicit LogGridStepper(const ContinuousExp& spec);

    struct Step {
        double end;   ///< log L at the end of the step
        double peak;  ///< within-step log max if it may exceed `log_sup`, else -inf
    };

    /// Advances from `start`; the bridge maximum is only drawn when its
    /// probability of exceeding `log_sup` is above exp(-50).
    Step advance(double start, double log_sup, StreamEngine& engine) const {
        boost::random::normal_distribution<double> normal;
        Step step{start + drift_ + sd_ * normal(engine), -std::numeric_limits<double>::infinity()};
        // The exceed probability is exp(-2 (s - a)(s - b) / variance).
        if (bridge_ && (step.end >= log_sup || (log_sup - start) * (log_sup - step.end) < skip_product_))
            step.peak = bridge_max(start, step.end, variance_, engine.uniform_pos());
        return step;
    }

    double dt() const noexcept { return dt_; }

private:
    double variance_;
    double sd_;
    double drift_;
    double dt_;
    double skip_product_;
    bool bridge_;
};

/**
 * Runs the ContinuousExp generator without storing anything. After step k
 * (ending at time (k + 1) dt) calls on_step(k, log_end, log_peak, log_sup):
 * log_peak is the within-step maximum when it set a new running max above
 * the endpoint (-inf otherwise) and log_sup is the running max after the
 * step. Returns the number of steps taken.
 */
template <class OnStep>
std::size_t walk_continuous_exp(const ContinuousExp& spec, Seed seed, OnStep&& on_step) {
    validate(spec);
    StreamEngine engine(seed);
    const LogGridStepper stepper(spec);
    double log_value = 0.0;
    double log_sup = 0.0;
    for (std::size_t k = 0;; ++k) {
        if (k >= kMaxGridSteps) throw std::runtime_error("continuous path did not stop");
        const auto step = stepper.advance(log_value, log_sup, engine);
        double log_peak = -std::numeric_limits<double>::infinity();
        if (step.peak > log_sup && step.peak > step.end) {
            log_peak = step.peak;
            log_sup = step.peak;
        }
        log_value = step.end;
        log_sup = std::max(log_sup, log_value);
        on_step(k, log_value, log_peak, log_sup);
        if (log_value <= log_sup - spec.stop_gap) return k + 1;
    }
}

CadlagPath simulate_continuous_exp(const ContinuousExp& spec, Seed seed);

// PoissonUp ---------------------------------------------------------------

/// Deterministic path with given jump times, ending (non-jump) at stop_time.
CadlagPath poisson_up_path(double lambda, std::span<const double> jump_times, double stop_time);
CadlagPath simulate_poisson_up(const PoissonUp& spec, Seed seed);

// -------------------------------------------------------------------------

CadlagPath simulate(const ModelSpec& spec, Seed seed);

/// False iff some jump happens where the left limit sits on the running sup
/// (|L_{t-} - L*_{t-}| <= tol).
bool kardaras_condition(const CadlagPath& path, double tol);

/// Path i uses Seed{master_seed, i}.
std::vector<CadlagPath> batch_simulate(const ModelSpec& spec, std::size_t n,
                                       std::uint64_t master_seed, unsigned jobs = 0);

/// Simulates paths one at a time and keeps only f(i, path). Results are in
/// index order and bit-identical for any worker count.
template <class F>
auto batch_map(const ModelSpec& spec, std::size_t n, std::uint64_t master_seed, unsigned jobs,
               F&& f) {
    using R = std::decay_t<std::invoke_result_t<F&, std::size_t, const CadlagPath&>>;
    validate(spec);
    if (n == 0) throw ParameterError("batch size must be at least 1");
    return parallel_map<R>(n, jobs, [&](std::size_t i) {
        return f(i, simulate(spec, Seed{master_seed, i}));
    });
}

}  // namespace maxmart
