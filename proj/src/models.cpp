#include "maxmart/models.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace maxmart {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ParameterError(std::string(what) + " must be a positive finite number");
}

void require_stop_gap(double c) {
    require_positive(c, "stop_gap_C");
    if (c < kMinStopGap) throw ParameterError("stop_gap_C must be at least 5");
}


}  // namespace

void validate(const ModelSpec& spec) {
    std::visit(overloaded{
                   [](const PoissonDeath& m) { require_positive(m.lambda, "lambda"); },
                   [](const ContinuousExp& m) {
                       require_positive(m.sigma, "sigma");
                       require_positive(m.dt, "dt");
                       require_stop_gap(m.stop_gap);
                   },
                   [](const PoissonUp& m) {
                       require_positive(m.lambda, "lambda");
                       require_stop_gap(m.stop_gap);
                   },
               },
               spec);
}

std::string_view model_name(const ModelSpec& spec) noexcept {
    return std::visit(overloaded{
                          [](const PoissonDeath&) { return std::string_view("PoissonDeath"); },
                          [](const ContinuousExp&) { return std::string_view("ContinuousExp"); },
                          [](const PoissonUp&) { return std::string_view("PoissonUp"); },
                      },
                      spec);
}

bool has_continuous_sup(const ModelSpec& spec) noexcept {
    return !std::holds_alternative<PoissonUp>(spec);
}

double truncation_bias(const ModelSpec& spec) noexcept {
    return std::visit(overloaded{
                          [](const PoissonDeath&) { return 0.0; },
                          [](const ContinuousExp& m) { return std::exp(-m.stop_gap); },
                          [](const PoissonUp& m) { return std::exp(-m.stop_gap); },
                      },
                      spec);
}

CadlagPath poisson_death_path(double lambda, double tau) {
    require_positive(lambda, "lambda");
    require_positive(tau, "death time");
    const double peak = 1.0 * std::exp(lambda * (tau - 0.0));
    return CadlagPath({{0.0, 1.0, 1.0}, {tau, peak, 0.0}}, 0.0, Interpolation::ExponentialInTime,
                      lambda);
}

CadlagPath simulate_poisson_death(double lambda, Seed seed) {
    require_positive(lambda, "lambda");
    StreamEngine engine(seed);
    double tau = 0.0;
    while (tau <= 0.0) tau = engine.exponential() / lambda;
    return poisson_death_path(lambda, tau);
}

double bridge_max(double a, double b, double variance, double u) {
    if (!(variance > 0.0)) throw ParameterError("bridge variance must be positive");
    if (!(u > 0.0 && u <= 1.0)) throw ParameterError("bridge uniform must lie in (0, 1]");
    const double d = b - a;
    return 0.5 * (a + b + std::sqrt(d * d - 2.0 * variance * std::log(u)));
}

double bridge_exceed_probability(double a, double b, double variance, double level) {
    if (level <= std::max(a, b)) return 1.0;
    return std::exp(-2.0 * (level - a) * (level - b) / variance);
}

LogGridStepper::LogGridStepper(const ContinuousExp& spec)
    : variance_(spec.sigma * spec.sigma * spec.dt),
      sd_(std::sqrt(variance_)),
      drift_(-0.5 * variance_),
      dt_(spec.dt),
      skip_product_(0.5 * kBridgeSkipExponent * variance_),
      bridge_(spec.bridge_max) {}

CadlagPath simulate_continuous_exp(const ContinuousExp& spec, Seed seed) {
    std::vector<Sample> samples;
    samples.reserve(static_cast<std::size_t>(2.5 * spec.stop_gap / (spec.sigma * spec.sigma * spec.dt)) + 64);
    samples.push_back({0.0, 1.0, 1.0});
    std::vector<Refinement> refinements;
    walk_continuous_exp(spec, seed, [&](std::size_t k, double log_end, double log_peak, double) {
        if (log_peak > -kInfinity) refinements.push_back({k, std::exp(log_peak)});
        const double v = std::exp(log_end);
        samples.push_back({static_cast<double>(k + 1) * spec.dt, v, v});
    });
    const double stop_time = samples.back().time;
    return CadlagPath(std::move(samples), 0.0, Interpolation::GridSampled, 0.0,
                      std::move(refinements),
                      StopCertificate{spec.stop_gap, std::exp(-spec.stop_gap), stop_time});
}

CadlagPath poisson_up_path(double lambda, std::span<const double> jump_times, double stop_time) {
    require_positive(lambda, "lambda");
    std::vector<Sample> samples{{0.0, 1.0, 1.0}};
    samples.reserve(jump_times.size() + 2);
    double t = 0.0;
    double s = 1.0;
    for (double jt : jump_times) {
        if (!(jt > t)) throw ParameterError("jump times must be positive and increasing");
        const double left = s * std::exp(-lambda * (jt - t));
        samples.push_back({jt, left, 2.0 * left});
        t = jt;
        s = 2.0 * left;
    }
    if (!(stop_time > t)) throw ParameterError("stop time must follow the last jump");
    const double v = s * std::exp(-lambda * (stop_time - t));
    samples.push_back({stop_time, v, v});
    return CadlagPath(std::move(samples), 0.0, Interpolation::ExponentialInTime, -lambda);
}

CadlagPath simulate_poisson_up(const PoissonUp& spec, Seed seed) {
    validate(spec);
    StreamEngine engine(seed);
    std::vector<Sample> samples{{0.0, 1.0, 1.0}};
    double t = 0.0;
    double s = 1.0;
    double sup = 1.0;
    for (;;) {
        const double wait = engine.exponential() / spec.lambda;
        // S_{t+u} = s e^{-lambda u} reaches e^{-C} sup after this long.
        const double to_stop = (std::log(s / sup) + spec.stop_gap) / spec.lambda;
        if (wait < to_stop) {
            const double next = t + wait;
            const double left = s * std::exp(-spec.lambda * (next - t));
            s = 2.0 * left;
            samples.push_back({next, left, s});
            sup = std::max(sup, s);
            t = next;
        } else {
            const double next = t + to_stop;
            const double v = s * std::exp(-spec.lambda * (next - t));
            samples.push_back({next, v, v});
            break;
        }
    }
    const double stop_time = samples.back().time;
    return CadlagPath(std::move(samples), 0.0, Interpolation::ExponentialInTime, -spec.lambda, {},
                      StopCertificate{spec.stop_gap, std::exp(-spec.stop_gap), stop_time});
}

CadlagPath simulate(const ModelSpec& spec, Seed seed) {
    return std::visit(overloaded{
                          [&](const PoissonDeath& m) { return simulate_poisson_death(m.lambda, seed); },
                          [&](const ContinuousExp& m) { return simulate_continuous_exp(m, seed); },
                          [&](const PoissonUp& m) { return simulate_poisson_up(m, seed); },
                      },
                      spec);
}

bool kardaras_condition(const CadlagPath& path, double tol) {
    const auto samples = path.samples();
    const auto& refs = path.refinements();
    std::size_t ref = 0;
    double sup = samples.front().right;
    for (std::size_t k = 1; k < samples.size(); ++k) {
        const Sample& s = samples[k];
        double sup_left = std::max(sup, s.left);
        if (ref < refs.size() && refs[ref].segment == k - 1) sup_left = std::max(sup_left, refs[ref++].peak);
        if (s.is_jump() && std::abs(s.left - sup_left) <= tol) return false;
        sup = std::max(sup_left, s.right);
    }
    return true;
}

std::vector<CadlagPath> batch_simulate(const ModelSpec& spec, std::size_t n,
                                       std::uint64_t master_seed, unsigned jobs) {
    validate(spec);
    if (n == 0) throw ParameterError("batch size must be at least 1");
    std::vector<std::optional<CadlagPath>> slots(n);
    parallel_for(n, jobs, [&](std::size_t i) { slots[i].emplace(simulate(spec, Seed{master_seed, i})); });
    std::vector<CadlagPath> paths;
    paths.reserve(n);
    for (auto& p : slots) paths.push_back(std::move(*p));
    return paths;
}

unsigned resolve_jobs(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MAXMART_JOBS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace maxmart
