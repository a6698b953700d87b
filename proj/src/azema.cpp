#include "maxmart/azema.hpp"

#include <cmath>
#include <sstream>
#include <variant>

#include "maxmart/maxtime.hpp"
#include "maxmart/parallel.hpp"
#include "maxmart/stats.hpp"

namespace maxmart {

namespace {

constexpr std::uint64_t kContinuationTag = 0x636f6e74;  // "cont"
constexpr std::uint64_t kOuterTag = 0x6f757465;         // "oute"
constexpr std::uint64_t kInnerTag = 0x696e6e65;         // "inne"

Continuation continue_poisson_death(const PoissonDeath& m, const MarkovState& s, Seed seed) {
    if (!s.alive) return {};
    StreamEngine engine(seed);
    double tau = 0.0;
    while (tau <= 0.0) tau = engine.exponential() / m.lambda;
    const double future_sup = s.current * std::exp(m.lambda * tau);
    return {future_sup >= s.runsup, future_sup > s.runsup,
            std::max(0.0, std::log(s.current / s.runsup) + m.lambda * tau)};
}

// Works on log(L / runsup): the future of L is current times a fresh copy
// of the model started at 1.
Continuation continue_continuous_exp(const ContinuousExp& m, const MarkovState& s, Seed seed,
                                     bool full) {
    if (s.current == 0.0) return {};
    StreamEngine engine(seed);
    const LogGridStepper stepper(m);
    double x = std::log(s.current / s.runsup);
    double own_max = x;
    Continuation out;
    out.reaches = x >= 0.0;
    for (std::size_t k = 0; k < kMaxGridSteps; ++k) {
        const double level = std::max(0.0, own_max);
        const auto step = stepper.advance(x, level, engine);
        own_max = std::max({own_max, step.peak, step.end});
        x = step.end;
        out.reaches = out.reaches || own_max >= 0.0;
        out.exceeds = own_max > 0.0;
        if (out.exceeds && !full) break;
        if (x <= std::max(0.0, own_max) - m.stop_gap) break;
    }
    out.log_gain = std::max(0.0, own_max);
    return out;
}

Continuation continue_poisson_up(const PoissonUp& m, const MarkovState& s, Seed seed, bool full) {
    if (s.current == 0.0) return {};
    StreamEngine engine(seed);
    double value = s.current;
    double own_max = s.current;
    Continuation out;
    out.reaches = value >= s.runsup;
    for (;;) {
        const double ref = std::max(s.runsup, own_max);
        const double wait = engine.exponential() / m.lambda;
        const double to_stop = (std::log(value / ref) + m.stop_gap) / m.lambda;
        if (wait >= to_stop) break;
        value = 2.0 * value * std::exp(-m.lambda * wait);
        own_max = std::max(own_max, value);
        out.reaches = out.reaches || own_max >= s.runsup;
        out.exceeds = own_max > s.runsup;
        if (out.exceeds && !full) break;
    }
    out.log_gain = std::max(0.0, std::log(own_max / s.runsup));
    return out;
}

}  // namespace

void validate_state(const MarkovState& s) {
    validate(s.model);
    if (!(s.t >= 0.0)) throw ParameterError("state time must be nonnegative");
    if (!(s.current >= 0.0) || !std::isfinite(s.current))
        throw ParameterError("state value must be finite and nonnegative");
    if (!(s.runsup >= 1.0) || !std::isfinite(s.runsup))
        throw ParameterError("running sup must be finite and at least 1");
    if (s.current > s.runsup) throw ParameterError("state value exceeds its running sup");
    if (std::holds_alternative<PoissonDeath>(s.model) && (s.current == 0.0) == s.alive)
        throw ParameterError("PoissonDeath state is dead exactly when its value is 0");
}

MarkovState state_at(const ModelSpec& model, const CadlagPath& path, double t) {
    MarkovState s;
    s.model = model;
    s.t = t;
    const SupPath sup(path);
    if (t > path.horizon()) {
        s.current = path.terminal_value();
        s.runsup = sup.final_value();
    } else {
        s.current = value_at(path, t);
        s.runsup = sup.value_at(t);
    }
    s.alive = s.current > 0.0;
    return s;
}

MarkovState sample_state(const ModelSpec& model, double t, Seed seed) {
    validate(model);
    if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("state time must be finite and nonnegative");
    MarkovState s;
    s.model = model;
    s.t = t;
    StreamEngine engine(seed);
    if (const auto* m = std::get_if<PoissonDeath>(&model)) {
        double tau = 0.0;
        while (tau <= 0.0) tau = engine.exponential() / m->lambda;
        s.alive = tau > t;
        s.current = s.alive ? std::exp(m->lambda * t) : 0.0;
        s.runsup = std::exp(m->lambda * std::min(t, tau));
    } else if (const auto* m = std::get_if<ContinuousExp>(&model)) {
        const auto whole = static_cast<std::size_t>(std::floor(t / m->dt));
        double x = 0.0;
        double log_sup = 0.0;
        const LogGridStepper stepper(*m);
        for (std::size_t k = 0; k < whole; ++k) {
            const auto step = stepper.advance(x, log_sup, engine);
            log_sup = std::max({log_sup, step.peak, step.end});
            x = step.end;
        }
        const double rest = t - static_cast<double>(whole) * m->dt;
        if (rest > 0.0) {
            ContinuousExp partial = *m;
            partial.dt = rest;
            const auto step = LogGridStepper(partial).advance(x, log_sup, engine);
            log_sup = std::max({log_sup, step.peak, step.end});
            x = step.end;
        }
        s.current = std::exp(x);
        s.runsup = std::exp(log_sup);
    } else {
        const auto& up = std::get<PoissonUp>(model);
        double now = 0.0;
        double value = 1.0;
        double sup = 1.0;
        for (;;) {
            const double wait = engine.exponential() / up.lambda;
            if (now + wait > t) break;
            now += wait;
            value = 2.0 * value * std::exp(-up.lambda * wait);
            sup = std::max(sup, value);
        }
        s.current = value * std::exp(-up.lambda * (t - now));
        s.runsup = sup;
    }
    return s;
}

double z_ratio(const MarkovState& state) {
    if (state.current == 0.0) return 0.0;
    return state.current / state.runsup;
}

Continuation continue_from(const MarkovState& state, Seed seed, bool full) {
    return std::visit(
        [&](const auto& m) -> Continuation {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, PoissonDeath>)
                return continue_poisson_death(m, state, seed);
            else if constexpr (std::is_same_v<M, ContinuousExp>)
                return continue_continuous_exp(m, state, seed, full);
            else
                return continue_poisson_up(m, state, seed, full);
        },
        state.model);
}

AzemaEstimate nested_z_estimate(const MarkovState& state, std::size_t n_inner, Seed seed) {
    if (n_inner < kMinInner) throw ParameterError("n_inner must be at least 100");
    validate_state(state);
    std::size_t reach = 0;
    std::size_t exceed = 0;
    for (std::size_t i = 0; i < n_inner; ++i) {
        const Continuation c = continue_from(state, derive_seed(seed, kContinuationTag, i), false);
        reach += c.reaches ? 1 : 0;
        exceed += c.exceeds ? 1 : 0;
    }
    AzemaEstimate e;
    e.state = state;
    e.n_inner = n_inner;
    const double n = static_cast<double>(n_inner);
    e.z_hat = static_cast<double>(reach) / n;
    e.z_hat_strict = static_cast<double>(exceed) / n;
    e.std_error = std::sqrt(e.z_hat * (1.0 - e.z_hat) / n);
    e.z_ratio = z_ratio(state);
    return e;
}

double azema_tolerance(const AzemaEstimate& e) {
    // The plug-in error vanishes when every continuation agrees, so the
    // binomial error at z_ratio is used as a floor.
    const double r = e.z_ratio;
    const double null_error = std::sqrt(r * (1.0 - r) / static_cast<double>(e.n_inner));
    return 3.0 * std::max(e.std_error, null_error) + 2.0 * truncation_bias(e.state.model);
}

std::optional<double> ratio_at_rho_left_limit(const CadlagPath& path) {
    const MaxRecord rec = max_record(path);
    if (rec.truncated_before_jump) return std::nullopt;
    const double rho = sup_is_continuous(path) ? rec.rho_left : rec.rho_right;
    return rec.left_at_rho / SupPath(path).left_limit_at(rho);
}

BeforeRhoSummary z_before_rho(std::span<const CadlagPath> paths, const ModelSpec& model, double eps,
                              std::size_t n_inner, Seed seed, unsigned jobs) {
    if (!(eps > 0.0)) throw ParameterError("eps must be positive");
    if (n_inner != 0 && n_inner < kMinInner) throw ParameterError("n_inner must be at least 100");
    struct Probe {
        bool used = false;
        double ratio = 0.0;
        double z_hat = 0.0;
        bool below = false;
    };
    const auto probes = parallel_map<Probe>(paths.size(), jobs, [&](std::size_t i) {
        const CadlagPath& path = paths[i];
        const MaxRecord rec = max_record(path);
        const double rho = sup_is_continuous(path) ? rec.rho_left : rec.rho_right;
        Probe p;
        if (rec.truncated_before_jump || rho - eps < 0.0) return p;
        p.used = true;
        const MarkovState state = state_at(model, path, rho - eps);
        p.ratio = z_ratio(state);
        if (n_inner > 0) p.z_hat = nested_z_estimate(state, n_inner, derive_seed(seed, kInnerTag, i)).z_hat;
        const auto left = ratio_at_rho_left_limit(path);
        p.below = left && *left < 1.0;
        return p;
    });
    BeforeRhoSummary out;
    out.n_paths = paths.size();
    for (const Probe& p : probes) {
        if (!p.used) continue;
        ++out.n_used;
        out.mean_ratio += p.ratio;
        out.mean_z_hat += p.z_hat;
        out.ratio_below_one += p.below ? 1 : 0;
    }
    out.n_skipped = out.n_paths - out.n_used;
    if (out.n_used > 0) {
        out.mean_ratio /= static_cast<double>(out.n_used);
        out.mean_z_hat /= static_cast<double>(out.n_used);
    }
    return out;
}

ConditionalDoobReport conditional_doob_check(const ModelSpec& model, double t, std::size_t n_outer,
                                             std::size_t n_inner, Seed seed, unsigned jobs) {
    if (!(t > 0.0)) throw ParameterError("checkpoint must be positive");
    if (n_outer < kMinInner || n_inner < kMinInner)
        throw ParameterError("outer and inner counts must be at least 100");
    ConditionalDoobReport report;
    report.rows = parallel_map<ConditionalDoobRow>(n_outer, jobs, [&](std::size_t i) {
        const MarkovState state = sample_state(model, t, derive_seed(seed, kOuterTag, i));
        ConditionalDoobRow row;
        row.estimate = nested_z_estimate(state, n_inner, derive_seed(seed, kInnerTag, i));
        const AzemaEstimate& e = row.estimate;
        const double tol = azema_tolerance(e);
        row.violation = e.z_hat > e.z_ratio + tol;
        row.equal = std::abs(e.z_hat - e.z_ratio) <= tol;
        row.strict_equal = std::abs(e.z_hat_strict - e.z_ratio) <= tol;
        return row;
    });
    for (const auto& row : report.rows) {
        report.violations += row.violation ? 1 : 0;
        report.equalities += row.equal ? 1 : 0;
        report.strict_equalities += row.strict_equal ? 1 : 0;
    }
    return report;
}

std::string conditional_doob_csv(const ConditionalDoobReport& report) {
    std::ostringstream out;
    out << "t,current,runsup,z_hat,stderr,z_ratio,violation_flag\n";
    for (const auto& row : report.rows) {
        const AzemaEstimate& e = row.estimate;
        out << format_double(e.state.t) << ',' << format_double(e.state.current) << ','
            << format_double(e.state.runsup) << ',' << format_double(e.z_hat) << ','
            << format_double(e.std_error) << ',' << format_double(e.z_ratio) << ','
            << (row.violation ? 1 : 0) << '\n';
    }
    return out.str();
}

AdditiveRow additive_check_state(const MarkovState& state, std::size_t n, Seed seed) {
    if (n < 1000) throw ParameterError("additive check needs at least 1000 inner paths");
    validate_state(state);
    std::vector<double> gains(n);
    for (std::size_t i = 0; i < n; ++i)
        gains[i] = continue_from(state, derive_seed(seed, kContinuationTag, i), true).log_gain;
    const MeanCi ci = mean_ci(gains, 3.0);
    AdditiveRow row;
    row.state = state;
    row.estimate = ci.mean;
    row.std_error = ci.std_error;
    row.z_ratio = z_ratio(state);
    row.tolerance = ci.halfwidth + 2.0 * truncation_bias(state.model);
    row.pass = std::abs(row.estimate - row.z_ratio) <= row.tolerance;
    return row;
}

std::vector<AdditiveRow> additive_check(const ModelSpec& model, double t, std::size_t n_outer,
                                        std::size_t n, Seed seed, unsigned jobs) {
    if (!(t > 0.0)) throw ParameterError("checkpoint must be positive");
    if (n_outer == 0) throw ParameterError("additive check needs at least one state");
    return parallel_map<AdditiveRow>(n_outer, jobs, [&](std::size_t i) {
        const MarkovState state = sample_state(model, t, derive_seed(seed, kOuterTag, i));
        return additive_check_state(state, n, derive_seed(seed, kInnerTag, i));
    });
}

}  // namespace maxmart
